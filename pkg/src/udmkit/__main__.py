import sys

from udmkit.cli import main

sys.exit(main())
