"""Random objects and brute-force oracles shared by the test modules."""

import itertools

from udmkit.poly import Poly


def random_poly(rng, f, max_deg=12):
    d = rng.randint(-1, max_deg)
    return Poly(f, tuple(rng.randrange(f.q) for _ in range(d + 1)))


def divide_by_linear(a, beta):
    """Synthetic division of a by (X - beta); returns (quotient, remainder)."""
    f = a.field
    c = list(a.coeffs)
    if not c:
        return Poly.zero(f), 0
    out = [0] * (len(c) - 1)
    acc = 0
    for k in range(len(c) - 1, -1, -1):
        acc = f.add(c[k], f.mul(acc, beta))
        if k:
            out[k - 1] = acc
    return Poly(f, tuple(out)), acc


def multiplicity_by_division(a, beta):
    m = 0
    while True:
        quot, rem = divide_by_linear(a, beta)
        if rem:
            return m
        a, m = quot, m + 1


def compositions_brute(n, parts):
    return [c for c in itertools.product(range(n + 1), repeat=parts) if sum(c) == n]


def det_leibniz(f, m):
    """Determinant by permutation expansion."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = f.mul(term, m[i][perm[i]])
        total = f.sub(total, term) if inversions % 2 else f.add(total, term)
    return total


def rank_by_minors(f, rows, ncols):
    """Largest k with a non-zero k x k minor."""
    for k in range(min(len(rows), ncols), 0, -1):
        for rs in itertools.combinations(range(len(rows)), k):
            for cs in itertools.combinations(range(ncols), k):
                if det_leibniz(f, [[rows[r][c] for c in cs] for r in rs]):
                    return k
    return 0
