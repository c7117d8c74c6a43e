"""Encoding over L parallel prefix-erasure channels and the matching decoder.

Channel l carries x_l = A_l u.  For the explicit family this is the list of
Taylor coefficients of u(X) = sum u_k X**k around beta_l, where beta_0 = 0,
beta_1 = infinity and beta_{l+2} = alpha**l.  A channel delivers a prefix of
its vector and erases the rest; any profile with sum(s_l) >= N decodes.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from udmkit.gf import FieldSpec
from udmkit.poly import INFINITY, EvalPoint, Finite, Poly, hasse_eval
from udmkit.udm import (
    UdmFamily,
    count_compositions,
    enumerate_compositions,
    rank_of_rows,
    row_reduce,
    stack_rows,
)

PROFILE_MODES = ("uniform", "iid", "exhaustive")


class DecodingError(Exception):
    """Base class for decoder failures."""


class InsufficientObservationsError(DecodingError):
    """The surviving symbols do not determine the message."""


class InconsistentReceivedError(DecodingError):
    """The surviving symbols fit no codeword; the input was corrupted, not just erased."""


class _Erased:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ERASED"

    def __str__(self) -> str:
        return "?"

    def __reduce__(self):
        return (_Erased, ())


ERASED = _Erased()


@dataclass(frozen=True)
class ReceivedSet:
    """Per-channel received vectors; entries past the surviving prefix are ERASED."""

    y: tuple[tuple, ...]
    profile: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        y = tuple(tuple(v) for v in self.y)
        profile = []
        for v in y:
            s = next((i for i, x in enumerate(v) if x is ERASED), len(v))
            if any(x is not ERASED for x in v[s:]):
                raise ValueError("erasures must form a suffix of each channel vector")
            profile.append(s)
        if self.profile and tuple(self.profile) != tuple(profile):
            raise ValueError(f"profile {self.profile} does not match the erasure pattern {profile}")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "profile", tuple(profile))


def message_poly(f: FieldSpec, u: Sequence[int]) -> Poly:
    return Poly(f, tuple(u))


def evaluation_points(f: FieldSpec, L: int, alpha: int | None = None) -> list[EvalPoint]:
    """beta_0 = 0, beta_1 = infinity, beta_{l+2} = alpha**l."""
    if L > f.q + 1:
        raise ValueError(f"only q + 1 = {f.q + 1} distinct evaluation points exist")
    alpha = f.alpha if alpha is None else alpha
    pts: list[EvalPoint] = [Finite(0), INFINITY][:L]
    pts += [Finite(f.pow(alpha, ell)) for ell in range(L - 2)]
    return pts


def encode(family: UdmFamily, u: Sequence[int]) -> list[tuple[int, ...]]:
    """x_l = A_l u for every channel l."""
    u = tuple(u)
    if len(u) != family.N:
        raise ValueError(f"message has length {len(u)}, expected {family.N}")
    for x in u:
        family.field.check(x)
    return [a @ u for a in family.matrices]


def hasse_encode(f: FieldSpec, u: Sequence[int], L: int, alpha: int | None = None) -> list[tuple[int, ...]]:
    """Polynomial view of the explicit code: x_l[n] = u^{(n)}(beta_l)."""
    n = len(u)
    a = message_poly(f, u)
    return [tuple(hasse_eval(a, i, pt, n) for i in range(n)) for pt in evaluation_points(f, L, alpha)]


def transmit(x: Sequence[Sequence[int]], profile: Sequence[int]) -> ReceivedSet:
    """Keep the first profile[l] symbols of channel l and erase the rest."""
    if len(profile) != len(x):
        raise ValueError(f"profile has {len(profile)} entries for {len(x)} channels")
    y = []
    for v, s in zip(x, profile):
        if not 0 <= s <= len(v):
            raise ValueError(f"profile entry {s} outside 0..{len(v)}")
        y.append(tuple(v[:s]) + (ERASED,) * (len(v) - s))
    return ReceivedSet(tuple(y), tuple(profile))


def sample_profile(rng: random.Random, N: int, L: int, mode: str = "uniform") -> tuple[int, ...]:
    """Draw an erasure profile.

    ``uniform``: uniform over compositions of N into L parts (stars and bars).
    ``iid``: each channel keeps an independent uniform prefix length in 0..N.
    """
    if mode == "uniform":
        bars = sorted(rng.sample(range(N + L - 1), L - 1))
        edges = [-1] + bars + [N + L - 1]
        return tuple(edges[i + 1] - edges[i] - 1 for i in range(L))
    if mode == "iid":
        return tuple(rng.randint(0, N) for _ in range(L))
    raise ValueError(f"unknown profile mode {mode!r}")


def _solve(f: FieldSpec, rows: list[tuple[int, ...]], rhs: list[list[int]], n: int) -> list[list[int]]:
    """Solve rows @ u = b for each column b of rhs; rows must have rank n."""
    k = len(rhs[0]) if rhs else 0
    aug = [list(r) + list(b) for r, b in zip(rows, rhs)]
    aug, pivots = row_reduce(f, aug, n + k)
    # pivots past column n mean an equation 0 = nonzero
    if len([c for c in pivots if c < n]) < n:
        raise InsufficientObservationsError(
            f"received symbols span rank {len([c for c in pivots if c < n])} < {n}; message not determined"
        )
    if any(c >= n for c in pivots):
        raise InconsistentReceivedError("received symbols are inconsistent with every codeword")
    return [[aug[i][n + j] for i in range(n)] for j in range(k)]


def _observations(family: UdmFamily, y: ReceivedSet) -> tuple[list[tuple[int, ...]], list[int]]:
    if len(y.y) != family.L:
        raise ValueError(f"received {len(y.y)} channels, family has {family.L}")
    rows, vals = [], []
    for a, v, s in zip(family.matrices, y.y, y.profile):
        if len(v) != family.N:
            raise ValueError(f"channel vector of length {len(v)}, expected {family.N}")
        rows.extend(a.rows[:s])
        vals.extend(family.field.check(x) for x in v[:s])
    if len(rows) < family.N:
        raise InsufficientObservationsError(f"only {len(rows)} symbols survived, need {family.N}")
    return rows, vals


def decode(family: UdmFamily, y: ReceivedSet) -> tuple[int, ...]:
    """Recover u from the surviving prefixes by Gaussian elimination.

    Surplus observations are all used and checked for consistency.
    """
    rows, vals = _observations(family, y)
    (u,) = _solve(family.field, rows, [[v] for v in vals], family.N)
    return tuple(u)


def decode_many(family: UdmFamily, received: Sequence[ReceivedSet]) -> list[tuple[int, ...]]:
    """Decode several received sets sharing one erasure profile with a single elimination."""
    if not received:
        return []
    profile = received[0].profile
    if any(r.profile != profile for r in received):
        raise ValueError("decode_many needs a common erasure profile")
    obs = [_observations(family, r) for r in received]
    rows = obs[0][0]
    rhs = [list(col) for col in zip(*(vals for _, vals in obs))]
    return [tuple(u) for u in _solve(family.field, rows, rhs, family.N)]


def decode_capability_check(family: UdmFamily, profile: Sequence[int]) -> bool:
    """True iff the full stack of the first profile[l] rows of each A_l has rank N."""
    if len(profile) != family.L or any(not 0 <= s <= family.N for s in profile):
        raise ValueError(f"profile {tuple(profile)} invalid for L={family.L}, N={family.N}")
    rows = stack_rows(family, profile)
    return len(rows) >= family.N and rank_of_rows(family.field, rows, family.N) == family.N


# -- Monte Carlo simulation --

@dataclass
class SimulationResult:
    trials: int
    profile_mode: str
    seed: int
    successes: int = 0
    failures: list[dict] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "profile_mode": self.profile_mode,
            "seed": self.seed,
            "successes": self.successes,
            "failures": self.failures,
        }


def _trial_rng(seed: int, index: int) -> random.Random:
    # per-trial streams keep results independent of how trials are split up
    return random.Random(f"{seed}/{index}")


def _run_trial(family: UdmFamily, profile: tuple[int, ...], rng: random.Random) -> str | None:
    u = tuple(rng.randrange(family.field.q) for _ in range(family.N))
    try:
        got = decode(family, transmit(encode(family, u), profile))
    except InsufficientObservationsError:
        return "insufficient"
    except InconsistentReceivedError:
        return "inconsistent"
    return None if got == u else "mismatch"


def _run_block(args) -> tuple[int, list[dict]]:
    family, mode, seed, jobs = args
    ok, failures = 0, []
    for index, profile in jobs:
        rng = _trial_rng(seed, index)
        if profile is None:
            profile = sample_profile(rng, family.N, family.L, mode)
        reason = _run_trial(family, profile, rng)
        if reason is None:
            ok += 1
        else:
            failures.append({"profile": list(profile), "reason": reason})
    return ok, failures


def simulate(
    family: UdmFamily,
    trials: int,
    seed: int = 0,
    profile_mode: str = "uniform",
    workers: int = 1,
) -> SimulationResult:
    """Encode random messages, pass them through sampled channels, decode.

    In ``exhaustive`` mode every composition of N is swept and ``trials``
    messages are sent per composition.
    """
    if profile_mode not in PROFILE_MODES:
        raise ValueError(f"unknown profile mode {profile_mode!r}")
    if profile_mode == "exhaustive":
        sweep = (c for c in enumerate_compositions(family.N, family.L) for _ in range(trials))
        jobs = list(enumerate(sweep))
    else:
        jobs = [(i, None) for i in range(trials)]
    if workers <= 1 or len(jobs) < 256:
        blocks = [_run_block((family, profile_mode, seed, jobs))]
    else:
        size = -(-len(jobs) // (workers * 4))
        parts = [(family, profile_mode, seed, jobs[i:i + size]) for i in range(0, len(jobs), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_run_block, parts))
    result = SimulationResult(trials, profile_mode, seed)
    for ok, failures in blocks:
        result.successes += ok
        result.failures.extend(failures)
    return result


def expected_exhaustive_successes(family: UdmFamily, trials: int) -> int:
    return count_compositions(family.N, family.L) * trials


# -- text format: comma-separated canonical integers, "?" for an erasure --

def format_vector(v: Iterable) -> str:
    return ",".join(str(x) for x in v)


def parse_vector(text: str, f: FieldSpec | None = None, allow_erasures: bool = False) -> tuple:
    out = []
    for tok in text.strip().split(","):
        tok = tok.strip()
        if tok == "?":
            if not allow_erasures:
                raise ValueError("erasure mark not allowed here")
            out.append(ERASED)
            continue
        x = int(tok)
        out.append(f.check(x) if f is not None else x)
    return tuple(out)


def parse_received(lines: Iterable[str], f: FieldSpec) -> ReceivedSet:
    vecs = [parse_vector(line, f, allow_erasures=True) for line in lines if line.strip()]
    return ReceivedSet(tuple(vecs))
