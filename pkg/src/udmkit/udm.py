"""Universally decodable matrices.

L square N x N matrices A_0..A_{L-1} over GF(q) are UDMs when, for every
composition (s_0, ..., s_{L-1}) of N into L non-negative parts, the matrix
stacking the first s_l rows of each A_l has rank N.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from udmkit.gf import FieldSpec

Composition = tuple[int, ...]


class BoundViolationError(ValueError):
    """Raised when L > q + 1, where no UDMs exist for N >= 2."""


class SearchBudgetExceeded(RuntimeError):
    """Raised when exhaustive search runs out of budget before finishing."""


@dataclass(frozen=True)
class MatrixGF:
    field: FieldSpec = dc_field(repr=False)
    rows: tuple[tuple[int, ...], ...] = ()
    cols: int = 0

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        cols = self.cols or (len(rows[0]) if rows else 0)
        if cols < 1:
            raise ValueError("a matrix needs at least one column")
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"ragged matrix: row of length {len(r)}, expected {cols}")
            for x in r:
                self.field.check(x)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.cols

    @property
    def entries(self) -> list[int]:
        return [x for r in self.rows for x in r]

    @classmethod
    def identity(cls, f: FieldSpec, n: int) -> MatrixGF:
        return cls(f, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def exchange(cls, f: FieldSpec, n: int) -> MatrixGF:
        """Rows of the identity in reverse order."""
        return cls(f, tuple(tuple(int(i + j == n - 1) for j in range(n)) for i in range(n)), n)

    def __matmul__(self, other):
        f = self.field
        if isinstance(other, MatrixGF):
            if other.nrows != self.cols:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other.rows))
            return MatrixGF(f, tuple(tuple(_dot(f, r, c) for c in cols) for r in self.rows), other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(_dot(f, r, vec) for r in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _dot(f: FieldSpec, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = f.add(acc, f.mul(x, y))
    return acc


def row_reduce(f: FieldSpec, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns).

    Pivots are chosen as the first non-zero entry scanning down each column.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    add, mul, neg, inv = f.add, f.mul, f.neg, f.inv
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        scale = inv(prow[c])
        if scale != 1:
            prow = rows[r] = [mul(scale, x) for x in prow]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                lead = row[c]
                if lead:
                    m = neg(lead)
                    rows[i] = [add(x, mul(m, y)) if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: MatrixGF) -> int:
    """Rank over GF(q) by Gaussian elimination."""
    _, pivots = row_reduce(m.field, [list(r) for r in m.rows], m.cols)
    return len(pivots)


def rank_of_rows(f: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Rank of a list of rows; forward elimination only."""
    work = [list(r) for r in rows]
    add, mul, neg, inv = f.add, f.mul, f.neg, f.inv
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        pinv = inv(prow[c])
        for i in range(r + 1, nrows):
            row = work[i]
            if row[c]:
                m = neg(mul(row[c], pinv))
                work[i] = [add(x, mul(m, y)) if y else x for x, y in zip(row, prow)]
        r += 1
    return r


@dataclass(frozen=True)
class UdmFamily:
    field: FieldSpec
    N: int
    matrices: tuple[MatrixGF, ...]
    alpha: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if self.N < 1 or not self.matrices:
            raise ValueError("a family needs N >= 1 and at least one matrix")
        for a in self.matrices:
            if a.field != self.field or a.shape != (self.N, self.N):
                raise ValueError(f"every matrix must be {self.N}x{self.N} over {self.field!r}")

    @property
    def L(self) -> int:
        return len(self.matrices)

    def __getitem__(self, i: int) -> MatrixGF:
        return self.matrices[i]

    def to_json(self) -> dict:
        d = self.field.to_json()
        if self.alpha is not None:
            d["alpha"] = self.alpha
        d.update(N=self.N, L=self.L, matrices=[a.to_json() for a in self.matrices])
        return d

    @classmethod
    def from_json(cls, data: dict) -> UdmFamily:
        f = FieldSpec.from_json(data)
        try:
            n, count = int(data["N"]), int(data["L"])
            mats = tuple(MatrixGF(f, tuple(map(tuple, m)), n) for m in data["matrices"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed family description: {exc}") from exc
        if len(mats) != count:
            raise ValueError(f"L={count} but {len(mats)} matrices given")
        return cls(f, n, mats, f.alpha)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked: int
    first_failure: tuple[Composition, int] | None = None

    def to_json(self) -> dict:
        failure = None
        if self.first_failure is not None:
            comp, r = self.first_failure
            failure = {"composition": list(comp), "rank": r}
        return {"ok": self.ok, "checked": self.checked, "first_failure": failure}

    @classmethod
    def from_json(cls, data: dict) -> VerificationReport:
        ff = data.get("first_failure")
        failure = None if ff is None else (tuple(ff["composition"]), int(ff["rank"]))
        return cls(bool(data["ok"]), int(data["checked"]), failure)


def construct(f: FieldSpec, L: int, N: int, alpha: int | None = None) -> UdmFamily:
    """The explicit (L, N, q) family: I, J, then A_{l+2}[n][k] = C(k, n) alpha**(l (k - n))."""
    if N < 1:
        raise ValueError("N must be positive")
    if L < 1:
        raise ValueError("L must be positive")
    if alpha is None:
        alpha = f.alpha
    elif alpha == 0 or not f.is_primitive(alpha):
        raise ValueError(f"{alpha} is not a primitive element of {f!r}")
    if L > f.q + 1 and N >= 2:
        raise BoundViolationError(
            f"no ({L}, {N}, {f.q})-UDMs exist: L must not exceed q + 1 = {f.q + 1}"
        )
    if N == 1:
        # every non-zero 1x1 matrix works; use [1] throughout
        one = MatrixGF(f, ((1,),), 1)
        return UdmFamily(f, 1, (one,) * L, alpha)
    mats = [MatrixGF.identity(f, N), MatrixGF.exchange(f, N)][:L]
    for ell in range(L - 2):
        a_ell = f.pow(alpha, ell)
        powers = [1]
        for _ in range(N - 1):
            powers.append(f.mul(powers[-1], a_ell))
        rows = []
        for n in range(N):
            row = []
            for k in range(N):
                b = f.binom(k, n)
                # b == 0 whenever k < n, so no negative power is ever needed
                row.append(f.mul(b, powers[k - n]) if b else 0)
            rows.append(tuple(row))
        mats.append(MatrixGF(f, tuple(rows), N))
    return UdmFamily(f, N, tuple(mats), alpha)


def count_compositions(N: int, L: int) -> int:
    return math.comb(N + L - 1, L - 1)


def enumerate_compositions(N: int, L: int) -> Iterator[Composition]:
    """All L-tuples of non-negative integers summing to N, in lexicographic order."""
    if L < 1 or N < 0:
        raise ValueError("need L >= 1 and N >= 0")
    if L == 1:
        yield (N,)
        return
    for first in range(N + 1):
        for rest in enumerate_compositions(N - first, L - 1):
            yield (first,) + rest


def _check_composition(c: Sequence[int], L: int, N: int) -> None:
    if len(c) != L or any(x < 0 or x > N for x in c) or sum(c) != N:
        raise ValueError(f"{tuple(c)} is not a composition of {N} into {L} parts")


def stack_rows(family: UdmFamily, profile: Sequence[int]) -> list[tuple[int, ...]]:
    """First profile[l] rows of each A_l, in channel order (any row counts)."""
    out = []
    for a, s in zip(family.matrices, profile):
        out.extend(a.rows[:s])
    return out


def stack(family: UdmFamily, c: Sequence[int]) -> MatrixGF:
    _check_composition(c, family.L, family.N)
    return MatrixGF(family.field, tuple(stack_rows(family, c)), family.N)


def _first_failure(family: UdmFamily, comps: Sequence[Composition]) -> tuple[int, Composition, int] | None:
    f, n = family.field, family.N
    for idx, c in enumerate(comps):
        r = rank_of_rows(f, stack_rows(family, c), n)
        if r != n:
            return idx, c, r
    return None


def _chunk_failure(args):
    family, offset, comps = args
    hit = _first_failure(family, comps)
    return None if hit is None else (hit[0] + offset, hit[1], hit[2])


def verify(family: UdmFamily, workers: int = 1) -> VerificationReport:
    """Check the UDMs condition over all compositions, failing fast.

    The reported failure is always the lexicographically smallest failing
    composition, whatever the number of workers.
    """
    comps = list(enumerate_compositions(family.N, family.L))
    if workers <= 1 or len(comps) < 64:
        hit = _first_failure(family, comps)
    else:
        size = -(-len(comps) // (workers * 4))
        jobs = [(family, i, comps[i:i + size]) for i in range(0, len(comps), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = [h for h in pool.map(_chunk_failure, jobs) if h is not None]
        hit = min(hits) if hits else None
    if hit is None:
        return VerificationReport(True, len(comps))
    idx, c, r = hit
    return VerificationReport(False, idx + 1, (c, r))


def is_udm(family: UdmFamily) -> bool:
    return verify(family).ok


def _all_matrices(f: FieldSpec, N: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for flat in itertools.product(range(f.q), repeat=N * N):
        yield tuple(flat[i * N:(i + 1) * N] for i in range(N))


@dataclass
class SearchResult:
    family: UdmFamily | None
    candidates_tried: int


def exhaustive_search(f: FieldSpec, L: int, N: int, budget: int = 10**7) -> SearchResult:
    """Backtracking search for (L, N, q)-UDMs with A_0 fixed to the identity.

    Fixing A_0 = I loses nothing: A_0 must be invertible, and right-multiplying
    every matrix by A_0^{-1} leaves every stacked rank unchanged.  Level l only
    tests compositions whose last non-zero part sits at index l, so each
    composition is checked exactly once along any branch.  The condition is
    also invariant under reordering A_1..A_{L-1} (a permuted composition stacks
    the same rows), so candidates are taken in non-decreasing order.  ``budget`` caps the
    number of candidate matrices tried; exceeding it raises
    SearchBudgetExceeded, which is distinct from "none exists".
    """
    if L < 1 or N < 1:
        raise ValueError("need L >= 1 and N >= 1")
    by_level: list[list[Composition]] = [[] for _ in range(L)]
    for c in enumerate_compositions(N, L):
        last = max(i for i, x in enumerate(c) if x)
        by_level[last].append(c)
    candidates = list(_all_matrices(f, N))
    chosen = [MatrixGF.identity(f, N).rows]
    tried = 0

    def ok_at(level: int) -> bool:
        for c in by_level[level]:
            rows = [r for a, s in zip(chosen, c) for r in a[:s]]
            if rank_of_rows(f, rows, N) != N:
                return False
        return True

    def extend(level: int, start: int) -> bool:
        nonlocal tried
        if level == L:
            return True
        for idx in range(start, len(candidates)):
            rows = candidates[idx]
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded(f"budget of {budget} candidates exhausted at level {level}")
            chosen.append(rows)
            if ok_at(level) and extend(level + 1, idx):
                return True
            chosen.pop()
        return False

    if not extend(1, 0):
        return SearchResult(None, tried)
    family = UdmFamily(f, N, tuple(MatrixGF(f, rows, N) for rows in chosen), None)
    return SearchResult(family, tried)
