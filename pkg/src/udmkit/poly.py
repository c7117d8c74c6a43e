"""Univariate polynomials over GF(q) with Hasse derivatives and Taylor expansion.

Coefficients are canonical element integers, constant term first.  The zero
polynomial has degree ``-inf`` so that degree comparisons never need a special
case for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Union

from udmkit.gf import FieldMismatchError, FieldSpec


@dataclass(frozen=True)
class Poly:
    """Polynomial with canonical (trimmed) coefficient tuple."""

    field: FieldSpec = dc_field(repr=False)
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [self.field.check(int(a)) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def zero(cls, f: FieldSpec) -> Poly:
        return cls(f, ())

    @classmethod
    def monomial(cls, f: FieldSpec, k: int, c: int = 1) -> Poly:
        return cls(f, (0,) * k + (c,))

    @classmethod
    def linear(cls, f: FieldSpec, root: int) -> Poly:
        """The polynomial X - root."""
        return cls(f, (f.neg(root), 1))

    @property
    def degree(self) -> float:
        """Index of the leading coefficient, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, beta: int) -> int:
        return evaluate(self, beta)

    def _check(self, other: Poly) -> FieldSpec:
        if other.field != self.field:
            raise FieldMismatchError(f"polynomials over {self.field!r} and {other.field!r}")
        return self.field

    def __add__(self, other: Poly) -> Poly:
        f = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, tuple(f.add(self[k], other[k]) for k in range(n)))

    def __neg__(self) -> Poly:
        return Poly(self.field, tuple(self.field.neg(a) for a in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        f = self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Poly(f, tuple(out))

    def __pow__(self, e: int) -> Poly:
        result = Poly(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> Poly:
        f = self.field
        return Poly(f, tuple(f.mul(c, a) for a in self.coeffs))

    def to_json(self) -> list[int]:
        return list(self.coeffs)


@dataclass(frozen=True)
class Finite:
    """A finite evaluation point beta in GF(q)."""

    beta: int


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
EvalPoint = Union[Finite, _Infinity]


def evaluate(a: Poly, beta: int) -> int:
    """Horner evaluation a(beta)."""
    f = a.field
    acc = 0
    for c in reversed(a.coeffs):
        acc = f.add(f.mul(acc, beta), c)
    return acc


def hasse_derivative(a: Poly, i: int) -> Poly:
    """i-th Hasse derivative: coefficient j is C(j+i, i) * a_{j+i}."""
    if i < 0:
        raise ValueError("derivative order must be non-negative")
    f = a.field
    return Poly(f, tuple(f.mul(f.binom(k, i), a.coeffs[k]) for k in range(i, len(a.coeffs))))


def hasse_eval(a: Poly, i: int, pt: EvalPoint, n: int | None = None) -> int:
    """Value of the i-th Hasse derivative at a point.

    At INFINITY the value is defined as the coefficient a_{n-1-i}, where n is
    the code length; this needs ``0 <= i < n`` and ``deg(a) < n``.
    """
    if pt is INFINITY:
        if n is None:
            raise ValueError("evaluation at infinity needs the length n")
        if not 0 <= i < n:
            raise ValueError(f"derivative order {i} out of range for length {n} at infinity")
        if a.degree >= n:
            raise ValueError(f"degree {a.degree} polynomial does not fit length {n}")
        return a[n - 1 - i]
    return evaluate(hasse_derivative(a, i), pt.beta)


def taylor_expand(a: Poly, beta: int) -> list[int]:
    """Coefficients c_n with a(X) = sum c_n (X - beta)**n; length deg(a) + 1 (``[0]`` for zero)."""
    f = a.field
    d = len(a.coeffs) - 1
    if d < 0:
        return [0]
    # c_n = sum_k a_k C(k, n) beta**(k - n)
    powers = [1]
    for _ in range(d):
        powers.append(f.mul(powers[-1], beta))
    out = []
    for n in range(d + 1):
        acc = 0
        for k in range(n, d + 1):
            ak = a.coeffs[k]
            if ak:
                b = f.binom(k, n)
                if b:
                    acc = f.add(acc, f.mul(f.mul(ak, b), powers[k - n]))
        out.append(acc)
    return out


def taylor_contract(coeffs: Iterable[int], beta: int, f: FieldSpec) -> Poly:
    """Inverse of taylor_expand: a_k = sum_n c_n C(n, k) (-beta)**(n - k)."""
    c = [f.check(int(x)) for x in coeffs]
    d = len(c) - 1
    nb = f.neg(beta)
    powers = [1]
    for _ in range(max(d, 0)):
        powers.append(f.mul(powers[-1], nb))
    out = []
    for k in range(d + 1):
        acc = 0
        for n in range(k, d + 1):
            if c[n]:
                b = f.binom(n, k)
                if b:
                    acc = f.add(acc, f.mul(f.mul(c[n], b), powers[n - k]))
        out.append(acc)
    return Poly(f, tuple(out))


def zero_multiplicity(a: Poly, beta: int) -> int:
    """Multiplicity of beta as a root of a non-zero polynomial (0 if not a root)."""
    if a.is_zero():
        raise ValueError("the zero polynomial vanishes to infinite order")
    for m, c in enumerate(taylor_expand(a, beta)):
        if c:
            return m
    raise AssertionError("non-zero polynomial has a non-zero Taylor coefficient")


def from_json(f: FieldSpec, data: list[int]) -> Poly:
    return Poly(f, tuple(data))
