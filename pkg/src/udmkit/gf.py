"""Arithmetic in GF(q), q = p**s.

Elements use the packed base-p encoding: the integer ``v = sum(c_i * p**i)``
stands for the residue ``sum(c_i * X**i)`` modulo the field modulus.  So 0 and 1
are the additive and multiplicative identities, and ``0 <= v < p`` is the prime
subfield.

Fields are realized deterministically: ``make_field(p, s)`` always picks the
lexicographically smallest monic irreducible modulus (constant term compared
first) and the smallest primitive element, so golden values stay stable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

MAX_FIELD_SIZE = 1 << 20


class FieldMismatchError(ValueError):
    """Raised when elements from different fields are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = 3
    while r * r <= n:
        if n % r == 0:
            return False
        r += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, s) with q == p**s, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = factors[0]
    s = round(math.log(q, p))
    if p**s != q:
        raise ValueError(f"{q} is not a prime power")
    return p, s


# -- polynomials over the prime field GF(p), coefficient lists constant first --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _pmod(prod, m, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Ben-Or irreducibility test for a monic polynomial over GF(p)."""
    f = _trim(list(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        # h <- h**p mod f, so h = X**(p**i) after i rounds
        r = [1]
        base, e = h, p
        while e:
            if e & 1:
                r = _pmulmod(r, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        h = r
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def find_modulus(p: int, s: int) -> tuple[int, ...]:
    """Smallest monic irreducible degree-s polynomial over GF(p), low degree compared first."""
    for low in itertools.product(range(p), repeat=s):
        cand = list(low) + [1]
        if s == 1 or (low[0] != 0 and is_irreducible(cand, p)):
            return tuple(cand)
    raise AssertionError("irreducible polynomials exist for every degree")


# -- the field --

@dataclass(frozen=True)
class FieldSpec:
    """A concrete GF(p**s): characteristic, degree, reduction modulus and primitive element."""

    p: int
    s: int
    modulus: tuple[int, ...]
    alpha: int = 0

    @property
    def q(self) -> int:
        return self.p**self.s

    def __repr__(self) -> str:
        return f"GF({self.q})"

    # Tables are built lazily; cached_property writes straight to __dict__ so
    # it coexists with frozen=True.
    @cached_property
    def _digits(self) -> list[tuple[int, ...]] | None:
        if self.q > 4096:
            return None
        return [self._split(v) for v in range(self.q)]

    def _split(self, v: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.s):
            v, c = divmod(v, p)
            out.append(c)
        return tuple(out)

    def _unpack(self, v: int) -> tuple[int, ...]:
        t = self._digits
        return t[v] if t is not None else self._split(v)

    @cached_property
    def _weights(self) -> tuple[int, ...]:
        return tuple(self.p**i for i in range(self.s))

    @cached_property
    def _mul_table(self) -> list[list[int]] | None:
        # full table only for small fields; larger ones use the polynomial route
        if self.s == 1 or self.q > 256:
            return None
        return [[self._poly_mul(a, b) for b in range(self.q)] for a in range(self.q)]

    @cached_property
    def _add_table(self) -> list[list[int]] | None:
        if self.s == 1 or self.p == 2 or self.q > 256:
            return None
        return [[self._digit_add(a, b) for b in range(self.q)] for a in range(self.q)]

    def _pack(self, digits) -> int:
        return sum(c * w for c, w in zip(digits, self._weights))

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        return self._pack((x + y) % p for x, y in zip(self._unpack(a), self._unpack(b)))

    def _poly_mul(self, a: int, b: int) -> int:
        prod = _pmulmod(list(self._unpack(a)), list(self._unpack(b)), list(self.modulus), self.p)
        return self._pack(prod)

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.q):
            raise ValueError(f"{a!r} is not an element of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self._add_table
        return t[a][b] if t is not None else self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.s == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._pack(-c % self.p for c in self._unpack(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        t = self._mul_table
        return t[a][b] if t is not None else self._poly_mul(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        if self.s == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def from_int(self, n: int) -> int:
        """Natural map of an integer into the prime subfield."""
        return n % self.p

    def binom(self, k: int, n: int) -> int:
        """C(k, n) mod p via Lucas' theorem; 0 when n > k."""
        if n < 0 or k < 0 or n > k:
            return 0
        p = self.p
        result = 1
        while n:
            ki, ni = k % p, n % p
            if ni > ki:
                return 0
            result = result * _small_binom(ki, ni, p) % p
            k //= p
            n //= p
        return result

    def is_primitive(self, a: int) -> bool:
        """True iff a has multiplicative order exactly q - 1."""
        if a == 0:
            raise ValueError("0 is not in the multiplicative group")
        order = self.q - 1
        if order == 1:
            return a == 1
        return all(self.pow(a, order // r) != 1 for r in prime_factors(order))

    def element(self, value: int) -> FieldElement:
        return FieldElement(self.check(value), self)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(v, self) for v in range(self.q)]

    def to_json(self) -> dict:
        return {"p": self.p, "s": self.s, "modulus": list(self.modulus), "alpha": self.alpha}

    @classmethod
    def from_json(cls, data: dict) -> FieldSpec:
        try:
            p, s = int(data["p"]), int(data["s"])
            modulus = tuple(int(c) for c in data["modulus"])
            alpha = int(data["alpha"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed field description: {exc}") from exc
        if not is_prime(p) or s < 1:
            raise ValueError(f"invalid field parameters p={p}, s={s}")
        if len(modulus) != s + 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
            raise ValueError(f"modulus {list(modulus)} is not a monic degree-{s} polynomial over GF({p})")
        if s > 1 and not is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {list(modulus)} is reducible over GF({p})")
        spec = cls(p, s, modulus, alpha)
        spec.check(alpha)
        if alpha == 0 or not spec.is_primitive(alpha):
            raise ValueError(f"alpha={alpha} is not primitive in {spec!r}")
        return spec


@lru_cache(maxsize=None)
def _small_binom(k: int, n: int, p: int) -> int:
    return math.comb(k, n) % p


@lru_cache(maxsize=None)
def make_field(p: int, s: int = 1) -> FieldSpec:
    """Deterministic realization of GF(p**s)."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic {p!r} is not prime")
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"extension degree must be >= 1, got {s!r}")
    if p**s > MAX_FIELD_SIZE:
        raise ValueError(f"q = {p}**{s} exceeds the supported maximum {MAX_FIELD_SIZE}")
    spec = FieldSpec(p, s, find_modulus(p, s))
    alpha = next(a for a in range(1, spec.q) if spec.is_primitive(a))
    return FieldSpec(p, s, spec.modulus, alpha)


def field_of_size(q: int) -> FieldSpec:
    return make_field(*factor_prime_power(q))


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its field, with arithmetic operators."""

    value: int
    field: FieldSpec = dc_field(repr=False)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field.add(self.value, b), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field.sub(self.value, b), self.field)

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field.sub(b, self.value), self.field)

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field.mul(self.value, b), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field.div(self.value, b), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


# Functional interface over FieldElement values.

def _same_field(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine elements of {a.field!r} and {b.field!r}")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f.add(a.value, b.value), f)


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f.sub(a.value, b.value), f)


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f.mul(a.value, b.value), f)


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field.inv(a.value), a.field)


def power(a: FieldElement, e: int) -> FieldElement:
    return a**e


def from_int(f: FieldSpec, n: int) -> FieldElement:
    return FieldElement(f.from_int(n), f)


def binom(f: FieldSpec, k: int, n: int) -> FieldElement:
    return FieldElement(f.binom(k, n), f)


def primitive_element_order_check(a: FieldElement) -> bool:
    return a.field.is_primitive(a.value)
