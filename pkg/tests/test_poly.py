import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import compositions_brute, multiplicity_by_division, random_poly
from udmkit.gf import field_of_size, make_field
from udmkit.poly import (
    INFINITY,
    Finite,
    Poly,
    evaluate,
    from_json,
    hasse_derivative,
    hasse_eval,
    taylor_contract,
    taylor_expand,
    zero_multiplicity,
)

PROPERTY_Q = [2, 3, 4, 5, 9]


@st.composite
def field_and_poly(draw, max_deg=12):
    f = field_of_size(draw(st.sampled_from(PROPERTY_Q)))
    coeffs = draw(st.lists(st.integers(0, f.q - 1), max_size=max_deg + 1))
    return f, Poly(f, tuple(coeffs))


def test_canonical_form_and_degree():
    f = make_field(3)
    assert Poly(f, (1, 2, 0, 0)).coeffs == (1, 2)
    assert Poly(f, (1, 2, 0, 0)).degree == 1
    assert Poly.zero(f).degree == -math.inf
    assert Poly(f, (0, 0)).is_zero()
    with pytest.raises(ValueError):
        Poly(f, (3,))


def test_eval_examples():
    f3, f5 = make_field(3), make_field(5)
    assert evaluate(Poly(f3, (1, 1, 1)), 1) == 0
    assert evaluate(Poly.zero(f3), 2) == 0
    assert evaluate(Poly.monomial(f5, 2), 3) == 4
    assert Poly.monomial(f5, 2)(3) == 4


def test_hasse_derivative_examples():
    f2, f5 = make_field(2), make_field(5)
    x2 = Poly.monomial(f2, 2)
    assert hasse_derivative(x2, 1).is_zero()
    assert hasse_derivative(x2, 2) == Poly(f2, (1,))
    assert hasse_derivative(Poly.monomial(f5, 3), 2) == Poly(f5, (0, 3))
    assert hasse_derivative(x2, 5).is_zero()


def test_hasse_eval_examples():
    f = make_field(5)
    u = Poly(f, (1, 2, 3))
    assert hasse_eval(u, 0, INFINITY, 3) == 3
    assert hasse_eval(u, 1, INFINITY, 3) == 2
    assert hasse_eval(u, 2, INFINITY, 3) == 1
    # shorter polynomial padded with zero coefficients
    assert hasse_eval(Poly(f, (4,)), 0, INFINITY, 3) == 0
    f3 = make_field(3)
    assert hasse_eval(Poly.monomial(f3, 2), 1, Finite(1)) == 2
    for pt in (Finite(0), Finite(2), INFINITY):
        assert hasse_eval(Poly.zero(f3), 1, pt, 3) == 0


def test_hasse_eval_infinity_errors():
    f = make_field(3)
    u = Poly(f, (1, 2, 1))
    with pytest.raises(ValueError):
        hasse_eval(u, 3, INFINITY, 3)
    with pytest.raises(ValueError):
        hasse_eval(u, 0, INFINITY, 2)
    with pytest.raises(ValueError):
        hasse_eval(u, 0, INFINITY)


def test_infinity_is_not_a_field_element():
    assert INFINITY is not Finite(0)
    assert INFINITY != 0
    import pickle
    assert pickle.loads(pickle.dumps(INFINITY)) is INFINITY


def test_taylor_examples():
    f = make_field(3)
    a = Poly(f, (2, 0, 1, 1))
    assert taylor_expand(a, 0) == [2, 0, 1, 1]
    assert taylor_expand(Poly.monomial(f, 2), 1) == [1, 2, 1]
    assert taylor_expand(Poly.zero(f), 2) == [0]
    assert taylor_contract([0, 1, 2], 0, f) == Poly(f, (0, 1, 2))
    assert taylor_contract([2], 1, f) == Poly(f, (2,))


def _recompose(coeffs, beta, f):
    """sum c_n (X - beta)**n using plain polynomial arithmetic."""
    acc = Poly.zero(f)
    lin = Poly.linear(f, beta)
    for n, c in enumerate(coeffs):
        acc = acc + (lin**n).scale(c)
    return acc


@settings(max_examples=200)
@given(field_and_poly(), st.data())
def test_taylor_expansion_recomposes(fa, data):
    f, a = fa
    beta = data.draw(st.integers(0, f.q - 1))
    c = taylor_expand(a, beta)
    assert len(c) == max(len(a.coeffs), 1)
    assert _recompose(c, beta, f) == a
    assert taylor_contract(c, beta, f) == a
    for n, cn in enumerate(c):
        assert cn == hasse_eval(a, n, Finite(beta))


@settings(max_examples=200)
@given(st.sampled_from(PROPERTY_Q), st.lists(st.integers(0, 100), min_size=1, max_size=12), st.data())
def test_taylor_contract_then_expand(q, raw, data):
    f = field_of_size(q)
    c = [x % q for x in raw]
    beta = data.draw(st.integers(0, q - 1))
    a = taylor_contract(c, beta, f)
    # trailing zero coefficients of c vanish in the canonical polynomial
    trimmed = list(c)
    while len(trimmed) > 1 and trimmed[-1] == 0:
        trimmed.pop()
    assert taylor_expand(a, beta) == trimmed


def test_zero_multiplicity_examples():
    f3, f2 = make_field(3), make_field(2)
    sq = Poly.linear(f3, 1) ** 2
    assert zero_multiplicity(sq, 1) == 2
    assert zero_multiplicity(Poly(f2, (1, 1)), 0) == 0
    with pytest.raises(ValueError):
        zero_multiplicity(Poly.zero(f3), 0)


@settings(max_examples=200)
@given(field_and_poly(max_deg=6), st.integers(0, 6), st.data())
def test_zero_multiplicity_of_constructed_root(fb, m, data):
    f, b = fb
    beta = data.draw(st.integers(0, f.q - 1))
    # force b(beta) != 0
    b = b + Poly(f, (f.sub(1, evaluate(b, beta)),)) if evaluate(b, beta) == 0 else b
    a = (Poly.linear(f, beta) ** m) * b
    assert zero_multiplicity(a, beta) == m == multiplicity_by_division(a, beta)


@settings(max_examples=100)
@given(field_and_poly(), st.integers(0, 14), st.data())
def test_hasse_linearity(fa, i, data):
    f, a = fa
    b = Poly(f, tuple(data.draw(st.lists(st.integers(0, f.q - 1), max_size=13))))
    g, e = data.draw(st.integers(0, f.q - 1)), data.draw(st.integers(0, f.q - 1))
    lhs = hasse_derivative(a.scale(g) + b.scale(e), i)
    assert lhs == hasse_derivative(a, i).scale(g) + hasse_derivative(b, i).scale(e)


@settings(max_examples=100)
@given(field_and_poly(max_deg=8), st.integers(0, 10), st.data())
def test_hasse_product_rule(fa, i, data):
    f, a = fa
    b = Poly(f, tuple(data.draw(st.lists(st.integers(0, f.q - 1), max_size=9))))
    rhs = Poly.zero(f)
    for j in range(i + 1):
        rhs = rhs + hasse_derivative(a, j) * hasse_derivative(b, i - j)
    assert hasse_derivative(a * b, i) == rhs


@settings(max_examples=100)
@given(field_and_poly(), st.integers(0, 7), st.integers(0, 7))
def test_hasse_composition(fa, i1, i2):
    f, a = fa
    lhs = hasse_derivative(hasse_derivative(a, i2), i1)
    assert lhs == hasse_derivative(a, i1 + i2).scale(f.binom(i1 + i2, i1))


@settings(max_examples=100)
@given(st.sampled_from(PROPERTY_Q), st.integers(0, 12), st.integers(0, 14), st.data())
def test_hasse_power_rule(q, k, i, data):
    f = field_of_size(q)
    gamma = data.draw(st.integers(0, q - 1))
    lin = Poly.linear(f, gamma)
    want = (lin ** (k - i)).scale(f.binom(k, i)) if i <= k else Poly.zero(f)
    assert hasse_derivative(lin**k, i) == want


def test_hasse_multi_product_rule():
    rng = random.Random(7)
    for _ in range(60):
        f = field_of_size(rng.choice(PROPERTY_Q))
        m = rng.randint(1, 3)
        fs = [random_poly(rng, f, 5) for _ in range(m)]
        i = rng.randint(0, 4)
        prod = Poly(f, (1,))
        for h in fs:
            prod = prod * h
        rhs = Poly.zero(f)
        for comp in compositions_brute(i, m):
            term = Poly(f, (1,))
            for h, ih in zip(fs, comp):
                term = term * hasse_derivative(h, ih)
            rhs = rhs + term
        assert hasse_derivative(prod, i) == rhs


def test_poly_json():
    f = make_field(2, 2)
    a = Poly(f, (3, 0, 2))
    assert json.loads(json.dumps(a.to_json())) == [3, 0, 2]
    assert from_json(f, [3, 0, 2]) == a
