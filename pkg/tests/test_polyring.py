import pickle
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from adhmcert.exactnum import GaussRational
from adhmcert.polyring import Poly, PolyRing, PolySyntaxError, RingMismatch, UnknownVariable, chern_series

NAMES = ("x", "y", "z")
SYMS = sympy.symbols(NAMES)
monos = st.tuples(*[st.integers(0, 3)] * 3)
coeffs = st.builds(GaussRational, st.integers(-5, 5), st.integers(-2, 2))
term_maps = st.dictionaries(monos, coeffs, max_size=5)


def make(order="grevlex"):
    return PolyRing(NAMES, order)


def to_sympy(p: Poly):
    return sympy.expand(sum(
        (sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator))
        * sympy.Mul(*[s ** e for s, e in zip(SYMS, m)])
        for m, c in p.terms.items()
    ))


@given(term_maps, term_maps)
@settings(max_examples=60, deadline=None)
def test_arithmetic_agrees_with_sympy(t1, t2):
    R = make()
    f, g = Poly.from_terms(R, t1), Poly.from_terms(R, t2)
    F, G = to_sympy(f), to_sympy(g)
    assert sympy.expand(to_sympy(f * g) - F * G) == 0
    assert sympy.expand(to_sympy(f + g) - F - G) == 0
    assert sympy.expand(to_sympy(f - g) - F + G) == 0
    assert sympy.expand(to_sympy(f ** 2) - F ** 2) == 0


@given(term_maps)
@settings(max_examples=60, deadline=None)
def test_str_parse_round_trip(t):
    R = make()
    f = Poly.from_terms(R, t)
    assert R.parse(str(f)) == f


@pytest.mark.parametrize("order", ["grevlex", "lex"])
@given(term_maps.filter(lambda t: any(t.values())))
@settings(max_examples=60, deadline=None)
def test_leading_monomial_matches_sympy(order, t):
    f = Poly.from_terms(make(order), t)
    lm = sympy.Poly(to_sympy(f), *SYMS).monoms(order=order)[0]
    assert tuple(f.leading_monomial()) == lm


def test_grevlex_textbook_order():
    R = make()
    x, y, z = R.gens()
    # x*y*z > x^2 (degree), x*z^2 < y^3 (last variable breaks ties)
    assert R.compare((1, 1, 1), (2, 0, 0)) > 0
    assert R.compare((1, 0, 2), (0, 3, 0)) < 0
    assert R.compare((1, 1, 0), (0, 2, 0)) > 0
    L = make("lex")
    assert L.compare((1, 0, 0), (0, 5, 5)) > 0


def test_parser_errors_report_positions():
    R = make()
    with pytest.raises(UnknownVariable):
        R.parse("x + w")
    with pytest.raises(PolySyntaxError) as exc:
        R.parse("2x")
    assert exc.value.position == 1
    for bad in ("", "x +", "(x", "x^y", "x^1/2", "1/0", "x $ y"):
        with pytest.raises(PolySyntaxError):
            R.parse(bad)


def test_parse_examples():
    R = make()
    x, y, z = R.gens()
    assert R.parse("(x + i*y)^2") == x * x - y * y + GaussRational(0, 2) * x * y
    assert R.parse("x*-y") == -(x * y)
    assert R.parse("-3/2") == R.const(Fraction(-3, 2))


def test_evaluate_subs_and_composition():
    R = make()
    x, y, z = R.gens()
    f = x * x * y - z
    assert f.evaluate({"x": 2, "y": 3, "z": 1}) == 11
    assert f.subs({"z": x}) == x * x * y - x
    S = PolyRing(["s", "t"])
    s, t = S.gens()
    assert f.evaluate({"x": s, "y": t, "z": s * t}) == s * s * t - s * t


def test_ring_embedding_and_mismatch():
    R = make()
    S = R.extend(["w"])
    f = R.parse("x*y + z")
    assert f.to_ring(S).to_ring(R) == f
    small = PolyRing(["x", "y"])
    assert R.parse("x - y").to_ring(small) == small.parse("x - y")
    with pytest.raises(ValueError):
        f.to_ring(small)
    with pytest.raises(RingMismatch):
        f + S.var("w")


def test_exact_division():
    R = make()
    x, y, z = R.gens()
    assert ((x + y) * (x - z)).exact_div(x + y) == x - z
    with pytest.raises(ArithmeticError):
        (x * x + 1).exact_div(x + y)


def test_ring_pickles():
    R = make("lex")
    assert pickle.loads(pickle.dumps(R)) == R
    f = R.parse("x^2 - y")
    assert pickle.loads(pickle.dumps(f)) == f


@pytest.mark.parametrize("c", range(1, 6))
def test_chern_series_against_binomial_expansion(c):
    # independent check: expand (1 + t^2 + t^4 + ...)^c with sympy
    t = sympy.Symbol("t")
    geo = sum(t ** (2 * k) for k in range(6))
    ref = sympy.Poly(sympy.expand(geo ** c), t)
    s = chern_series(c, 10)
    for k in range(11):
        assert s[k] == ref.coeff_monomial(t ** k)
        if k % 2 == 0:
            assert s[k] == comb(c - 1 + k // 2, k // 2)


def test_chern_series_rendering_and_domain():
    assert str(chern_series(2, 4)) == "1 + 2t^2 + 3t^4"
    assert str(chern_series(1, 3)) == "1 + t^2"
    with pytest.raises(ValueError):
        chern_series(0, 4)
