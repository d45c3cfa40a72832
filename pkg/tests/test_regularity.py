import random
from fractions import Fraction

import pytest

from generators import charge_one_zero_mu, commuting_zero_mu
from adhmcert.adhm import AdhmDatum, DatumError, load_datum, mu, random_datum
from adhmcert.exactnum import GaussRational, I
from adhmcert.groebner import Ideal
from adhmcert.matpoly import DimensionMismatch, Matrix
from adhmcert.polyring import PolyRing
from adhmcert.regularity import (
    AdhmEquationViolated,
    PreconditionError,
    closure_check,
    distinguished_line_triviality,
    fibre_ranks,
    find_rational_point,
    global_regularity,
    line_triviality_det,
    minors_ideal,
    sample_regularity,
    univariate_roots,
)

DATA = __import__("pathlib").Path(__file__).resolve().parents[1] / "data"


def charge1():
    return load_datum(DATA / "charge1_rank2.json").datum


def test_charge1_is_regular_and_trivial_on_the_line():
    d = charge1()
    rep = global_regularity(d)
    assert rep.regular and rep.failure_witness is None
    assert fibre_ranks(d, (1, 0, 0)) == (1, 1)
    assert closure_check(d) == (True, True)
    assert distinguished_line_triviality(d, rep)


def test_zero_datum_fails_with_a_verified_witness():
    d = AdhmDatum.zero(3, 2, 1)
    rep = global_regularity(d)
    assert not rep.regular
    ra, rb = fibre_ranks(d, rep.failure_witness)
    assert min(ra, rb) < d.c
    with pytest.raises(PreconditionError):
        distinguished_line_triviality(d)


def test_nonzero_mu_is_refused():
    d = random_datum(3, 1, 2, random.Random(3))
    assert not mu(d).is_zero()
    with pytest.raises(AdhmEquationViolated):
        global_regularity(d)


def test_symbolic_datum_is_refused():
    R = PolyRing(["a"])
    d = AdhmDatum(2, 1, 1, (Matrix([[R.var("a")]]),), (Matrix([[0]]),), (Matrix([[0]]),), (Matrix([[0]]),))
    with pytest.raises(DatumError):
        global_regularity(d)


@pytest.mark.parametrize("seed", range(30))
def test_exact_and_sampled_verdicts_are_consistent(seed):
    rng = random.Random(seed)
    d = charge_one_zero_mu(3, 2, rng) if seed % 2 else commuting_zero_mu(3, 1, 2, rng)
    exact = global_regularity(d)
    sampled = sample_regularity(d, samples=40, seed=seed)
    # sampling can only refute
    if not sampled.regular:
        assert not exact.regular
    if exact.failure_witness is not None:
        ra, rb = fibre_ranks(d, exact.failure_witness)
        assert (ra if exact.witness_side == "alpha" else rb) < d.c
    # an invariant subspace containing im I, or inside ker J, forces a rank drop
    if exact.regular:
        assert closure_check(d) == (True, True)


def test_degenerate_J_is_never_regular():
    for seed in range(5):
        d = commuting_zero_mu(2, 2, 2, random.Random(seed))
        assert not global_regularity(d).regular


def test_minors_ideal_deduplicates():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    ideal = minors_ideal(Matrix([[x, y], [2 * x, 2 * y], [x, y]]), 1, R)
    assert len(ideal.gens) == 2


def test_line_triviality_det():
    R = PolyRing(["x", "y", "z"])
    row = Matrix([list(R.gens())])
    assert line_triviality_det(row, (1, 0, 0), (1, 1, 0)) == 1
    assert line_triviality_det(row, (1, 0, 0), (0, 1, 0)) == 0
    with pytest.raises(ValueError):
        line_triviality_det(row, (1, 0, 0), (2, 0, 0))
    with pytest.raises(ValueError):
        line_triviality_det(row, (0, 0, 0), (1, 0, 0))
    with pytest.raises(DimensionMismatch):
        line_triviality_det(Matrix.block([[row], [row]]), (1, 0, 0), (0, 1, 0))


@pytest.mark.parametrize("coeffs,roots", [
    ([4, 0, 1], {2 * I, -2 * I}),
    ([-2, 0, 1], set()),
    ([6, -5, 1], {GaussRational(2), GaussRational(3)}),
    ([-8, 0, 0, 1], {GaussRational(2)}),
    ([0, 0, 1], {GaussRational(0)}),
    ([1, 2], {GaussRational(Fraction(-1, 2))}),
    ([1, 0, 2], set()),
])
def test_univariate_roots(coeffs, roots):
    got = set(univariate_roots(coeffs))
    assert got == roots


def test_find_rational_point():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    p = find_rational_point([x * x + 1, y - x], 2)
    assert p is not None
    assert (p["x"] ** 2 + 1) == 0 and p["y"] == p["x"]
    assert find_rational_point([x * x - 2], 2) is None
