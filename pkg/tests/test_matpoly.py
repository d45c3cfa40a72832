import pytest
import sympy
from hypothesis import given, settings, strategies as st

from adhmcert.exactnum import GaussRational, ONE, ZERO
from adhmcert.matpoly import (
    DimensionMismatch,
    Matrix,
    SingularMatrix,
    Subspace,
    bareiss_det,
    cofactor_det,
    commutator,
    evaluate_matrix,
    invariant_closure,
    invariant_core,
    minors,
    normalize_point,
    null_space,
    solve_linear,
)
from adhmcert.polyring import PolyRing

ints = st.integers(-4, 4)


def int_matrix(rows, cols):
    return st.lists(st.lists(ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def sym(m):
    return sympy.Matrix([[sympy.Rational(v.re.numerator, v.re.denominator) for v in row] for row in m])


@given(st.integers(1, 5).flatmap(lambda n: int_matrix(n, n)))
@settings(max_examples=80, deadline=None)
def test_det_matches_sympy(rows):
    m = Matrix(rows)
    ref = sympy.Matrix(rows).det()
    assert bareiss_det(m) == ref
    assert cofactor_det(m) == ref


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: int_matrix(r, c))))
@settings(max_examples=80, deadline=None)
def test_rank_and_null_space_match_sympy(rows):
    m = Matrix(rows)
    S = sympy.Matrix(rows)
    assert m.rank() == S.rank()
    ns = null_space(m)
    assert ns.dim == len(S.nullspace())
    for v in ns.basis:
        assert (m * Matrix([[x] for x in v], 1)).is_zero()


@given(st.integers(1, 4).flatmap(lambda n: int_matrix(n, n)))
@settings(max_examples=60, deadline=None)
def test_inverse_round_trip(rows):
    m = Matrix(rows)
    if m.det():
        assert m * m.inverse() == Matrix.identity(m.rows)
    else:
        with pytest.raises(SingularMatrix):
            m.inverse()


def test_polynomial_det_and_minors():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    m = Matrix([[x, y], [y, x]])
    assert m.det() == x * x - y * y
    assert sorted(map(str, minors(Matrix([[x, y, R.zero()], [R.zero(), x, y]]), 2))) == sorted(["x^2", "x*y", "y^2"])
    assert Matrix([[x, y], [x, y]]).rank() == 1


def test_gaussian_entries():
    i = GaussRational(0, 1)
    m = Matrix([[1, i], [i, 1]])
    assert m.det() == 2
    assert Matrix([[1, i], [i, -1]]).rank() == 1


def test_solve_linear():
    a = Matrix([[1, 2], [2, 4]])
    sol = solve_linear(a, [3, 6])
    assert sol.consistent and sol.homogeneous.dim == 1
    x = sol.particular
    assert x[0] + 2 * x[1] == 3
    assert not solve_linear(a, [1, 0]).consistent
    with pytest.raises(DimensionMismatch):
        solve_linear(a, [1])


def test_subspace_lattice_operations():
    e = lambda *v: tuple(GaussRational(x) for x in v)
    U = Subspace.span(3, [e(1, 0, 0), e(0, 1, 0)])
    V = Subspace.span(3, [e(0, 1, 0), e(0, 0, 1)])
    assert U.intersect(V).dim == 1
    assert U.intersect(V).contains(e(0, 5, 0))
    assert Subspace.span(3, [e(0, 1, 0)]) <= U
    assert not V <= U
    P = Matrix([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert U.preimage(P).dim == 2
    assert V.image(P).dim == 1


def test_invariant_closure_and_core():
    N = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])  # e2 -> e1, e3 -> e2
    e3 = Subspace.span(3, [(0, 0, 1)])
    assert invariant_closure([N], e3).dim == 3
    assert invariant_closure([N], Subspace.span(3, [(1, 0, 0)])).dim == 1
    plane = Subspace.span(3, [(0, 1, 0), (0, 0, 1)])
    assert invariant_core([N], plane).dim == 0
    assert invariant_core([N], Subspace.span(3, [(1, 0, 0), (0, 1, 0)])).dim == 2


def test_commutator_and_transpose():
    a = Matrix([[0, 1], [0, 0]])
    b = a.T
    assert commutator(a, b) == Matrix([[1, 0], [0, -1]])
    assert Matrix.omega(4).is_antisymmetric()
    with pytest.raises(ValueError):
        Matrix.omega(3)


def test_point_normalisation_and_evaluation():
    assert normalize_point([0, 2, 4]) == (ZERO, ONE, GaussRational(2))
    with pytest.raises(ValueError):
        normalize_point([0, 0])
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    m = Matrix([[x, y]])
    # [2 : 4] and [1 : 2] are the same point
    assert evaluate_matrix(m, [2, 4], ["x", "y"]) == Matrix([[1, 2]])
    with pytest.raises(DimensionMismatch):
        evaluate_matrix(m, [1], ["x", "y"])


def test_block_and_shape_errors():
    a = Matrix.identity(2)
    assert Matrix.block([[a, a]]).shape == (2, 4)
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        a * Matrix.identity(3)
