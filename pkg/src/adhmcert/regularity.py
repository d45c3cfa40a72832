"""Global regularity of ADHM data and related fibre-wise checks.

The authoritative decision uses the ideal of maximal minors: alpha is injective
at every point iff the c x c minors of alpha have no common projective zero,
and likewise for beta.  Witness points are searched chart by chart with lex
elimination; Q(i) is not algebraically closed, so a non-empty locus may have
no rational witness, in which case the report says so.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .adhm import AdhmDatum, DatumError, build_monad, mu
from .exactnum import ONE, ZERO, GaussRational, as_scalar
from .groebner import DEFAULT_CONFIG, GroebnerConfig, Ideal, groebner_basis, projective_empty
from .matpoly import (
    DimensionMismatch,
    Matrix,
    Subspace,
    invariant_closure,
    invariant_core,
    iter_minors,
    null_space,
)
from .polyring import Poly, PolyRing

Point = Tuple[GaussRational, ...]


class AdhmEquationViolated(ValueError):
    """mu(datum) is not identically zero."""


class PreconditionError(ValueError):
    pass


@dataclass
class RegularityReport:
    alpha_injective_everywhere: bool
    beta_surjective_everywhere: bool
    failure_witness: Optional[Point] = None
    witness_side: Optional[str] = None
    method: str = "minors-ideal"
    notes: List[str] = field(default_factory=list)
    evidence: Dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def regular(self) -> bool:
        return self.alpha_injective_everywhere and self.beta_surjective_everywhere

    def to_dict(self) -> dict:
        return {
            "regular": self.regular,
            "alpha_injective_everywhere": self.alpha_injective_everywhere,
            "beta_surjective_everywhere": self.beta_surjective_everywhere,
            "failure_witness": None if self.failure_witness is None else [str(v) for v in self.failure_witness],
            "witness_side": self.witness_side,
            "method": self.method,
            "notes": list(self.notes),
            "evidence": self.evidence,
            "seconds": round(self.seconds, 4),
        }


def _require_numeric(datum: AdhmDatum):
    if datum.is_symbolic():
        raise DatumError("datum has symbolic parameters; specialise them first")


def _minor_gens(m: Matrix, k: int, ring: PolyRing) -> List[Poly]:
    seen = set()
    out = []
    for d in iter_minors(m, k):
        if not d:
            continue
        p = ring(d).monic()
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def minors_ideal(m: Matrix, k: int, ring: PolyRing, config: GroebnerConfig = DEFAULT_CONFIG) -> Ideal:
    """Ideal of the k x k minors (deduplicated up to scalars)."""
    return Ideal(_minor_gens(m, k, ring), ring, config)


# -- fibres ---------------------------------------------------------------------------


def _point_values(datum: AdhmDatum, p, ring: PolyRing):
    if len(p) != len(datum.coords):
        raise DimensionMismatch(f"point needs {len(datum.coords)} coordinates")
    if all(not isinstance(v, Poly) for v in p):
        pt = tuple(as_scalar(v) for v in p)
        if not any(pt):
            raise ValueError("projective point with all coordinates zero")
        return pt
    return tuple(ring(v) for v in p)


def fibre_maps(datum: AdhmDatum, p) -> Tuple[Matrix, Matrix]:
    """alpha_p and beta_p; p may hold scalars or polynomials in the datum's ring."""
    monad = build_monad(datum)
    ring = datum.ring
    pt = _point_values(datum, p, ring)
    if datum.is_symbolic() or any(isinstance(v, Poly) for v in pt):
        mapping = dict(zip(datum.coords, (ring(v) for v in pt)))
        return monad.alpha.subs(mapping), monad.beta.subs(mapping)
    mapping = dict(zip(datum.coords, pt))
    return monad.alpha.evaluate(mapping), monad.beta.evaluate(mapping)


def fibre_ranks(datum: AdhmDatum, p) -> Tuple[int, int]:
    """(rank alpha_p, rank beta_p); symbolic entries give the generic rank."""
    a, b = fibre_maps(datum, p)
    return a.rank(), b.rank()


def _rank_deficient(datum: AdhmDatum, p: Point, side: str) -> bool:
    ra, rb = fibre_ranks(datum, p)
    return (ra if side == "alpha" else rb) < datum.c


# -- rational points on affine charts ---------------------------------------------------


def _dense_univariate(p: Poly, k: int) -> List[GaussRational]:
    deg = max(m[k] for m in p.terms)
    coeffs = [ZERO] * (deg + 1)
    for m, c in p.terms.items():
        coeffs[m[k]] = coeffs[m[k]] + c
    return coeffs


def _horner(coeffs, x):
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divisors(n: int, cap: int = 10**6) -> List[int]:
    n = abs(n)
    if n == 0 or n > cap:
        return []
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.update((d, n // d))
    return sorted(out)


def univariate_roots(coeffs: Sequence[GaussRational]) -> List[GaussRational]:
    """Some roots in Q(i) of a dense univariate polynomial (not necessarily all).

    Exact for degree <= 1; quadratics use the formula when the discriminant is a
    real square class; higher degrees try rational and purely imaginary
    candidates from the rational root test.
    """
    coeffs = [as_scalar(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = []
    if not coeffs[0]:
        roots.append(ZERO)
        while not coeffs[0]:
            coeffs.pop(0)
        if len(coeffs) == 1:
            return roots
    deg = len(coeffs) - 1
    if deg == 1:
        return roots + [-coeffs[0] / coeffs[1]]
    if deg == 2:
        a, b, c = coeffs[2], coeffs[1], coeffs[0]
        s = (b * b - a * c * 4).sqrt()
        if s is not None:
            cand = {(-b + s) / (a * 2), (-b - s) / (a * 2)}
            return roots + sorted(cand, key=lambda v: (v.re, v.im))
    if all(c.is_real() for c in coeffs):
        den = 1
        for c in coeffs:
            den = den * c.re.denominator // gcd(den, c.re.denominator)
        ints = [int(c.re * den) for c in coeffs]
        found = set()
        for pnum in _divisors(ints[0]):
            for qden in _divisors(ints[-1]):
                q = Fraction(pnum, qden)
                for cand in (GaussRational(q), GaussRational(-q), GaussRational(0, q), GaussRational(0, -q)):
                    if cand not in found and not _horner(coeffs, cand):
                        found.add(cand)
        roots.extend(sorted(found, key=lambda v: (v.re, v.im)))
    return roots


def _small_values(bound: int) -> List[GaussRational]:
    vals = [ZERO]
    for k in range(1, bound + 1):
        vals += [as_scalar(k), as_scalar(-k)]
    return vals


def find_rational_point(
    gens: Sequence[Poly],
    bound: int = 2,
    config: GroebnerConfig = DEFAULT_CONFIG,
) -> Optional[Dict[str, GaussRational]]:
    """A common Q(i)-zero of ``gens`` (affine), or None if none was found.

    Lex elimination exposes a univariate polynomial in the smallest variable;
    its Q(i) roots are tried in turn, free variables range over small integers.
    """
    ring = gens[0].ring.with_order("lex")
    gens = [ring(g) for g in gens if g]
    return _solve(gens, ring, bound, config)


def _solve(gens, ring, bound, config):
    gens = [g for g in gens if g]
    if not gens:
        return {}
    if any(g.is_constant() for g in gens):
        return None
    gb = groebner_basis(gens, "lex", config)
    if gb.is_unit():
        return None
    used = sorted({v for p in gb.polys for v in p.variables()}, key=ring.index.get)
    var = used[-1]
    k = ring.index[var]
    univ = [p for p in gb.polys if p.variables() == (var,)]
    candidates = univariate_roots(_dense_univariate(univ[0], k)) if univ else _small_values(bound)
    for val in candidates:
        sub = [p.subs({var: val}) for p in gb.polys]
        rest = _solve(sub, ring, bound, config)
        if rest is not None:
            rest[var] = val
            return rest
    return None


def _chart_witness(ideal: Ideal, coords: Sequence[str], bound: int) -> Optional[Point]:
    ring = ideal.ring
    for chart, name in enumerate(coords):
        others = [v for v in coords if v != name]
        # coordinates before the chart one vanish, so each point is met once
        zero_before = {v: ZERO for v in coords[:chart]}
        affine = PolyRing([v for v in others if v not in zero_before], "lex")
        gens = []
        for g in ideal.gens:
            h = g.subs({name: ONE, **zero_before})
            gens.append(h.to_ring(affine))
        gens = [g for g in gens if g]
        if not gens:
            sol = {}
        elif not affine.names:
            continue
        else:
            sol = find_rational_point(gens, bound, ideal.config)
        if sol is None:
            continue
        point = tuple(ONE if v == name else zero_before.get(v, sol.get(v, ZERO)) for v in coords)
        return point
    return None


# -- global regularity ---------------------------------------------------------------


def global_regularity(
    datum: AdhmDatum,
    config: GroebnerConfig = DEFAULT_CONFIG,
    find_witness: bool = True,
    witness_bound: int = 2,
) -> RegularityReport:
    _require_numeric(datum)
    t0 = time.perf_counter()
    if not mu(datum).is_zero():
        raise AdhmEquationViolated("mu(datum) is not zero; the ADHM equation fails")
    ring = PolyRing(datum.coords)
    monad = build_monad(datum)
    flags = {}
    evidence = {}
    witness = side = None
    notes = []
    for name, m in (("alpha", monad.alpha), ("beta", monad.beta)):
        ideal = minors_ideal(m, datum.c, ring, config)
        empty = bool(ideal.gens) and projective_empty(ideal, datum.coords)
        flags[name] = empty
        evidence[f"{name}_minors"] = len(ideal.gens)
        evidence[f"{name}_basis_leading"] = ideal.basis().fingerprint() if ideal.gens else []
        if not empty and find_witness and witness is None:
            w = _chart_witness(ideal, datum.coords, witness_bound) if ideal.gens else (ONE,) + (ZERO,) * (len(datum.coords) - 1)
            if w is not None and _rank_deficient(datum, w, name):
                witness, side = w, name
            else:
                notes.append(f"{name} drops rank somewhere over the algebraic closure; no Q(i) point found")
    return RegularityReport(
        flags["alpha"], flags["beta"], witness, side, "minors-ideal", notes, evidence,
        time.perf_counter() - t0,
    )


def sample_regularity(datum: AdhmDatum, samples: int = 50, seed: int = 0, bound: int = 5) -> RegularityReport:
    """Search random integer points for rank drops.

    Can only refute regularity; "true" flags mean no failure among the samples.
    """
    _require_numeric(datum)
    rng = random.Random(seed)
    t0 = time.perf_counter()
    ncoords = len(datum.coords)
    for _ in range(samples):
        p = tuple(as_scalar(rng.randint(-bound, bound)) for _ in range(ncoords))
        if not any(p):
            continue
        ra, rb = fibre_ranks(datum, p)
        if ra < datum.c or rb < datum.c:
            side = "alpha" if ra < datum.c else "beta"
            return RegularityReport(ra == datum.c, rb == datum.c, p, side, "point-sample",
                                    seconds=time.perf_counter() - t0)
    return RegularityReport(True, True, None, None, "point-sample",
                            [f"no rank drop at {samples} sampled points"], seconds=time.perf_counter() - t0)


# -- invariant-subspace screen -------------------------------------------------------


def closure_check(datum: AdhmDatum) -> Tuple[bool, bool]:
    """(closure of im I is V, core of ker J is 0) under all A_k, B_k."""
    _require_numeric(datum)
    c = datum.c
    mats = list(datum.A) + list(datum.B)
    cols = [col for m in datum.I for col in m.T.entries]
    closure = invariant_closure(mats, Subspace.span(c, cols))
    ker = null_space(Matrix([row for m in datum.J for row in m.entries], c))
    core = invariant_core(mats, ker)
    return closure.dim == c, core.dim == 0


# -- line criteria ------------------------------------------------------------------------


def line_triviality_det(beta_row: Matrix, p, q, coords: Sequence[str] = None):
    """beta(p) . beta(q)^t for a one-row beta.

    Points may be scalars or polynomials (in any one ring), giving a scalar or
    a polynomial respectively.
    """
    if beta_row.rows != 1:
        raise DimensionMismatch("expected a single-row matrix")
    ring = beta_row.ring()
    coords = tuple(coords) if coords is not None else (ring.names if ring else ())
    if len(p) != len(coords) or len(q) != len(coords):
        raise DimensionMismatch("point length differs from the coordinate count")
    scalar = all(not isinstance(v, Poly) for v in tuple(p) + tuple(q))
    if scalar:
        ps, qs = [as_scalar(v) for v in p], [as_scalar(v) for v in q]
        if not any(ps) or not any(qs):
            raise ValueError("projective point with all coordinates zero")
        if Matrix([ps, qs]).rank() < 2:
            raise ValueError("p and q must be distinct points")
    bp = beta_row.evaluate(dict(zip(coords, p)))
    bq = beta_row.evaluate(dict(zip(coords, q)))
    return (bp * bq.T)[0, 0]


def distinguished_line_triviality(datum: AdhmDatum, report: RegularityReport = None) -> bool:
    """Check constant full fibre rank along l = {z = 0}.

    Ranks are compared at the two chart points of l, and the minors of the
    monad restricted to l are checked to have no common zero on l.
    """
    _require_numeric(datum)
    if not mu(datum).is_zero():
        raise PreconditionError("precondition: mu(datum) is not zero")
    report = report or global_regularity(datum, find_witness=False)
    if not report.regular:
        raise PreconditionError("precondition: datum is not globally regular")
    c, r = datum.c, datum.r
    zs = len(datum.coords) - 2
    for p in ((ONE, ZERO) + (ZERO,) * zs, (ZERO, ONE) + (ZERO,) * zs):
        ra, rb = fibre_ranks(datum, p)
        if (ra, rb) != (c, c) or (2 * c + r) - ra - rb != r:
            return False
    monad = build_monad(datum)
    line = PolyRing(("x", "y"))
    restrict = {z: ZERO for z in datum.coords[2:]}
    for m in (monad.alpha, monad.beta):
        ml = m.subs(restrict).map(lambda v: v.to_ring(line) if isinstance(v, Poly) else v)
        ideal = minors_ideal(ml, c, line)
        if not ideal.gens or not projective_empty(ideal, ("x", "y")):
            return False
    return True
