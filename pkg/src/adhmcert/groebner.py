"""Buchberger's algorithm and the ideal-theoretic decisions built on it.

Pairs are processed with the normal selection strategy (smallest lcm first)
and pruned with Buchberger's coprime criterion plus the Gebauer-Moeller
chain criterion.  Results are reduced and monic, so a basis for a fixed order
is unique and can be compared or fingerprinted directly.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import ONE, GaussRational
from .polyring import (
    Monomial,
    Poly,
    PolyRing,
    RingMismatch,
    _mono_div,
    _mono_divides,
    _mono_lcm,
    _mono_mul,
)


class ResourceCapExceeded(RuntimeError):
    """A Groebner computation outgrew a configured limit."""


@dataclass(frozen=True)
class GroebnerConfig:
    max_basis: int = 4000
    max_terms: int = 250_000
    max_pairs: int = 2_000_000


DEFAULT_CONFIG = GroebnerConfig()


@dataclass
class GroebnerStats:
    pairs: int = 0
    zero_reductions: int = 0
    pruned: int = 0
    seconds: float = 0.0


class _Elem:
    __slots__ = ("idx", "lm", "deg", "lc_inv", "tail", "rep")

    def __init__(self, idx, terms: Dict[Monomial, GaussRational], key, rep=None):
        self.idx = idx
        self.lm = max(terms, key=key)
        self.deg = sum(self.lm)
        self.lc_inv = terms[self.lm].inv()
        self.tail = [(m, c) for m, c in terms.items() if m != self.lm]
        self.rep = rep

    def terms(self):
        lc = self.lc_inv.inv()
        d = dict(self.tail)
        d[self.lm] = lc
        return d


def _reduce(
    terms: Dict[Monomial, GaussRational],
    basis: Sequence[_Elem],
    key,
    config: GroebnerConfig,
    quotients: Optional[list] = None,
) -> Dict[Monomial, GaussRational]:
    """Full multivariate division remainder of ``terms`` by ``basis``."""
    p = dict(terms)
    keymap = {}
    heap = []
    for m in p:
        k = key(m)
        keymap[k] = m
        heap.append(-k)
    heapq.heapify(heap)
    rem: Dict[Monomial, GaussRational] = {}
    max_terms = config.max_terms
    while heap:
        k = -heapq.heappop(heap)
        m = keymap[k]
        c = p.get(m)
        if c is None:
            continue
        deg = sum(m)
        for e in basis:
            if e.deg <= deg and _mono_divides(e.lm, m):
                break
        else:
            rem[m] = c
            del p[m]
            continue
        del p[m]
        q = _mono_div(m, e.lm)
        f = c * e.lc_inv
        if quotients is not None:
            quotients.append((e, q, f))
        for gm, gc in e.tail:
            nm = tuple([a + b for a, b in zip(gm, q)])
            v = p.get(nm)
            if v is None:
                p[nm] = -(f * gc)
                nk = key(nm)
                keymap[nk] = nm
                heapq.heappush(heap, -nk)
            else:
                v = v - f * gc
                if v:
                    p[nm] = v
                else:
                    del p[nm]
        if len(p) > max_terms:
            raise ResourceCapExceeded(
                f"intermediate polynomial exceeded {max_terms} terms"
            )
    return rem


def _monic(terms, key):
    if not terms:
        return terms
    lm = max(terms, key=key)
    inv = terms[lm].inv()
    if inv.is_one():
        return terms
    return {m: c * inv for m, c in terms.items()}


class GroebnerBasis:
    """A reduced Groebner basis together with the ring/order it lives in."""

    def __init__(self, ring: PolyRing, polys: Sequence[Poly], stats=None, reps=None):
        self.ring = ring
        self.polys = tuple(sorted(polys, key=lambda p: ring.key(p.leading_monomial())))
        self.stats = stats or GroebnerStats()
        # reps[k] expresses polys[k] in the original generators (when tracked)
        if reps is not None:
            order = {id(p): k for k, p in enumerate(polys)}
            self.reps = tuple(reps[order[id(p)]] for p in self.polys)
        else:
            self.reps = None
        key = ring.key
        self._elems = [_Elem(k, p.terms, key) for k, p in enumerate(self.polys)]

    @property
    def order(self) -> str:
        return self.ring.order

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.polys == other.polys

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def leading_monomials(self) -> List[Monomial]:
        return [p.leading_monomial() for p in self.polys]

    def fingerprint(self) -> str:
        """Sorted leading monomials, printed; stable across reruns."""
        lts = sorted(str(p.leading_term().monic()) for p in self.polys)
        return "[" + ", ".join(lts) + "]"

    def reduce(self, f: Poly, quotients=None) -> Poly:
        f = self._lift(f)
        rem = _reduce(f.terms, self._elems, self.ring.key, DEFAULT_CONFIG, quotients)
        return Poly(self.ring, rem)

    def _lift(self, f: Poly) -> Poly:
        if f.ring == self.ring:
            return f
        if f.ring.names == self.ring.names:
            return Poly(self.ring, f.terms)
        return f.to_ring(self.ring)


def groebner_basis(
    gens: Sequence[Poly],
    order: Optional[str] = None,
    config: GroebnerConfig = DEFAULT_CONFIG,
    track: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``gens``.

    ``order`` overrides the ring's monomial order.  With ``track=True`` each
    basis element also carries cofactors expressing it in ``gens``.
    """
    t0 = time.perf_counter()
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator (use the zero polynomial)")
    ring0 = gens[0].ring
    for g in gens:
        if g.ring.names != ring0.names:
            raise RingMismatch("generators live in different rings")
    ring = ring0 if order is None or order == ring0.order else ring0.with_order(order)
    key = ring.key
    stats = GroebnerStats()
    ngens = len(gens)

    def unit_rep(k):
        rep = [ring.zero()] * ngens
        rep[k] = ring.one()
        return rep

    elems: List[_Elem] = []
    active: List[_Elem] = []
    pairs: list = []
    seq = 0

    def update(h: _Elem):
        nonlocal pairs, seq
        # Gebauer-Moeller: new pairs (h, g) first
        cands = [(g, _mono_lcm(h.lm, g.lm)) for g in active]
        keep = []
        for i, (g, lcm) in enumerate(cands):
            coprime = _mono_mul(h.lm, g.lm) == lcm
            if coprime:
                keep.append((g, lcm, True))
                continue
            dominated = False
            for j, (g2, lcm2) in enumerate(cands):
                if j != i and _mono_divides(lcm2, lcm) and (lcm2 != lcm or j < i):
                    dominated = True
                    break
            if not dominated:
                for g2, lcm2, _ in keep:
                    if _mono_divides(lcm2, lcm):
                        dominated = True
                        break
            if not dominated:
                keep.append((g, lcm, False))
            else:
                stats.pruned += 1
        new = []
        for g, lcm, coprime in keep:
            if coprime:
                stats.pruned += 1
            else:
                new.append((g, lcm))
        # drop old pairs whose lcm is a multiple of lm(h) in the strict sense
        survivors = []
        for entry in pairs:
            _, _, _, g1, g2, lcm = entry
            if (
                _mono_divides(h.lm, lcm)
                and _mono_lcm(g1.lm, h.lm) != lcm
                and _mono_lcm(g2.lm, h.lm) != lcm
            ):
                stats.pruned += 1
                continue
            survivors.append(entry)
        for g, lcm in new:
            seq += 1
            survivors.append((sum(lcm), key(lcm), seq, g, h, lcm))
        heapq.heapify(survivors)
        pairs = survivors
        active[:] = [g for g in active if not _mono_divides(h.lm, g.lm)]
        active.append(h)

    def add(terms, rep):
        if len(elems) >= config.max_basis:
            raise ResourceCapExceeded(f"basis exceeded {config.max_basis} elements")
        e = _Elem(len(elems), terms, key, rep)
        elems.append(e)
        update(e)

    # seed with the (interreduced-on-the-fly) generators
    for k, g in enumerate(gens):
        terms = g.terms if g.ring == ring else dict(g.terms)
        if not terms:
            continue
        q = [] if track else None
        rem = _reduce(terms, active, key, config, q)
        if not rem:
            continue
        rep = None
        if track:
            rep = _apply_quotients(unit_rep(k), q, ring)
        lm = max(rem, key=key)
        inv = rem[lm].inv()
        rem = {m: c * inv for m, c in rem.items()}
        if track:
            rep = [r.scale(inv) for r in rep]
        add(rem, rep)

    while pairs:
        stats.pairs += 1
        if stats.pairs > config.max_pairs:
            raise ResourceCapExceeded(f"more than {config.max_pairs} S-pairs")
        _, _, _, g1, g2, lcm = heapq.heappop(pairs)
        s_terms, s_rep = _spoly(g1, g2, lcm, ring, track)
        q = [] if track else None
        rem = _reduce(s_terms, active, key, config, q)
        if not rem:
            stats.zero_reductions += 1
            continue
        rep = _apply_quotients(s_rep, q, ring) if track else None
        lm = max(rem, key=key)
        inv = rem[lm].inv()
        rem = {m: c * inv for m, c in rem.items()}
        if track:
            rep = [r.scale(inv) for r in rep]
        add(rem, rep)

    polys, reps = _interreduce(active, ring, config, track)
    stats.seconds = time.perf_counter() - t0
    return GroebnerBasis(ring, polys, stats, reps)


def _spoly(g1: _Elem, g2: _Elem, lcm, ring, track):
    q1 = _mono_div(lcm, g1.lm)
    q2 = _mono_div(lcm, g2.lm)
    terms: Dict[Monomial, GaussRational] = {}
    # lm terms cancel by construction
    for m, c in g1.tail:
        terms[_mono_mul(m, q1)] = c * g1.lc_inv
    for m, c in g2.tail:
        nm = _mono_mul(m, q2)
        v = terms.get(nm)
        d = c * g2.lc_inv
        if v is None:
            terms[nm] = -d
        else:
            v = v - d
            if v:
                terms[nm] = v
            else:
                del terms[nm]
    rep = None
    if track:
        rep = [
            a.mul_term(q1, g1.lc_inv) - b.mul_term(q2, g2.lc_inv)
            for a, b in zip(g1.rep, g2.rep)
        ]
    return terms, rep


def _apply_quotients(rep, quotients, ring):
    # rep - sum f * x^q * rep(e)
    acc: Dict[int, tuple] = {}
    out = list(rep)
    for e, q, f in quotients:
        for k, r in enumerate(e.rep):
            if r:
                out[k] = out[k] - r.mul_term(q, f)
    return out


def _interreduce(active: List[_Elem], ring: PolyRing, config, track):
    key = ring.key
    # minimal basis: no leading monomial divisible by another
    active = sorted(active, key=lambda e: key(e.lm))
    minimal: List[_Elem] = []
    for e in active:
        if not any(_mono_divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    polys = []
    reps = [] if track else None
    for i, e in enumerate(minimal):
        others = [o for j, o in enumerate(minimal) if j != i]
        terms = e.terms()
        q = [] if track else None
        # leading term is irreducible by minimality; only the tail moves
        rem = _reduce(terms, others, key, config, q)
        inv = rem[e.lm].inv()
        rem = {m: c * inv for m, c in rem.items()}
        polys.append(Poly(ring, rem))
        if track:
            rep = _apply_quotients(e.rep, q, ring)
            reps.append([r.scale(inv) for r in rep])
    return polys, reps


# -- public decisions -------------------------------------------------------------


@dataclass
class MembershipCertificate:
    member: bool
    remainder: Poly
    cofactors: Optional[List[Poly]] = None

    def __bool__(self):
        return self.member


class Ideal:
    """Generators plus a lazily computed, cached reduced Groebner basis."""

    def __init__(self, gens: Sequence[Poly], ring: PolyRing = None, config: GroebnerConfig = DEFAULT_CONFIG):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("an empty ideal needs an explicit ring")
            ring = gens[0].ring
        self.ring = ring
        self.gens = tuple(ring(g) for g in gens)
        self.config = config
        self._bases: Dict[str, GroebnerBasis] = {}

    def __repr__(self):
        return f"Ideal<{len(self.gens)} generators in {self.ring}>"

    def basis(self, order: str = None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._bases.get(order)
        if gb is None:
            gens = [g for g in self.gens if g] or [self.ring.zero()]
            if not any(gens):
                gb = GroebnerBasis(self.ring.with_order(order), [])
            else:
                gb = groebner_basis(gens, order, self.config)
            self._bases[order] = gb
        return gb

    def __add__(self, other):
        extra = other.gens if isinstance(other, Ideal) else list(other)
        return Ideal(list(self.gens) + [self.ring(g) for g in extra], self.ring, self.config)

    def contains(self, f, order: str = None) -> bool:
        return ideal_member(f, self, order).member

    __contains__ = contains

    def is_unit(self, order: str = None) -> bool:
        return self.basis(order).is_unit()


def normal_form(f: Poly, basis: GroebnerBasis) -> Poly:
    """Remainder of ``f`` on division by a Groebner basis (a canonical form)."""
    return basis.reduce(f)


def ideal_member(f, ideal: Ideal, order: str = None, cofactors: bool = False) -> MembershipCertificate:
    f = ideal.ring(f)
    if cofactors:
        gens = [g for g in ideal.gens]
        gb = groebner_basis(gens or [ideal.ring.zero()], order, ideal.config, track=True)
        quotients = []
        rem = gb.reduce(f, quotients)
        cof = None
        if not rem:
            ring = gb.ring
            cof = [ring.zero()] * len(gens)
            for e, q, c in quotients:
                rep = gb.reps[e.idx]
                for k, r in enumerate(rep):
                    if r:
                        cof[k] = cof[k] + r.mul_term(q, c)
            cof = [Poly(ideal.ring, p.terms) for p in cof]
        return MembershipCertificate(not rem, Poly(ideal.ring, rem.terms), cof)
    gb = ideal.basis(order)
    rem = gb.reduce(f)
    return MembershipCertificate(not rem, Poly(ideal.ring, rem.terms))


def ideal_equal(I: Ideal, J: Ideal, order: str = None) -> bool:
    """True iff every generator of each ideal lies in the other."""
    if I.ring.names != J.ring.names:
        raise RingMismatch("ideals live in different rings")
    return all(ideal_member(g, J, order).member for g in I.gens) and all(
        ideal_member(g, I, order).member for g in J.gens
    )


def radical_member(f, ideal: Ideal, order: str = None, aux: str = None) -> bool:
    """Rabinowitsch: f lies in rad(I) iff 1 lies in I + <1 - t*f>."""
    ring = ideal.ring
    f = ring(f)
    if not f:
        return True
    aux = aux or ring.fresh_name("t")
    big = ring.extend([aux])
    t = big.var(aux)
    # reuse the cached basis of I as generators: same ideal, less work
    base = ideal.basis(order)
    gens = [p.to_ring(big) for p in base.polys] + [big.one() - t * f.to_ring(big)]
    return groebner_basis(gens, order, ideal.config).is_unit()


def projective_empty(ideal: Ideal, coord_vars: Sequence[str], order: str = None) -> bool:
    """Whether the projective zero locus in ``coord_vars`` is empty.

    The locus is empty exactly when every coordinate lies in the radical.
    """
    ring = ideal.ring
    for g in ideal.gens:
        if g and not g.is_homogeneous(coord_vars):
            raise ValueError(f"generator {g} is not homogeneous in {list(coord_vars)}")
    return all(radical_member(ring.var(v), ideal, order) for v in coord_vars)
