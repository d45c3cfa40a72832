"""ADHM data, their monads, and the extra structure of autodual data.

A datum on P^n consists of blocks ``A_k, B_k`` (c x c), ``I_k`` (c x r) and
``J_k`` (r x c) for k = 0..n-2.  Blocks may hold scalars or polynomials in
symbolic parameters; every operation here goes through the same matrix code,
so numeric witnesses and symbolic shape arguments share one path.

Homogeneous coordinates are named ``x, y, z_0, ..., z_{n-2}``.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import ONE, ZERO, GaussRational, I as IMAG, as_scalar
from .matpoly import DimensionMismatch, Matrix, SingularMatrix, Subspace, null_space
from .polyring import Poly, PolyRing


class DatumError(ValueError):
    """Malformed datum: wrong block counts or shapes."""


class DualityViolation(ValueError):
    def __init__(self, failed: Sequence[str]):
        super().__init__("duality relations violated: " + ", ".join(failed))
        self.failed = list(failed)


class OddDimensionError(ValueError):
    """A nondegenerate skew form was requested on an odd-dimensional space."""


class GroupMembershipError(ValueError):
    pass


def coordinate_names(n: int) -> Tuple[str, ...]:
    if n < 2:
        raise DatumError("projective dimension must be at least 2")
    return ("x", "y") + tuple(f"z_{k}" for k in range(n - 1))


def monad_ring(n: int, params: Sequence[str] = (), order: str = "grevlex") -> PolyRing:
    coords = coordinate_names(n)
    clash = set(coords) & set(params)
    if clash:
        raise DatumError(f"parameter names clash with coordinates: {sorted(clash)}")
    return PolyRing(tuple(params) + coords, order)


def _entry_ring(mats) -> Optional[PolyRing]:
    for m in mats:
        r = m.ring()
        if r is not None:
            return r
    return None


@dataclass(frozen=True)
class AdhmDatum:
    n: int
    r: int
    c: int
    A: Tuple[Matrix, ...]
    B: Tuple[Matrix, ...]
    I: Tuple[Matrix, ...]
    J: Tuple[Matrix, ...]

    def __post_init__(self):
        n, r, c = self.n, self.r, self.c
        if n < 2 or r < 1 or c < 1:
            raise DatumError(f"need n >= 2, r >= 1, c >= 1 (got n={n}, r={r}, c={c})")
        for name, shape in (("A", (c, c)), ("B", (c, c)), ("I", (c, r)), ("J", (r, c))):
            blocks = tuple(getattr(self, name))
            object.__setattr__(self, name, blocks)
            if len(blocks) != n - 1:
                raise DatumError(f"{name} needs {n - 1} blocks, got {len(blocks)}")
            for k, m in enumerate(blocks):
                if m.shape != shape:
                    raise DatumError(f"{name}_{k} has shape {m.shape}, expected {shape}")

    @classmethod
    def zero(cls, n: int, r: int, c: int) -> "AdhmDatum":
        k = n - 1
        return cls(
            n, r, c,
            (Matrix.zeros(c, c),) * k,
            (Matrix.zeros(c, c),) * k,
            (Matrix.zeros(c, r),) * k,
            (Matrix.zeros(r, c),) * k,
        )

    @property
    def coords(self) -> Tuple[str, ...]:
        return coordinate_names(self.n)

    @property
    def param_ring(self) -> Optional[PolyRing]:
        return _entry_ring(self.A + self.B + self.I + self.J)

    @property
    def ring(self) -> PolyRing:
        """Ring holding the coordinates and any symbolic parameters."""
        base = self.param_ring
        coords = self.coords
        if base is None:
            return PolyRing(coords)
        missing = [v for v in coords if v not in base.index]
        return base.extend(missing) if missing else base

    def is_symbolic(self) -> bool:
        return self.param_ring is not None

    def blocks(self) -> List[Matrix]:
        return list(self.A + self.B + self.I + self.J)

    def combine(self, name: str, ring: PolyRing = None) -> Matrix:
        """The linear form sum_k X_k z_k for X in {A, B, I, J}."""
        ring = ring or self.ring
        mats = getattr(self, name)
        total = None
        for k, m in enumerate(mats):
            term = m.to_ring(ring) * ring.var(f"z_{k}")
            total = term if total is None else total + term
        return total

    def replace(self, **kw) -> "AdhmDatum":
        data = dict(n=self.n, r=self.r, c=self.c, A=self.A, B=self.B, I=self.I, J=self.J)
        data.update(kw)
        return AdhmDatum(**data)

    def specialize(self, assignment) -> "AdhmDatum":
        """Substitute scalar values for the symbolic parameters."""
        def sub(m: Matrix) -> Matrix:
            return m.map(lambda v: v.evaluate(assignment) if isinstance(v, Poly) else v)
        return self.replace(
            A=tuple(map(sub, self.A)), B=tuple(map(sub, self.B)),
            I=tuple(map(sub, self.I)), J=tuple(map(sub, self.J)),
        )


def mu(datum: AdhmDatum) -> Matrix:
    """[A, B] + IJ with A = sum A_k z_k, etc.; zero iff the ADHM equation holds."""
    ring = datum.ring
    A, B = datum.combine("A", ring), datum.combine("B", ring)
    I, J = datum.combine("I", ring), datum.combine("J", ring)
    return A * B - B * A + I * J


def mu_coefficients(datum: AdhmDatum) -> Dict[Tuple[int, int], Matrix]:
    """Coefficient matrix of each z_i z_j (i <= j) in mu."""
    A, B, I, J = datum.A, datum.B, datum.I, datum.J
    out = {}
    m = datum.n - 1
    for i in range(m):
        for j in range(i, m):
            if i == j:
                coef = A[i] * B[i] - B[i] * A[i] + I[i] * J[i]
            else:
                coef = (
                    A[i] * B[j] - B[j] * A[i] + A[j] * B[i] - B[i] * A[j]
                    + I[i] * J[j] + I[j] * J[i]
                )
            out[(i, j)] = coef
    return out


def satisfies_adhm(datum: AdhmDatum) -> bool:
    return all(m.is_zero() for m in mu_coefficients(datum).values())


@dataclass(frozen=True)
class Monad:
    alpha: Matrix
    beta: Matrix
    coords: Tuple[str, ...]

    def composition(self) -> Matrix:
        return self.beta * self.alpha

    def is_complex(self) -> bool:
        return self.composition().is_zero()

    def entries_linear(self) -> bool:
        for m in (self.alpha, self.beta):
            for row in m:
                for v in row:
                    if isinstance(v, Poly):
                        if v and (not v.is_homogeneous(self.coords) or v.degree_in(self.coords) != 1):
                            return False
                    elif v:
                        return False
        return True


def build_monad(datum: AdhmDatum) -> Monad:
    """alpha = (A + x; B + y; J), beta = (-B - y, A + x, I)."""
    ring = datum.ring
    c = datum.c
    x, y = ring.var("x"), ring.var("y")
    ident = Matrix.identity(c, ring)
    A, B = datum.combine("A", ring), datum.combine("B", ring)
    I, J = datum.combine("I", ring), datum.combine("J", ring)
    ax = A + ident * x
    by = B + ident * y
    alpha = Matrix.block([[ax], [by], [J]])
    beta = Matrix.block([[-by, ax, I]])
    return Monad(alpha, beta, datum.coords)


def dual_monad(m: Monad) -> Monad:
    return Monad(m.beta.T, m.alpha.T, m.coords)


# -- extended (autodual) data -------------------------------------------------------


class StructureKind(enum.Enum):
    AUTODUAL = "autodual"
    SYMPLECTIC = "symplectic"
    ORTHOGONAL = "orthogonal"

    @property
    def is_autodual(self) -> bool:
        return True


@dataclass(frozen=True)
class ExtendedDatum:
    datum: AdhmDatum
    G: Matrix
    H: Matrix

    def __post_init__(self):
        d = self.datum
        if self.G.shape != (d.c, d.c) or self.H.shape != (d.r, d.r):
            raise DatumError("G must be c x c and H must be r x r")
        if not (self.G.is_scalar() and self.H.is_scalar()):
            raise DatumError("G and H must be scalar matrices")
        if not self.G.det():
            raise SingularMatrix("G is not invertible")
        if not self.H.det():
            raise SingularMatrix("H is not invertible")


RESIDUAL_NAMES = ("GA - A^vee G", "GB - B^vee G", "HJ + I^vee G", "GI - J^vee H")


def duality_residuals(ext: ExtendedDatum) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
    d = ext.datum
    ring = d.ring
    G, H = ext.G.to_ring(ring), ext.H.to_ring(ring)
    A, B = d.combine("A", ring), d.combine("B", ring)
    I, J = d.combine("I", ring), d.combine("J", ring)
    return (
        G * A - A.T * G,
        G * B - B.T * G,
        H * J + I.T * G,
        G * I - J.T * H,
    )


def failed_relations(ext: ExtendedDatum) -> List[str]:
    return [name for name, res in zip(RESIDUAL_NAMES, duality_residuals(ext)) if not res.is_zero()]


def derive_J(I: Sequence[Matrix], G: Matrix, H: Matrix) -> Tuple[Matrix, ...]:
    """J_k = -H^{-1} I_k^vee G, the unique J with HJ + I^vee G = 0."""
    Hinv = H.inverse()
    return tuple(-(Hinv * Ik.T * G) for Ik in I)


def derive_I(J: Sequence[Matrix], G: Matrix, H: Matrix) -> Tuple[Matrix, ...]:
    """I_k = G^{-1} J_k^vee H, the unique I with GI = J^vee H."""
    Ginv = G.inverse()
    return tuple(Ginv * Jk.T * H for Jk in J)


def with_derived_J(ext: ExtendedDatum) -> ExtendedDatum:
    d = ext.datum
    return ExtendedDatum(d.replace(J=derive_J(d.I, ext.G, ext.H)), ext.G, ext.H)


def autodual_compatibility(ext: ExtendedDatum) -> bool:
    """G I H^{-1} + G^vee I (H^vee)^{-1} = 0 for every I_k."""
    G, H = ext.G, ext.H
    Hinv, HTinv = H.inverse(), H.T.inverse()
    return all((G * Ik * Hinv + G.T * Ik * HTinv).is_zero() for Ik in ext.datum.I)


def classify_structure(ext: ExtendedDatum) -> StructureKind:
    failed = failed_relations(ext)
    if failed:
        raise DualityViolation(failed)
    G, H = ext.G, ext.H
    if G.is_symmetric() and H.is_antisymmetric():
        return StructureKind.SYMPLECTIC
    if G.is_antisymmetric() and H.is_symmetric():
        return StructureKind.ORTHOGONAL
    return StructureKind.AUTODUAL


def build_F(ext: ExtendedDatum) -> Matrix:
    """F = [[0, G, 0], [-G, 0, 0], [0, 0, H]] on V + V + W."""
    c, r = ext.datum.c, ext.datum.r
    G, H = ext.G, ext.H
    Zcc, Zcr, Zrc = Matrix.zeros(c, c), Matrix.zeros(c, r), Matrix.zeros(r, c)
    return Matrix.block([[Zcc, G, Zcr], [-G, Zcc, Zcr], [Zrc, Zrc, H]])


def f_diagram_residuals(ext: ExtendedDatum) -> Tuple[Matrix, Matrix]:
    """(F alpha + beta^vee G, G beta - alpha^vee F); both vanish for autodual data."""
    m = build_monad(ext.datum)
    ring = ext.datum.ring
    F = build_F(ext).to_ring(ring)
    G = ext.G.to_ring(ring)
    return (F * m.alpha + m.beta.T * G, G * m.beta - m.alpha.T * F)


# -- group actions -------------------------------------------------------------------


def gl_action(g: Matrix, ext: ExtendedDatum) -> ExtendedDatum:
    """g.(A, B, I, J, G, H) = (gAg^-1, gBg^-1, gI, Jg^-1, (g^vee)^-1 G g^-1, H)."""
    ginv = g.inverse()
    d = ext.datum
    new = d.replace(
        A=tuple(g * a * ginv for a in d.A),
        B=tuple(g * b * ginv for b in d.B),
        I=tuple(g * i for i in d.I),
        J=tuple(j * ginv for j in d.J),
    )
    return ExtendedDatum(new, ginv.T * ext.G * ginv, ext.H)


def gl_action_datum(g: Matrix, d: AdhmDatum) -> AdhmDatum:
    ginv = g.inverse()
    return d.replace(
        A=tuple(g * a * ginv for a in d.A),
        B=tuple(g * b * ginv for b in d.B),
        I=tuple(g * i for i in d.I),
        J=tuple(j * ginv for j in d.J),
    )


def preserves_form(h: Matrix, H: Matrix) -> bool:
    return h.T * H * h == H


def frame_action(h: Matrix, I: Sequence[Matrix], H: Matrix, group: str = None):
    """h.(I, H) = (I h^-1, (h^vee)^-1 H h^-1).

    ``group`` may be ``"sp"`` or ``"o"``; then h must preserve H, which must be
    antisymmetric or symmetric respectively.
    """
    if group is not None:
        if group not in ("sp", "o"):
            raise ValueError(f"unknown group {group!r}")
        if group == "sp" and not H.is_antisymmetric():
            raise GroupMembershipError("Sp(W) needs an antisymmetric H")
        if group == "o" and not H.is_symmetric():
            raise GroupMembershipError("O(W) needs a symmetric H")
        if not preserves_form(h, H):
            raise GroupMembershipError(f"h does not preserve H (group {group})")
    hinv = h.inverse()
    return tuple(i * hinv for i in I), hinv.T * H * hinv


# -- canonical forms ----------------------------------------------------------------------


def _bilinear(G: Matrix, u, v) -> GaussRational:
    total = ZERO
    for i, ui in enumerate(u):
        if ui:
            row = G.entries[i]
            for j, vj in enumerate(v):
                if vj and row[j]:
                    total = total + ui * row[j] * vj
    return total


def skew_to_standard(G: Matrix) -> Matrix:
    """Return g with (g^vee)^{-1} G g^{-1} = Omega for an invertible skew G.

    Symplectic Gram-Schmidt: build a basis e_1..e_m, f_1..f_m with
    G(e_i, f_j) = delta_ij and all other pairings zero; its basis matrix P
    satisfies P^T G P = Omega and g = P^{-1}.
    """
    c = G.rows
    if G.shape != (c, c) or not G.is_antisymmetric():
        raise ValueError("G must be square and antisymmetric")
    if c % 2:
        raise OddDimensionError(f"no invertible antisymmetric form in odd dimension {c}")
    if not G.det():
        raise SingularMatrix("G is singular")
    pool = [list(r) for r in Matrix.identity(c).entries]
    es, fs = [], []
    while pool:
        e = pool.pop(0)
        k = next((k for k, v in enumerate(pool) if _bilinear(G, e, v)), None)
        if k is None:
            raise SingularMatrix("degenerate skew form")
        f = pool.pop(k)
        s = _bilinear(G, e, f).inv()
        f = [s * v for v in f]
        es.append(e)
        fs.append(f)
        # project the rest onto the G-orthogonal complement of span(e, f)
        new_pool = []
        for v in pool:
            a = _bilinear(G, v, f)
            b = _bilinear(G, e, v)
            w = [vi - a * ei - b * fi for vi, ei, fi in zip(v, e, f)]
            new_pool.append(w)
        pool = [w for w in new_pool if any(w)]
        # re-span to drop dependencies introduced by projection
        pool = [list(v) for v in Subspace.span(c, pool).basis] if pool else []
    P = Matrix([list(col) for col in es + fs], c).T
    g = P.inverse()
    if not (g.inverse().T * G * g.inverse() == Matrix.omega(c)):
        raise ArithmeticError("standard form verification failed")
    return g


def symmetric_to_diagonal(H: Matrix) -> Matrix:
    """Return h with (h^vee)^{-1} H h^{-1} diagonal (congruence diagonalisation).

    Diagonal entries are only determined up to nonzero squares.
    """
    r = H.rows
    if H.shape != (r, r) or not H.is_symmetric():
        raise ValueError("H must be square and symmetric")
    if not H.det():
        raise SingularMatrix("H is singular")
    basis = [list(v) for v in Matrix.identity(r).entries]
    chosen = []
    rest = basis
    while rest:
        k = next((k for k, v in enumerate(rest) if _bilinear(H, v, v)), None)
        if k is None:
            # every remaining vector is isotropic: combine a non-orthogonal pair
            pair = next(
                ((i, j) for i in range(len(rest)) for j in range(i + 1, len(rest))
                 if _bilinear(H, rest[i], rest[j])),
                None,
            )
            if pair is None:
                raise SingularMatrix("degenerate symmetric form")
            i, j = pair
            rest[i] = [a + b for a, b in zip(rest[i], rest[j])]
            k = i
        v = rest.pop(k)
        q = _bilinear(H, v, v)
        chosen.append(v)
        rest = [[wi - (_bilinear(H, w, v) / q) * vi for wi, vi in zip(w, v)] for w in rest]
    P = Matrix(chosen, r).T
    h = P.inverse()
    D = P.T * H * P
    if any(D[i, j] for i in range(r) for j in range(r) if i != j):
        raise ArithmeticError("diagonalisation verification failed")
    return h


# -- random generation --------------------------------------------------------------------


def _rand_scalar(rng: random.Random, bound: int = 3, gaussian: bool = False) -> GaussRational:
    re = rng.randint(-bound, bound)
    im = rng.randint(-bound, bound) if gaussian and rng.random() < 0.3 else 0
    return GaussRational(re, im)


def random_matrix(rows: int, cols: int, rng: random.Random, bound: int = 3, gaussian: bool = False) -> Matrix:
    return Matrix([[_rand_scalar(rng, bound, gaussian) for _ in range(cols)] for _ in range(rows)], cols)


def random_invertible(n: int, rng: random.Random, bound: int = 3) -> Matrix:
    while True:
        m = random_matrix(n, n, rng, bound)
        if m.det():
            return m


def random_datum(n: int, r: int, c: int, rng: random.Random, bound: int = 2, gaussian: bool = False) -> AdhmDatum:
    k = n - 1
    return AdhmDatum(
        n, r, c,
        tuple(random_matrix(c, c, rng, bound, gaussian) for _ in range(k)),
        tuple(random_matrix(c, c, rng, bound, gaussian) for _ in range(k)),
        tuple(random_matrix(c, r, rng, bound, gaussian) for _ in range(k)),
        tuple(random_matrix(r, c, rng, bound, gaussian) for _ in range(k)),
    )


def _random_symmetric(c, rng, bound):
    rows = [[ZERO] * c for _ in range(c)]
    for i in range(c):
        for j in range(i, c):
            v = _rand_scalar(rng, bound)
            rows[i][j] = rows[j][i] = v
    return Matrix(rows, c)


def _random_antisymmetric(c, rng, bound):
    rows = [[ZERO] * c for _ in range(c)]
    for i in range(c):
        for j in range(i + 1, c):
            v = _rand_scalar(rng, bound)
            rows[i][j], rows[j][i] = v, -v
    return Matrix(rows, c)


def random_antisymmetric_invertible(c: int, rng: random.Random, bound: int = 3) -> Matrix:
    if c % 2:
        raise OddDimensionError("odd dimension")
    while True:
        m = _random_antisymmetric(c, rng, bound)
        if m.det():
            return m


def generate_constrained(kind: StructureKind, n: int, r: int, c: int, seed: int, bound: int = 2) -> ExtendedDatum:
    """Random extended datum satisfying the duality relations by construction.

    A_k = G^{-1} S_k with S_k symmetric (symplectic) or antisymmetric
    (orthogonal) makes GA = A^vee G exact; J is derived from I.  Neither the
    ADHM equation nor regularity is arranged.
    """
    kind = StructureKind(kind)
    rng = random.Random(seed)
    if kind is StructureKind.SYMPLECTIC:
        if r % 2:
            raise OddDimensionError("symplectic data need even rank r")
        G, H = Matrix.identity(c), Matrix.omega(r)
        make = _random_symmetric
    elif kind is StructureKind.ORTHOGONAL:
        if c % 2:
            raise OddDimensionError("orthogonal data need even charge c")
        G, H = Matrix.omega(c), Matrix.identity(r)
        make = _random_antisymmetric
    else:
        raise ValueError("generate_constrained supports symplectic and orthogonal only")
    Ginv = G.inverse()
    k = n - 1
    A = tuple(Ginv * make(c, rng, bound) for _ in range(k))
    B = tuple(Ginv * make(c, rng, bound) for _ in range(k))
    I = tuple(random_matrix(c, r, rng, bound) for _ in range(k))
    J = derive_J(I, G, H)
    return ExtendedDatum(AdhmDatum(n, r, c, A, B, I, J), G, H)


# -- file format ------------------------------------------------------------------------------


class DatumFormatError(ValueError):
    pass


def _parse_matrix(obj, ring: PolyRing = None) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise DatumFormatError(f"matrix must be a non-empty list of rows, got {obj!r}")
    try:
        return Matrix.parse([[str(v) for v in row] for row in obj], ring)
    except (ValueError, KeyError) as exc:
        raise DatumFormatError(str(exc)) from exc


def datum_from_dict(doc: dict):
    """Parse the JSON datum document; returns an ExtendedDatum or AdhmDatum."""
    try:
        n, r, c = int(doc["n"]), int(doc["r"]), int(doc["c"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DatumFormatError(f"missing or invalid n/r/c: {exc}") from exc
    ring = None
    if doc.get("vars"):
        try:
            ring = PolyRing(list(doc["vars"]))
        except ValueError as exc:
            raise DatumFormatError(str(exc)) from exc

    def blocks(name):
        obj = doc.get(name)
        if not isinstance(obj, list):
            raise DatumFormatError(f"{name} must be a list of matrices")
        return tuple(_parse_matrix(m, ring) for m in obj)

    G = _parse_matrix(doc["G"]) if "G" in doc else None
    H = _parse_matrix(doc["H"]) if "H" in doc else None
    A, B, I = blocks("A"), blocks("B"), blocks("I")
    if doc.get("J") == "derive":
        if G is None or H is None:
            raise DatumFormatError('"J": "derive" needs both G and H')
        J = derive_J(I, G, H)
    else:
        J = blocks("J")
    try:
        datum = AdhmDatum(n, r, c, A, B, I, J)
        if G is None and H is None:
            return datum
        if G is None or H is None:
            raise DatumFormatError("give both G and H, or neither")
        return ExtendedDatum(datum, G, H)
    except (DatumError, SingularMatrix, DimensionMismatch) as exc:
        raise DatumFormatError(str(exc)) from exc


def load_datum(path):
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DatumFormatError(f"{path}: {exc}") from exc
    return datum_from_dict(doc)


def _matrix_doc(m: Matrix):
    return [[str(v) for v in row] for row in m]


def datum_to_dict(obj) -> dict:
    ext = obj if isinstance(obj, ExtendedDatum) else None
    d = ext.datum if ext else obj
    doc = {
        "n": d.n, "r": d.r, "c": d.c,
        "A": [_matrix_doc(m) for m in d.A],
        "B": [_matrix_doc(m) for m in d.B],
        "I": [_matrix_doc(m) for m in d.I],
        "J": [_matrix_doc(m) for m in d.J],
    }
    if d.is_symbolic():
        doc["vars"] = list(d.param_ring.names)
    if ext:
        doc["G"] = _matrix_doc(ext.G)
        doc["H"] = _matrix_doc(ext.H)
    return doc


def dump_datum(obj, path) -> None:
    Path(path).write_text(json.dumps(datum_to_dict(obj), indent=2) + "\n")
