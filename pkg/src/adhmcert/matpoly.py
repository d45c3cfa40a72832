"""Matrices over Q(i) or over a polynomial ring, and exact linear algebra.

One :class:`Matrix` type serves both cases; entries are either
:class:`GaussRational` scalars or :class:`Poly` objects and arithmetic goes
through the entries' operators.  Field operations (rank, kernels, inverses)
need scalar entries; determinants and minors work for both.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from .exactnum import ONE, ZERO, GaussRational, as_scalar
from .polyring import Poly, PolyRing


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def _is_zero(v) -> bool:
    return not v


def _conv(v):
    return v if isinstance(v, Poly) else as_scalar(v)


class Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: Sequence[Sequence], ncols: int = None):
        rows = [tuple(_conv(v) for v in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("empty matrix needs an explicit column count")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
        self.rows = len(rows)
        self.cols = ncols
        self.entries = tuple(rows)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: PolyRing = None) -> "Matrix":
        z = ring.zero() if ring is not None else ZERO
        return cls([[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int, ring: PolyRing = None) -> "Matrix":
        z = ring.zero() if ring is not None else ZERO
        o = ring.one() if ring is not None else ONE
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def omega(cls, n: int) -> "Matrix":
        """Standard skew form [[0, Id], [-Id, 0]] of even size n."""
        if n % 2:
            raise ValueError("the standard skew form needs even size")
        h = n // 2
        rows = [[ZERO] * n for _ in range(n)]
        for k in range(h):
            rows[k][h + k] = ONE
            rows[h + k][k] = -ONE
        return cls(rows, n)

    @classmethod
    def diag(cls, values) -> "Matrix":
        values = [_conv(v) for v in values]
        n = len(values)
        zero = values[0] - values[0]
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def parse(cls, rows, ring: PolyRing = None) -> "Matrix":
        """Build from nested lists of literals (strings parsed by ``ring``)."""
        conv = (lambda v: ring(v)) if ring is not None else as_scalar
        rows = [[conv(v) for v in r] for r in rows]
        return cls(rows, len(rows[0]) if rows else 0)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        out = []
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise DimensionMismatch("block row heights differ")
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.entries[i])
                out.append(row)
        return cls(out, len(out[0]) if out else sum(b.cols for b in blocks[0]))

    # -- basic protocol ------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Matrix({[[str(v) for v in r] for r in self.entries]})"

    def __str__(self):
        cells = [[str(v) for v in r] for r in self.entries]
        if not cells:
            return "[]"
        widths = [max(len(r[j]) for r in cells) for j in range(self.cols)]
        return "\n".join("[" + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + "]" for r in cells)

    def is_zero(self) -> bool:
        return all(_is_zero(v) for r in self.entries for v in r)

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(v) for v in r] for r in self.entries], self.cols)

    def ring(self) -> Optional[PolyRing]:
        for r in self.entries:
            for v in r:
                if isinstance(v, Poly):
                    return v.ring
        return None

    def is_scalar(self) -> bool:
        return self.ring() is None

    # -- algebra -----------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.cols,
        )

    def __neg__(self):
        return self.map(lambda v: -v)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.cols,
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        if isinstance(other, Poly) or as_scalar(other, strict=False) is not None:
            return self.map(lambda v: v * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Poly) or as_scalar(other, strict=False) is not None:
            return self.map(lambda v: other * v)
        return NotImplemented

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} x {other.shape}")
        cols = other.column
        out = []
        ocols = [cols(j) for j in range(other.cols)]
        for r in self.entries:
            row = []
            for c in ocols:
                acc = None
                for a, b in zip(r, c):
                    if a and b:
                        p = a * b
                        acc = p if acc is None else acc + p
                if acc is None:
                    acc = _zero_like(r, c)
                row.append(acc)
            out.append(row)
        return Matrix(out, other.cols)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)], self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.T

    def is_antisymmetric(self) -> bool:
        return self.rows == self.cols and self == -self.T

    def to_ring(self, ring: PolyRing) -> "Matrix":
        return self.map(lambda v: ring(v))

    # -- evaluation ---------------------------------------------------------------

    def evaluate(self, assignment) -> "Matrix":
        """Entry-wise evaluation at a full scalar assignment."""
        return self.map(lambda v: v.evaluate(assignment) if isinstance(v, Poly) else v)

    def subs(self, mapping) -> "Matrix":
        return self.map(lambda v: v.subs(mapping) if isinstance(v, Poly) else v)

    # -- scalar linear algebra ---------------------------------------------------

    def rank(self) -> int:
        if self.is_scalar():
            return len(_rref(self)[1])
        return _poly_rank(self)

    def det(self):
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        if self.is_scalar():
            return bareiss_det(self)
        return cofactor_det(self)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        _require_scalar(self)
        n = self.rows
        aug = Matrix([list(r) + list(e) for r, e in zip(self.entries, Matrix.identity(n).entries)], 2 * n)
        red, pivots = _rref(aug)
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix([r[n:] for r in red[:n]], n)

    def null_space(self) -> "Subspace":
        return null_space(self)


def _zero_like(r, c):
    for v in list(r) + list(c):
        if isinstance(v, Poly):
            return v.ring.zero()
    return ZERO


def _require_scalar(m: Matrix):
    if not m.is_scalar():
        raise TypeError("operation needs a scalar matrix")


def _rref(m: Matrix):
    """Reduced row echelon form over Q(i); returns (rows, pivot columns)."""
    rows = [list(r) for r in m.entries]
    pivots = []
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    return m.rank()


def _exact_div(a, b):
    if isinstance(a, Poly) or isinstance(b, Poly):
        if not isinstance(a, Poly):
            a = b.ring.const(a)
        if not isinstance(b, Poly):
            return a.scale(as_scalar(b).inv())
        return a.exact_div(b)
    return a / b


def bareiss_det(m: Matrix, pivots_out: list = None):
    """Fraction-free (Bareiss) determinant; works for scalar and polynomial entries.

    The last pivot equals the determinant.  ``pivots_out`` collects the
    successive leading principal minors of the (row-permuted) matrix.
    """
    n = m.rows
    if n != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return ONE
    a = [list(r) for r in m.entries]
    zero = a[0][0] - a[0][0]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        if pivots_out is not None:
            pivots_out.append(a[k][k])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = zero
        prev = a[k][k]
    if pivots_out is not None:
        pivots_out.append(a[n - 1][n - 1])
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def cofactor_det(m: Matrix):
    """Laplace expansion memoised on column subsets (no divisions)."""
    n = m.rows
    if n != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return ONE
    rows = m.entries
    zero = rows[0][0] - rows[0][0]
    # level k: determinants of rows[n-k:] restricted to each k-subset of columns
    level = {(): None}
    for k in range(1, n + 1):
        r = rows[n - k]
        nxt = {}
        for cols in combinations(range(n), k):
            acc = zero
            for pos, c in enumerate(cols):
                v = r[c]
                if not v:
                    continue
                rest = cols[:pos] + cols[pos + 1 :]
                sub = level[rest]
                term = v if sub is None else v * sub
                if not term:
                    continue
                acc = acc + term if pos % 2 == 0 else acc - term
            nxt[cols] = acc
        level = nxt
    return level[tuple(range(n))]


def _poly_rank(m: Matrix) -> int:
    """Generic rank over the fraction field, by fraction-free elimination."""
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    prev = None
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                v = a[i][j] * a[r][c] - a[i][c] * a[r][j]
                a[i][j] = v if prev is None else _exact_div(v, prev)
            a[i][c] = a[i][c] - a[i][c]
        prev = a[r][c]
        r += 1
        if r == nr:
            break
    return r


def iter_minors(m: Matrix, k: int) -> Iterator:
    """Stream all k x k minors, row subsets outermost."""
    if not 1 <= k <= min(m.rows, m.cols):
        raise ValueError(f"minor size {k} out of range for a {m.rows}x{m.cols} matrix")
    for rows in combinations(range(m.rows), k):
        for cols in combinations(range(m.cols), k):
            sub = m.submatrix(rows, cols)
            yield sub.entries[0][0] if k == 1 else cofactor_det(sub)


def minors(m: Matrix, k: int) -> list:
    return list(iter_minors(m, k))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a * b - b * a


# -- subspaces ------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q(i)^n stored by its reduced row echelon basis."""

    ambient: int
    basis: Tuple[Tuple[GaussRational, ...], ...]

    @classmethod
    def span(cls, ambient: int, vectors) -> "Subspace":
        vecs = [tuple(as_scalar(v) for v in vec) for vec in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionMismatch("vector length differs from ambient dimension")
        if not vecs:
            return cls(ambient, ())
        red, piv = _rref(Matrix(vecs, ambient))
        return cls(ambient, tuple(tuple(r) for r in red[: len(piv)]))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(n, Matrix.identity(n).entries)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def column_space(cls, m: Matrix) -> "Subspace":
        return cls.span(m.rows, m.T.entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def contains(self, v) -> bool:
        return Subspace.span(self.ambient, list(self.basis) + [tuple(v)]).dim == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def annihilator(self) -> Matrix:
        """Rows spanning the linear forms that vanish on this subspace."""
        if self.dim == 0:
            return Matrix.identity(self.ambient)
        ker = null_space(Matrix(self.basis, self.ambient))
        return Matrix(ker.basis, self.ambient) if ker.dim else Matrix([], self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        rows = list(self.annihilator().entries) + list(other.annihilator().entries)
        if not rows:
            return Subspace.full(self.ambient)
        return null_space(Matrix(rows, self.ambient))

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span(m.rows, [_apply(m, v) for v in self.basis])

    def preimage(self, m: Matrix) -> "Subspace":
        ann = self.annihilator()
        if ann.rows == 0:
            return Subspace.full(m.cols)
        return null_space(ann * m)


def _apply(m: Matrix, v):
    return tuple(sum((a * b for a, b in zip(r, v)), ZERO) for r in m.entries)


def null_space(m: Matrix) -> Subspace:
    _require_scalar(m)
    red, piv = _rref(m)
    free = [c for c in range(m.cols) if c not in piv]
    vecs = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, pc in enumerate(piv):
            v[pc] = -red[r][f]
        vecs.append(v)
    return Subspace.span(m.cols, vecs)


@dataclass
class LinearSolution:
    consistent: bool
    particular: Optional[Tuple[GaussRational, ...]]
    homogeneous: Subspace


def solve_linear(a: Matrix, b) -> LinearSolution:
    """Solve a x = b exactly: one solution plus the kernel, or inconsistency."""
    _require_scalar(a)
    b = [as_scalar(v) for v in b]
    if len(b) != a.rows:
        raise DimensionMismatch("right-hand side length differs from row count")
    aug = Matrix([list(r) + [bv] for r, bv in zip(a.entries, b)], a.cols + 1)
    red, piv = _rref(aug)
    kernel = null_space(a)
    if a.cols in piv:
        return LinearSolution(False, None, kernel)
    x = [ZERO] * a.cols
    for r, pc in enumerate(piv):
        x[pc] = red[r][a.cols]
    return LinearSolution(True, tuple(x), kernel)


def invariant_closure(mats: Sequence[Matrix], seed: Subspace) -> Subspace:
    """Smallest subspace containing ``seed`` and mapped into itself by every matrix."""
    for m in mats:
        if m.shape != (seed.ambient, seed.ambient):
            raise DimensionMismatch("matrices must act on the ambient space")
    current = seed
    while True:
        vecs = list(current.basis)
        for m in mats:
            vecs.extend(_apply(m, v) for v in current.basis)
        nxt = Subspace.span(seed.ambient, vecs)
        if nxt.dim == current.dim:
            return current
        current = nxt


def invariant_core(mats: Sequence[Matrix], constraint: Subspace) -> Subspace:
    """Largest subspace inside ``constraint`` mapped into itself by every matrix."""
    for m in mats:
        if m.shape != (constraint.ambient, constraint.ambient):
            raise DimensionMismatch("matrices must act on the ambient space")
    current = constraint
    while True:
        nxt = current
        for m in mats:
            nxt = nxt.intersect(current.preimage(m))
        if nxt.dim == current.dim:
            return current
        current = nxt


def normalize_point(point) -> Tuple[GaussRational, ...]:
    """Scale a projective point so its first nonzero coordinate is 1."""
    pt = tuple(as_scalar(v) for v in point)
    lead = next((v for v in pt if v), None)
    if lead is None:
        raise ValueError("projective point with all coordinates zero")
    inv = lead.inv()
    return tuple(v * inv for v in pt)


def evaluate_matrix(m: Matrix, point, coords: Sequence[str]) -> Matrix:
    """Evaluate a polynomial matrix at a projective point given in ``coords`` order.

    Scalar points are normalised first.  Every variable occurring in the
    matrix must be a coordinate; specialise other parameters beforehand.
    """
    if len(point) != len(coords):
        raise DimensionMismatch("point length differs from the coordinate count")
    if all(not isinstance(v, Poly) for v in point):
        pt = normalize_point(point)
        return m.evaluate(dict(zip(coords, pt)))
    ring = m.ring()
    if ring is not None and all(not isinstance(v, Poly) or v.ring == ring for v in point):
        return m.subs(dict(zip(coords, point)))
    return m.evaluate(dict(zip(coords, point)))
