"""Multivariate polynomials over Q(i) with named variables.

Monomials are dense exponent tuples.  Each ring maps a monomial to an integer
sort key so that integer comparison coincides with the active monomial order;
this keeps leading-term searches and heaps cheap during Groebner computations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .exactnum import ONE, ZERO, GaussRational, as_scalar

Monomial = Tuple[int, ...]

ORDERS = ("grevlex", "lex")
_EXP_BITS = 24
_EXP_MAX = (1 << _EXP_BITS) - 1


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(PolySyntaxError):
    pass


class RingMismatch(ValueError):
    pass


class PolyRing:
    """A polynomial ring Q(i)[vars] with a fixed monomial order."""

    def __init__(self, names: Iterable[str], order: str = "grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _IDENT_RE.fullmatch(name) or name == "i":
                raise ValueError(f"invalid variable name {name!r}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.names = names
        self.order = order
        self.nvars = len(names)
        self.index = {name: k for k, name in enumerate(names)}
        self._keys: Dict[Monomial, int] = {}
        self.one_mono: Monomial = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, order={self.order!r})"

    def __reduce__(self):
        return (PolyRing, (self.names, self.order))

    # -- order -------------------------------------------------------------

    def key(self, m: Monomial) -> int:
        k = self._keys.get(m)
        if k is None:
            k = self._make_key(m)
            self._keys[m] = k
        return k

    def _make_key(self, m: Monomial) -> int:
        if any(e > _EXP_MAX for e in m):
            raise OverflowError("exponent too large for the order key")
        k = 0
        if self.order == "grevlex":
            k = sum(m)
            for e in reversed(m):
                k = (k << _EXP_BITS) | (_EXP_MAX - e)
        else:
            for e in m:
                k = (k << _EXP_BITS) | e
        return k

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    # -- constructors ------------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.one_mono: ONE})

    def const(self, c) -> "Poly":
        c = as_scalar(c)
        return Poly(self, {self.one_mono: c} if c else {})

    def var(self, name: str) -> "Poly":
        try:
            k = self.index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None
        exps = [0] * self.nvars
        exps[k] = 1
        return Poly(self, {tuple(exps): ONE})

    def gens(self):
        return [self.var(n) for n in self.names]

    def monomial(self, exps: Sequence[int], coeff=ONE) -> "Poly":
        coeff = as_scalar(coeff)
        return Poly(self, {tuple(exps): coeff} if coeff else {})

    def __call__(self, value) -> "Poly":
        """Coerce a scalar, a string, or a polynomial into this ring."""
        if isinstance(value, Poly):
            return value if value.ring == self else value.to_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def parse(self, text: str) -> "Poly":
        return _Parser(text, self).parse()

    def extend(self, names: Iterable[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(names), self.order)

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.names, order)

    def fresh_name(self, base: str = "t") -> str:
        name, k = base, 0
        while name in self.index:
            k += 1
            name = f"{base}{k}"
        return name


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple([a + b for a, b in zip(m1, m2)])


def _mono_divides(m1: Monomial, m2: Monomial) -> bool:
    for a, b in zip(m1, m2):
        if a > b:
            return False
    return True


def _mono_div(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple([a - b for a, b in zip(m1, m2)])


def _mono_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple([a if a > b else b for a, b in zip(m1, m2)])


Scalarish = Union[int, Fraction, GaussRational]


class Poly:
    """Immutable polynomial: a map from exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_lm", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, GaussRational]):
        self.ring = ring
        self.terms = terms  # trusted: no zero coefficients
        self._lm = None
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Mapping[Monomial, Scalarish]) -> "Poly":
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != ring.nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m}")
            c = as_scalar(c)
            if c:
                clean[m] = c
        return cls(ring, clean)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one_mono in self.terms)

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.ring.one_mono, ZERO)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.ring.index[n] for n in names]
        if not self.terms:
            return -1
        return max(sum(m[k] for k in idx) for m in self.terms)

    def is_homogeneous(self, names: Iterable[str] = None) -> bool:
        idx = range(self.ring.nvars) if names is None else [self.ring.index[n] for n in names]
        degs = {sum(m[k] for k in idx) for m in self.terms}
        return len(degs) <= 1

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(k for k, e in enumerate(m) if e)
        return tuple(self.ring.names[k] for k in sorted(used))

    def leading_monomial(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def leading_coeff(self) -> GaussRational:
        return self.terms[self.leading_monomial()]

    def leading_term(self) -> "Poly":
        m = self.leading_monomial()
        return Poly(self.ring, {m: self.terms[m]})

    def sorted_terms(self):
        """Terms in descending order under the ring's monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coeff(self, mono: Sequence[int]) -> GaussRational:
        return self.terms.get(tuple(mono), ZERO)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        c = as_scalar(other, strict=False)
        if c is None:
            return None
        return self.ring.const(c)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        if not c:
            return self.ring.zero()
        if c.is_one():
            return self
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: GaussRational) -> "Poly":
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {_mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_scalar(other, strict=False)
            if c is None:
                return NotImplemented
            return self.scale(c)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        terms: Dict[Monomial, GaussRational] = {}
        get = terms.get
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                prev = get(m)
                terms[m] = c1 * c2 if prev is None else prev + c1 * c2
        return Poly(self.ring, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        c = as_scalar(other, strict=False)
        if c is None:
            return NotImplemented
        return self.scale(c.inv())

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.leading_coeff().inv())

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if ``other`` does not divide."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_monomial(), other.leading_coeff()
        inv = lc.inv()
        rest = self
        q: Dict[Monomial, GaussRational] = {}
        while rest.terms:
            m = rest.leading_monomial()
            if not _mono_divides(lm, m):
                raise ArithmeticError(f"{other} does not divide {self}")
            qm = _mono_div(m, lm)
            qc = rest.terms[m] * inv
            q[qm] = qc
            rest = rest - other.mul_term(qm, qc)
        return Poly(self.ring, q)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        c = as_scalar(other, strict=False)
        if c is None:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- substitution ----------------------------------------------------------

    def evaluate(self, point: Mapping[str, Scalarish]):
        """Evaluate at an assignment of every variable that occurs.

        Scalar values give a :class:`GaussRational`; polynomial values (from
        any single ring) compose, giving a polynomial in that ring.
        """
        values = []
        for k, name in enumerate(self.ring.names):
            v = point.get(name)
            if v is not None and not isinstance(v, Poly):
                v = as_scalar(v)
            values.append(v)
        total = ZERO
        for m, c in self.terms.items():
            term = c
            for k, e in enumerate(m):
                if e:
                    v = values[k]
                    if v is None:
                        raise KeyError(f"no value assigned to {self.ring.names[k]!r}")
                    term = term * v**e
            total = total + term
        return total

    def subs(self, mapping: Mapping[str, Union["Poly", Scalarish]]) -> "Poly":
        """Substitute polynomials or scalars for some variables."""
        ring = self.ring
        repl = {}
        for name, v in mapping.items():
            k = ring.index[name]
            repl[k] = v if isinstance(v, Poly) else ring.const(v)
            if repl[k].ring != ring:
                raise RingMismatch("substituted polynomial lives in another ring")
        if not repl:
            return self
        powers: Dict[Tuple[int, int], Poly] = {}
        result = ring.zero()
        for m, c in self.terms.items():
            keep = tuple(0 if k in repl else e for k, e in enumerate(m))
            term = Poly(ring, {keep: c})
            for k, e in enumerate(m):
                if e and k in repl:
                    p = powers.get((k, e))
                    if p is None:
                        p = powers[(k, e)] = repl[k] ** e
                    term = term * p
            result = result + term
        return result

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Embed into a ring containing every variable that occurs."""
        if ring == self.ring:
            return self
        src = self.ring.names
        pos = []
        for k, name in enumerate(src):
            pos.append(ring.index.get(name))
        terms = {}
        for m, c in self.terms.items():
            exps = [0] * ring.nvars
            for k, e in enumerate(m):
                if e:
                    if pos[k] is None:
                        raise RingMismatch(f"variable {src[k]!r} missing from target ring")
                    exps[pos[k]] = e
            terms[tuple(exps)] = c
        return Poly(ring, terms)

    # -- printing --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        out = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, m) if e
            )
            sign, body = _coeff_text(c, bool(mono))
            if mono:
                body = f"{body}*{mono}" if body else mono
            if not out:
                out.append(("-" if sign < 0 else "") + body)
            else:
                out.append((" - " if sign < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _coeff_text(c: GaussRational, has_mono: bool):
    """Return (sign, text) for a coefficient; empty text means an implicit 1."""
    re_, im_ = c.re, c.im
    if im_ == 0:
        sign = -1 if re_ < 0 else 1
        a = abs(re_)
        if a == 1 and has_mono:
            return sign, ""
        return sign, _rat(a)
    if re_ == 0:
        sign = -1 if im_ < 0 else 1
        a = abs(im_)
        return sign, "i" if a == 1 else f"{_rat(a)}*i"
    s = "-" if im_ < 0 else "+"
    b = abs(im_)
    imag = "i" if b == 1 else f"{_rat(b)}*i"
    if re_ < 0:
        return 1, f"(-{_rat(-re_)} {s} {imag})"
    return 1, f"({_rat(re_)} {s} {imag})"


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- parser ---------------------------------------------------------------------

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = []
        pos = 0
        while True:
            m = _TOKEN_RE.match(text, pos)
            if not m:
                if text[pos:].strip():
                    bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
                    raise PolySyntaxError(f"unexpected character {text[bad]!r}", bad)
                break
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise PolySyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression", 0)
        p = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected token {v!r}", pos)
        return p

    def expr(self) -> Poly:
        sign = 1
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, v, pos = self.peek()
            if v == "*":
                self.take()
                p = p * self.factor()
            elif kind in ("num", "id") or v == "(":
                raise PolySyntaxError("implicit multiplication is not allowed", pos)
            else:
                return p

    def factor(self) -> Poly:
        kind, v, pos = self.peek()
        if v == "-":
            # unary minus binds to a factor, e.g. "x*-y" or "-3/2"
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num" or "/" in v:
                raise PolySyntaxError("exponent must be a non-negative integer", pos)
            base = base ** int(v)
        return base

    def atom(self) -> Poly:
        kind, v, pos = self.take()
        if kind == "num":
            if "/" in v:
                num, den = (s.strip() for s in v.split("/"))
                if int(den) == 0:
                    raise PolySyntaxError("zero denominator in rational literal", pos)
                return self.ring.const(Fraction(int(num), int(den)))
            return self.ring.const(int(v))
        if kind == "id":
            if v == "i":
                return self.ring.const(GaussRational(0, 1))
            if v not in self.ring.index:
                raise UnknownVariable(f"unknown variable {v!r}", pos)
            return self.ring.var(v)
        if v == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise PolySyntaxError(f"unexpected token {v or 'end of input'!r}", pos)


# -- truncated power series -----------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in t known up to and including t^cap."""

    coeffs: Tuple[Fraction, ...]

    @property
    def cap(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_list(cls, coeffs, cap: int) -> "TruncatedSeries":
        cs = [Fraction(c) for c in coeffs][: cap + 1]
        cs += [Fraction(0)] * (cap + 1 - len(cs))
        return cls(tuple(cs))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.cap else Fraction(0)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cap = min(self.cap, other.cap)
        out = [Fraction(0)] * (cap + 1)
        for i in range(cap + 1):
            a = self.coeffs[i]
            if a:
                for j in range(cap + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(out))

    def __pow__(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries.from_list([1], self.cap)
        for _ in range(k):
            result = result * self
        return result

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and k) else _rat(mag)
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            body = coef + mono
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) or "0"


def chern_series(c: int, cap: int) -> TruncatedSeries:
    """Total Chern class 1/(1 - t^2)^c of a charge-c instanton, truncated at t^cap."""
    if c < 1 or cap < 2:
        raise ValueError("need charge c >= 1 and cap >= 2")
    coeffs = [Fraction(0)] * (cap + 1)
    for k in range(cap // 2 + 1):
        coeffs[2 * k] = Fraction(comb(c - 1 + k, k))
    return TruncatedSeries(tuple(coeffs))
