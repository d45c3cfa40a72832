"""Exact scalars: rationals and Gaussian rationals Q(i).

A :class:`GaussRational` is stored as a reduced integer triple ``(a, b, d)``
meaning ``(a + b*i) / d`` with ``d > 0`` and ``gcd(a, b, d) == 1``.  Keeping a
single common denominator lets every operation run on Python ints only, which
is noticeably cheaper than carrying two :class:`fractions.Fraction` objects.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = [
    "GaussRational",
    "ZeroDivision",
    "ScalarSyntaxError",
    "as_scalar",
    "parse_scalar",
    "ZERO",
    "ONE",
    "I",
]


class ZeroDivision(ZeroDivisionError):
    """Division by an exact zero scalar."""


class ScalarSyntaxError(ValueError):
    """Malformed scalar literal."""


class GaussRational:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self._set(a, b, d)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_d", d)

    @classmethod
    def _raw(cls, a, b, d):
        # d > 0 is the caller's responsibility
        obj = object.__new__(cls)
        obj._set(a, b, d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    def __reduce__(self):
        return (GaussRational._raw, (self._a, self._b, self._d))

    # -- fields -------------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def triple(self):
        return (self._a, self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def is_one(self) -> bool:
        return self._a == 1 and self._b == 0 and self._d == 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        d1, d2 = self._d, o._d
        if d1 == d2:
            return GaussRational._raw(self._a + o._a, self._b + o._b, d1)
        return GaussRational._raw(
            self._a * d2 + o._a * d1, self._b * d2 + o._b * d1, d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(GaussRational)
        object.__setattr__(obj, "_a", -self._a)
        object.__setattr__(obj, "_b", -self._b)
        object.__setattr__(obj, "_d", self._d)
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        if b1 == 0 and b2 == 0:
            return GaussRational._raw(a1 * a2, 0, self._d * o._d)
        return GaussRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * o._d)

    __rmul__ = __mul__

    def inv(self) -> "GaussRational":
        a, b, d = self._a, self._b, self._d
        if a == 0 and b == 0:
            raise ZeroDivision("inverse of zero")
        # d / (a + b i) = d (a - b i) / (a^2 + b^2)
        n = a * a + b * b
        return GaussRational._raw(d * a, -d * b, n)

    def __truediv__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "GaussRational":
        return GaussRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """Field norm a^2 + b^2 as a rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def sqrt(self):
        """Square root in Q(i) if one exists, else ``None``.

        Only real arguments are handled: a rational q has a root in Q(i)
        exactly when |q| is a rational square.
        """
        if self._b != 0:
            return None
        q = self.re
        num, den = abs(q.numerator), q.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        if rn is None or rd is None:
            return None
        root = GaussRational(Fraction(rn, rd))
        return root if q >= 0 else root * I

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return not self.is_zero()

    # -- printing -----------------------------------------------------------

    def __repr__(self):
        return f"GaussRational({self})"

    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return _fmt_rational(re_)
        im_part = _fmt_imag(im_)
        if re_ == 0:
            return im_part
        if im_part.startswith("-"):
            return f"{_fmt_rational(re_)} - {im_part[1:]}"
        return f"{_fmt_rational(re_)} + {im_part}"


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _fmt_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fmt_imag(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{_fmt_rational(q)}*i"


def as_scalar(value, strict: bool = True):
    """Coerce ints, Fractions and GaussRationals to :class:`GaussRational`.

    With ``strict=False`` an unsupported type yields ``None`` so the arithmetic
    dunders can return ``NotImplemented``.
    """
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, int):
        return GaussRational._raw(value, 0, 1)
    if isinstance(value, Rational):
        return GaussRational._raw(value.numerator, 0, value.denominator)
    if isinstance(value, complex):
        if strict:
            raise TypeError("floating complex numbers are not exact scalars")
        return None
    if isinstance(value, str):
        return parse_scalar(value)
    if strict:
        raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")
    return None


_SCALAR_RE = re.compile(r"^\s*(-)?\s*(?:(\d+)(?:\s*/\s*(\d+))?)?\s*(\*?\s*i)?\s*$")


_SUM_RE = re.compile(r"^\s*(-?\s*\d+(?:\s*/\s*\d+)?)\s*([+-])\s*([^+-]*i)\s*$")


def parse_scalar(text: str) -> GaussRational:
    """Parse ``[-] int [/ uint] [* i]`` (also bare ``i`` and ``-i``), or ``re +/- im*i`` as printed."""
    s = _SUM_RE.match(text)
    if s:
        re_part, op, im_part = s.groups()
        im = _parse_single(im_part)
        if im.re:
            raise ScalarSyntaxError(f"malformed scalar literal: {text!r}")
        return _parse_single(re_part) + (im if op == "+" else -im)
    return _parse_single(text)


def _parse_single(text: str) -> GaussRational:
    m = _SCALAR_RE.match(text)
    if not m or (m.group(2) is None and m.group(4) is None):
        raise ScalarSyntaxError(f"malformed scalar literal: {text!r}")
    sign, num, den, imag = m.groups()
    if num is None and imag is not None and imag.lstrip().startswith("*"):
        raise ScalarSyntaxError(f"malformed scalar literal: {text!r}")
    if num is not None and imag is not None and not imag.lstrip().startswith("*"):
        raise ScalarSyntaxError(f"implicit multiplication in {text!r}")
    if den is not None and int(den) == 0:
        raise ScalarSyntaxError(f"zero denominator in {text!r}")
    q = Fraction(int(num) if num is not None else 1, int(den) if den is not None else 1)
    if sign:
        q = -q
    return GaussRational(0, q) if imag else GaussRational(q)


ZERO = GaussRational._raw(0, 0, 1)
ONE = GaussRational._raw(1, 0, 1)
I = GaussRational._raw(0, 1, 1)
