"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Rational values are carried as plain ``int`` or :class:`fractions.Fraction`
so that the integral Cartan matrices that make up nearly all of the work stay
on the fast path.  Only genuinely irrational numbers become :class:`Scalar`
instances, and every arithmetic result is collapsed back to ``int`` or
``Fraction`` when its surd part vanishes.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import RadicandMismatch, ScalarParseError


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _rat(x) -> int | Fraction:
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def simplify(x):
    """Return ``x`` in its cheapest exact representation."""
    if isinstance(x, Scalar):
        if x.b == 0:
            return _rat(x.a)
        return x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, Fraction)):
        return _rat(x)
    if isinstance(x, Rational):
        return _rat(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class Scalar:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b``.

    ``d`` must be a square-free integer ``>= 2`` whenever ``b != 0``.
    Instances are immutable and hash equal to the rational they represent
    when ``b == 0``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d in (0, 1):
            if d == 1:
                a, b = a + b, Fraction(0)
            elif b != 0:
                raise ValueError("surd part requires a radicand >= 2")
        elif not _squarefree(d):
            raise ValueError(f"radicand {d} is not square-free")
        if b == 0:
            d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def sqrt(d: int, coeff=1):
        """``coeff * sqrt(d)``, collapsing perfect squares to rationals."""
        d = int(d)
        if d < 0:
            raise ValueError("negative radicand")
        root = math.isqrt(d)
        if root * root == d:
            return simplify(Fraction(coeff) * root)
        # pull square factors out of d
        k, c = 2, 1
        while k * k <= d:
            while d % (k * k) == 0:
                d //= k * k
                c *= k
            k += 1
        return simplify(Scalar(0, Fraction(coeff) * c, d))

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _parts(x):
        if isinstance(x, Scalar):
            return x.a, x.b, x.d
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0), 0
        if isinstance(x, Rational):
            return Fraction(x.numerator, x.denominator), Fraction(0), 0
        return None

    @staticmethod
    def _common(d1, d2):
        if d1 == 0:
            return d2
        if d2 == 0 or d1 == d2:
            return d1
        raise RadicandMismatch(f"cannot combine sqrt({d1}) and sqrt({d2})")

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        d = self._common(self.d, p[2])
        return simplify(Scalar(self.a + p[0], self.b + p[1], d))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        d = self._common(self.d, p[2])
        return simplify(Scalar(self.a - p[0], self.b - p[1], d))

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        d = self._common(self.d, p[2])
        return simplify(Scalar(p[0] - self.a, p[1] - self.b, d))

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a2, b2, d2 = p
        d = self._common(self.d, d2)
        a = self.a * a2 + self.b * b2 * d
        b = self.a * b2 + self.b * a2
        return simplify(Scalar(a, b, d))

    __rmul__ = __mul__

    def _inverse(self):
        norm = self.a * self.a - self.b * self.b * self.d
        return Scalar(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        if p[1] == 0:
            return simplify(Scalar(self.a / p[0], self.b / p[0], self.d))
        return self * Scalar(*p)._inverse()

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return simplify(Scalar(*p)) * self._inverse()

    # comparison -----------------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = a * a - b * b * self.d
        sd = (diff > 0) - (diff < 0)
        return sa * sd

    def _cmp(self, other):
        if self._parts(other) is None:
            return None
        return _sign(self - other)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.a == p[0] and self.b == p[1] and (self.b == 0 or self.d == p[2])

    def __hash__(self):
        if self.b == 0:
            return hash(_rat(self.a))
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _sign(x) -> int:
    if isinstance(x, Scalar):
        return x.sign()
    return (x > 0) - (x < 0)


def sign(x) -> int:
    """Exact sign of an int, Fraction or Scalar."""
    return _sign(x)


def _fmt_rat(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Canonical text form: ``"a"`` or ``"a+b*sqrt(d)"`` / ``"a-b*sqrt(d)"``."""
    x = simplify(x)
    if not isinstance(x, Scalar):
        return _fmt_rat(x)
    a = _fmt_rat(x.a)
    op = "+" if x.b > 0 else "-"
    return f"{a}{op}{_fmt_rat(abs(x.b))}*sqrt({x.d})"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<a>{_RAT})\s*)?"
    rf"(?:(?P<op>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<d>\d+)\s*\))?\s*$"
)


def parse_scalar(text, radicand: int | None = None):
    """Parse the canonical text form (numbers are accepted as well).

    When ``radicand`` is given, a surd with a different radicand is rejected.
    """
    if isinstance(text, (int, Fraction, Scalar)) and not isinstance(text, bool):
        value = simplify(text)
    elif isinstance(text, float):
        raise ScalarParseError("floating point values are not exact")
    else:
        m = _SCALAR_RE.match(str(text))
        if not m or (m.group("a") is None and m.group("d") is None):
            raise ScalarParseError(f"cannot parse scalar {text!r}")
        a = Fraction(m.group("a")) if m.group("a") is not None else Fraction(0)
        value = simplify(a)
        if m.group("d") is not None:
            if m.group("a") is not None and m.group("op") is None:
                raise ScalarParseError(f"missing sign before surd in {text!r}")
            b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
            if m.group("op") == "-":
                b = -b
            value = value + Scalar.sqrt(int(m.group("d")), b)
    if radicand is not None and isinstance(value, Scalar) and value.d != radicand:
        raise RadicandMismatch(f"{text!r} does not live in Q(sqrt({radicand}))")
    return value
