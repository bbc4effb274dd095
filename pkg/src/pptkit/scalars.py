"""Scalar backends.

Two backends coexist and never mix silently:

* ``exact`` -- Gaussian rationals (:class:`QQi`), plus plain ``int`` and
  :class:`fractions.Fraction` literals which are treated as exact reals.
* ``float`` -- Python ``complex`` / ``float`` (and numpy scalars).

Combining a :class:`QQi` with a float or complex raises
:class:`BackendMismatchError` instead of promoting.
"""

from __future__ import annotations

import cmath
import math
import numbers
import re
from fractions import Fraction

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

#: default tolerance for float comparisons
EPS = 1e-9


class BackendMismatchError(TypeError):
    """Raised when exact and float scalars meet in one expression."""


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    raise BackendMismatchError(f"cannot use {type(x).__name__} value {x!r} in exact arithmetic")


class QQi:
    """Gaussian rational ``re + im*i`` with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _rational(re))
        object.__setattr__(self, "im", _rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "QQi":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @staticmethod
    def coerce(x) -> "QQi":
        if isinstance(x, QQi):
            return x
        return QQi._make(_rational(x), Fraction(0))

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = QQi.coerce(other)
        except BackendMismatchError:
            return NotImplemented if not isinstance(other, (float, complex)) else _mismatch(self, other)
        return QQi._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = QQi.coerce(other)
        except BackendMismatchError:
            return NotImplemented if not isinstance(other, (float, complex)) else _mismatch(self, other)
        return QQi._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = QQi.coerce(other)
        except BackendMismatchError:
            return NotImplemented if not isinstance(other, (float, complex)) else _mismatch(self, other)
        return QQi._make(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return QQi._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        try:
            o = QQi.coerce(other)
        except BackendMismatchError:
            return NotImplemented if not isinstance(other, (float, complex)) else _mismatch(self, other)
        if self.is_zero() or o.is_zero():
            return ZERO
        if not self.im and not o.im:
            return QQi._make(self.re * o.re, Fraction(0))
        return QQi._make(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "QQi":
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("division by exact zero")
        return QQi._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = QQi.coerce(other)
        except BackendMismatchError:
            return NotImplemented if not isinstance(other, (float, complex)) else _mismatch(self, other)
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by exact zero")
            return QQi._make(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = QQi.coerce(other)
        except BackendMismatchError:
            return NotImplemented if not isinstance(other, (float, complex)) else _mismatch(self, other)
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, numbers.Integral):
            raise BackendMismatchError("exact powers need an integer exponent")
        k = int(k)
        base = self if k >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    def conjugate(self) -> "QQi":
        return QQi._make(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return NotImplemented
        try:
            o = QQi.coerce(other)
        except BackendMismatchError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        return format_exact(self)


ZERO = QQi._make(Fraction(0), Fraction(0))
ONE = QQi._make(Fraction(1), Fraction(0))
I = QQi._make(Fraction(0), Fraction(1))


def _mismatch(a, b):
    raise BackendMismatchError(f"cannot combine exact {a!r} with float {b!r}")


# ---------------------------------------------------------------------------
# backend helpers


def backend_of(x) -> str:
    if isinstance(x, (QQi, Fraction)) or (isinstance(x, numbers.Integral)):
        return EXACT
    if isinstance(x, numbers.Complex):
        return FLOAT
    raise TypeError(f"not a scalar: {x!r}")


def common_backend(*xs) -> str:
    """Backend shared by all arguments; ints/Fractions adapt to either side."""
    found = None
    for x in xs:
        if isinstance(x, QQi):
            b = EXACT
        elif isinstance(x, (Fraction, numbers.Integral)):
            continue
        else:
            b = backend_of(x)
        if found is None:
            found = b
        elif found != b:
            raise BackendMismatchError("arguments mix exact and float scalars")
    return found or EXACT


def exact(x) -> QQi:
    """Coerce an exact literal (int, Fraction, str like '1/3', QQi) to QQi."""
    if isinstance(x, str):
        return parse_scalar(x, EXACT)
    return QQi.coerce(x)


def to_backend(x, backend: str):
    """Convert an exact-representable value to ``backend``.

    Exact -> float is allowed (explicit, lossy); float -> exact is refused.
    """
    if backend == EXACT:
        if isinstance(x, (float, complex)) and not isinstance(x, numbers.Integral):
            raise BackendMismatchError(f"float value {x!r} has no exact representation")
        return QQi.coerce(x)
    if isinstance(x, (QQi, Fraction, numbers.Integral)):
        return complex(QQi.coerce(x))
    return complex(x)


def is_zero(x, eps: float = EPS) -> bool:
    if isinstance(x, QQi):
        return x.is_zero()
    if isinstance(x, (Fraction, numbers.Integral)):
        return x == 0
    return abs(x) <= eps


def magnitude(x):
    """Deviation measure of a scalar: exact Fraction max(|re|, |im|) or float modulus."""
    if isinstance(x, QQi):
        return max(abs(x.re), abs(x.im))
    if isinstance(x, (Fraction, numbers.Integral)):
        return abs(Fraction(x))
    return abs(x)


def conj(x):
    if isinstance(x, QQi):
        return x.conjugate()
    return x.conjugate()


# ---------------------------------------------------------------------------
# formatting


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_exact(x) -> str:
    x = QQi.coerce(x)
    if not x.im:
        return _frac_str(x.re)
    im = "" if abs(x.im) == 1 else _frac_str(abs(x.im)) + "*"
    if not x.re:
        return ("-" if x.im < 0 else "") + im + "i"
    return f"{_frac_str(x.re)}{'-' if x.im < 0 else '+'}{im}i"


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def format_scalar(x) -> str:
    """Stable text form: exact fraction strings or 17-significant-digit floats."""
    if isinstance(x, (QQi, Fraction)) or isinstance(x, numbers.Integral):
        return format_exact(x)
    x = complex(x)
    if x.imag == 0:
        return format_float(x.real)
    if x.real == 0:
        return f"{'-' if x.imag < 0 else ''}{format_float(abs(x.imag))}i"
    return f"{format_float(x.real)}{'+' if x.imag >= 0 else '-'}{format_float(abs(x.imag))}i"


# ---------------------------------------------------------------------------
# literal parsing (used by the CLI)


class ScalarSyntaxError(ValueError):
    pass


_ANGLE = re.compile(r"^exp\(\s*(-?)\s*i\s*\*\s*(.+)\)$")
_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)\s*({_NUM})?\s*(\*?\s*i)?")


def _angle_value(expr: str) -> float:
    expr = expr.strip()
    m = re.fullmatch(r"(?:(\d+(?:\.\d*)?)\s*\*\s*)?pi(?:\s*/\s*(\d+(?:\.\d*)?))?", expr)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    try:
        return float(Fraction(expr))
    except ValueError as exc:
        raise ScalarSyntaxError(f"bad angle {expr!r}") from exc


def parse_scalar(text: str, backend: str | None = None):
    """Parse a complex literal.

    Accepted forms: ``a/b``, ``0.5``, ``i``, ``-2i``, ``2+3i``, ``1/2-1/3i``,
    ``exp(i*pi/3)``. Angle forms are float-only; ``backend=None`` picks
    exact unless an angle form forces float.
    """
    if re.search(r"[\w.)]\s+[\w.(]", text.strip()):
        raise ScalarSyntaxError(f"bad scalar literal {text!r}")
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ScalarSyntaxError("empty scalar literal")
    m = _ANGLE.match(s)
    if m:
        if backend == EXACT:
            raise ScalarSyntaxError(f"angle literal {text!r} has no exact value; use --backend float")
        theta = _angle_value(m.group(2))
        if m.group(1):
            theta = -theta
        return cmath.exp(1j * theta)
    pos = 0
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ScalarSyntaxError(f"bad scalar literal {text!r}")
        sign, num, imag = m.groups()
        if seen and not sign:
            raise ScalarSyntaxError(f"bad scalar literal {text!r}")
        if num is None and imag is None:
            raise ScalarSyntaxError(f"bad scalar literal {text!r}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if imag:
            im_part += value
        else:
            re_part += value
        seen += 1
        pos = m.end()
    z = QQi(re_part, im_part)
    if backend == FLOAT:
        return complex(z)
    return z


class PoleError(ZeroDivisionError):
    """A parameter hit a declared pole of a family."""
