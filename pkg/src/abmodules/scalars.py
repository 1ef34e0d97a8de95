"""Exact arithmetic in the Gaussian rationals Q(i).

Both parts are stored as ``gmpy2.mpq`` values, which are always kept in
lowest terms with a positive denominator.
"""

from __future__ import annotations

from gmpy2 import isqrt, mpq

from .errors import ParseError

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            num, den = x.split("/")
            return mpq(int(num), int(den))
        return mpq(int(x))
    return mpq(x)


class Scalar:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(_ZERO) else _q(re)
        self.im = im if type(im) is type(_ZERO) else _q(im)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point values are not exact scalars")
        if isinstance(x, str):
            return parse_scalar(x)
        return cls(x)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return Scalar(a * c, _ZERO)
            return Scalar(a * c, a * d)
        if not d:
            return Scalar(a * c, b * c)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("division by the zero scalar")
            return Scalar(_ONE / a, _ZERO)
        n = a * a + b * b
        return Scalar(a / n, -b / n)

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except (TypeError, ValueError, ParseError):
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def sort_key(self):
        return (self.re, self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def is_nonneg_integer(x: Scalar) -> bool:
    """True iff ``x`` lies in {0, 1, 2, ...}."""
    x = Scalar.coerce(x)
    return x.is_integer() and x.re >= 0


def congruent_mod_Z(x: Scalar, y: Scalar) -> bool:
    return (Scalar.coerce(x) - Scalar.coerce(y)).is_integer()


def class_key(x: Scalar):
    """Canonical representative of the class of ``x`` mod Z, as a sort key.

    The real part is reduced into [0, 1).
    """
    x = Scalar.coerce(x)
    r = x.re - (x.re.numerator // x.re.denominator)
    return (r, x.im)


def _rational_sqrt(q: mpq):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return mpq(rn, rd)


def sqrt_in_field(x: Scalar):
    """Square root of ``x`` inside Q(i), or None if it would need an extension.

    The returned root is the canonical branch: positive real part, or zero
    real part and non-negative imaginary part.
    """
    x = Scalar.coerce(x)
    p, q = x.re, x.im
    if not q:
        r = _rational_sqrt(abs(p))
        if r is None:
            return None
        return Scalar(r, 0) if p >= 0 else Scalar(0, r)
    norm = _rational_sqrt(p * p + q * q)
    if norm is None:
        return None
    u = _rational_sqrt((p + norm) / 2)
    v = _rational_sqrt((norm - p) / 2)
    if u is None or v is None:
        return None
    # 2uv = q fixes the relative sign; u > 0 here since q != 0.
    if q < 0:
        v = -v
    return Scalar(u, v)


def _format_q(q: mpq) -> str:
    return str(q)


def format_scalar(x: Scalar) -> str:
    """Textual form ``a/b`` or ``a/b+c/d*i``."""
    if not x.im:
        return _format_q(x.re)
    if x.im == 1:
        ims = "i"
    elif x.im == -1:
        ims = "-i"
    else:
        ims = f"{_format_q(x.im)}*i"
    if not x.re:
        return ims
    sep = "" if ims.startswith("-") else "+"
    return f"{_format_q(x.re)}{sep}{ims}"


def parse_scalar(text: str) -> Scalar:
    """Parse ``a/b``, ``a/b+c/d*i``, ``i``, ``-1/2*i`` and similar."""
    from ._expr import parse_polynomial

    poly, order = parse_polynomial(text)
    if order is not None or set(poly) - {0}:
        raise ParseError(f"not a Gaussian rational: {text!r}")
    re_part, im_part = poly.get(0, (_ZERO, _ZERO))
    return Scalar(re_part, im_part)
