"""Truncated formal power series in ``b`` with Gaussian-rational coefficients."""

from __future__ import annotations

import os

from ._expr import parse_polynomial
from .errors import NotAUnit, ParseError, PrecisionInconclusive
from .scalars import ONE, ZERO, Scalar, format_scalar

DEFAULT_PREC = int(os.environ.get("ABMODULES_PRECISION", "32"))

INFINITE = float("inf")


def default_prec() -> int:
    return DEFAULT_PREC


def set_default_prec(n: int) -> None:
    global DEFAULT_PREC
    if n < 1:
        raise ValueError("precision must be at least 1")
    DEFAULT_PREC = n


class Series:
    """A power series known modulo ``b**prec``.

    ``coeffs[k]`` is the coefficient of ``b**k``; exactly ``prec`` entries
    are stored.  Equality compares coefficients up to the smaller of the
    two precisions, i.e. it asks whether the known data agree.
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs=(), prec: int | None = None):
        if prec is None:
            prec = DEFAULT_PREC
        if prec < 0:
            raise PrecisionInconclusive("precision exhausted")
        cs = [c if isinstance(c, Scalar) else Scalar.coerce(c) for c in coeffs][:prec]
        cs.extend([ZERO] * (prec - len(cs)))
        self.coeffs = tuple(cs)
        self.prec = prec

    @classmethod
    def _raw(cls, coeffs, prec):
        s = object.__new__(cls)
        s.coeffs = tuple(coeffs)
        s.prec = prec
        return s

    @classmethod
    def const(cls, c, prec: int | None = None) -> "Series":
        return cls([c], prec)

    @classmethod
    def zero(cls, prec: int | None = None) -> "Series":
        return cls((), prec)

    @classmethod
    def one(cls, prec: int | None = None) -> "Series":
        return cls([ONE], prec)

    @classmethod
    def monomial(cls, c, k: int, prec: int | None = None) -> "Series":
        return cls([ZERO] * k + [c], prec)

    @classmethod
    def coerce(cls, x, prec: int | None = None) -> "Series":
        if isinstance(x, Series):
            return x
        if isinstance(x, str):
            return parse_series(x, prec)
        return cls.const(x, prec)

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k]

    def __len__(self):
        return self.prec

    # ring structure

    def __add__(self, other):
        other = _as_series(other, self.prec)
        n = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        return Series._raw([a[k] + b[k] for k in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = _as_series(other, self.prec)
        n = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        return Series._raw([a[k] - b[k] for k in range(n)], n)

    def __rsub__(self, other):
        return _as_series(other, self.prec) - self

    def __mul__(self, other):
        if isinstance(other, Series):
            n = min(self.prec, other.prec)
            a, b = self.coeffs, other.coeffs
            out = [ZERO] * n
            nz_b = [(j, b[j]) for j in range(n) if b[j]]
            for i in range(n):
                ai = a[i]
                if not ai:
                    continue
                for j, bj in nz_b:
                    k = i + j
                    if k >= n:
                        break
                    out[k] = out[k] + ai * bj
            return Series._raw(out, n)
        c = Scalar.coerce(other)
        if not c:
            return Series._raw([ZERO] * self.prec, self.prec)
        return Series._raw([x * c for x in self.coeffs], self.prec)

    __rmul__ = __mul__

    def scale(self, c) -> "Series":
        return self * Scalar.coerce(c)

    def truncate(self, prec: int) -> "Series":
        if prec > self.prec:
            raise PrecisionInconclusive(f"cannot raise precision {self.prec} to {prec}")
        return Series._raw(self.coeffs[:prec], prec)

    def with_prec(self, prec: int) -> "Series":
        """Truncate, or pad with zeros treating the series as an exact polynomial."""
        if prec <= self.prec:
            return self.truncate(prec)
        return Series._raw(self.coeffs + (ZERO,) * (prec - self.prec), prec)

    def shift(self, k: int) -> "Series":
        """Multiply by ``b**k`` (exact, so the precision grows by ``k``)."""
        return Series._raw((ZERO,) * k + self.coeffs, self.prec + k)

    def divide_by_b(self, k: int = 1) -> "Series":
        """Divide by ``b**k``; the first ``k`` coefficients must vanish."""
        if k == 0:
            return self
        if k > self.prec:
            raise PrecisionInconclusive("division by b exhausts precision")
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"series is not divisible by b^{k}")
        return Series._raw(self.coeffs[k:], self.prec - k)

    def derivative(self) -> "Series":
        if self.prec < 2:
            raise PrecisionInconclusive("derivative needs precision at least 2")
        c = self.coeffs
        return Series._raw([c[k + 1] * (k + 1) for k in range(self.prec - 1)], self.prec - 1)

    def conj_b(self) -> "Series":
        """Substitute ``b -> -b``."""
        return Series._raw([-c if k % 2 else c for k, c in enumerate(self.coeffs)], self.prec)

    def invert(self) -> "Series":
        c0 = self.coeffs[0] if self.prec else ZERO
        if not c0:
            raise NotAUnit("constant coefficient vanishes")
        n = self.prec
        a = self.coeffs
        inv0 = c0.inverse()
        out = [inv0]
        for m in range(1, n):
            acc = ZERO
            for l in range(1, m + 1):
                if a[l]:
                    acc = acc + a[l] * out[m - l]
            out.append(-(acc * inv0))
        return Series._raw(out, n)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return INFINITE

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return self.prec > 0 and bool(self.coeffs[0])

    def degree(self) -> int:
        for k in range(self.prec - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def __eq__(self, other):
        if not isinstance(other, Series):
            try:
                other = _as_series(other, self.prec)
            except (TypeError, ValueError, ParseError):
                return NotImplemented
        n = min(self.prec, other.prec)
        return self.coeffs[:n] == other.coeffs[:n]

    __hash__ = None

    def identical(self, other: "Series") -> bool:
        return self.prec == other.prec and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Series({format_series(self, with_order=True)!r})"

    def __str__(self):
        return format_series(self)


def _as_series(x, prec) -> Series:
    if isinstance(x, Series):
        return x
    return Series.const(Scalar.coerce(x), prec)


def _coeff_text(c: Scalar, k: int):
    """Return (sign, body) for one term c*b^k with c != 0."""
    mono = "" if k == 0 else ("b" if k == 1 else f"b^{k}")
    if c.im and c.re:
        body = f"({format_scalar(c)})"
        return "+", body + (f"*{mono}" if mono else "")
    neg = (c.re < 0) if not c.im else (c.im < 0)
    a = -c if neg else c
    sign = "-" if neg else "+"
    if a == ONE and mono:
        return sign, mono
    body = format_scalar(a)
    return sign, body + (f"*{mono}" if mono else "")


def format_series(f: Series, with_order: bool = False) -> str:
    """Polynomial syntax, e.g. ``3/2 + b - 1/4*b^3``; optional ``O(b^N)`` suffix."""
    parts = []
    for k, c in enumerate(f.coeffs):
        if c:
            parts.append(_coeff_text(c, k))
    if with_order:
        parts.append(("+", f"O(b^{f.prec})"))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_series(text: str, prec: int | None = None) -> Series:
    """Parse polynomial syntax; an ``O(b^k)`` term overrides ``prec``."""
    poly, order = parse_polynomial(text)
    if order is not None:
        prec = order
    if prec is None:
        prec = DEFAULT_PREC
    coeffs = [ZERO] * prec
    for k, (re_part, im_part) in poly.items():
        if k < prec:
            coeffs[k] = Scalar(re_part, im_part)
    return Series._raw(coeffs, prec)

