"""Dense polynomials and Laurent polynomials over the rationals."""
from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["RatPoly", "LaurentPoly", "X", "format_rational"]


def format_rational(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class RatPoly:
    """Polynomial in x with Fraction coefficients in ascending degree.

    The coefficient tuple never ends in zero; the zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(Fraction(c) for c in coeffs)

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((Fraction(other),))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly((other,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self or not other:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"RatPoly({self})"

    def __str__(self):
        terms = [f"{format_rational(c)}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return " ".join(terms) if terms else "0"

    @classmethod
    def parse(cls, text: str) -> "RatPoly":
        """Inverse of ``str``: whitespace separated ``p/q*x^d`` tokens."""
        text = text.strip()
        if text == "0":
            return cls()
        out = {}
        for token in text.split():
            m = re.fullmatch(r"(-?\d+(?:/\d+)?)\*x\^(\d+)", token)
            if m is None:
                raise ValueError(f"bad polynomial token {token!r}")
            deg = int(m.group(2))
            out[deg] = out.get(deg, Fraction(0)) + Fraction(m.group(1))
        top = max(out)
        return cls(out.get(i, 0) for i in range(top + 1))


X = RatPoly((0, 1))


class LaurentPoly:
    """Finite Laurent polynomial ``sum_{i} coeffs[i] x^(lo + i)``.

    Trimmed at both ends; the zero element has ``lo == 0`` and no
    coefficients.
    """

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        coeffs = list(_trim(coeffs[start:]))
        self.lo = lo + start if coeffs else 0
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_poly(cls, p: RatPoly, shift: int = 0):
        """``x^shift * p`` as a Laurent polynomial."""
        return cls(shift, p.coeffs)

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def coeff(self, exponent: int) -> Fraction:
        i = exponent - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.lo == other.lo and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self:
            return other
        if not other:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return LaurentPoly(lo, [self.coeff(e) + other.coeff(e) for e in range(lo, hi + 1)])

    def __neg__(self):
        return LaurentPoly(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.lo, [c * other for c in self.coeffs])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self or not other:
            return LaurentPoly(0, ())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(self.lo + other.lo, out)

    __rmul__ = __mul__

    def polynomial_part(self) -> RatPoly:
        """Terms with exponent >= 0, i.e. the class modulo (1/x)Q[1/x]."""
        if not self or self.hi < 0:
            return RatPoly()
        return RatPoly(self.coeff(e) for e in range(0, self.hi + 1))

    def principal_part(self) -> "LaurentPoly":
        """Terms with negative exponent."""
        if not self or self.lo >= 0:
            return LaurentPoly(0, ())
        return LaurentPoly(self.lo, [self.coeff(e) for e in range(self.lo, min(self.hi, -1) + 1)])

    def __repr__(self):
        terms = [f"{format_rational(c)}*x^{self.lo + i}" for i, c in enumerate(self.coeffs) if c]
        return f"LaurentPoly({' '.join(terms) or '0'})"
