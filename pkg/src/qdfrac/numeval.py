"""Arbitrary-precision evaluation of E1(x) and F(x) = e^x E1(x) for x > 0.

Three independent routes are provided: the convergent power series with
Euler's constant, the Stieltjes continued fraction evaluated backwards, and
direct quadrature of ``int_0^inf e^-t / (t + x) dt``.  Every routine takes
its precision as an argument and works in a private mpmath context, so no
global precision state is read or written.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import libmp

from .errors import DomainError, NoConvergence, PrecisionExhausted

__all__ = [
    "BigReal",
    "EvalReport",
    "e1_series",
    "e1_cf",
    "e1_quadrature",
    "f_quadrature",
    "g1",
    "asymptotic_partial",
    "f_iteration",
    "SWITCHOVER",
    "MAX_CF_DEPTH",
]

LN2 = math.log(2)
SWITCHOVER = 4
MAX_CF_DEPTH = 2**16
_RND = libmp.round_nearest


def _context(prec_bits: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = prec_bits
    return ctx


class BigReal:
    """A binary floating-point value tagged with the precision it carries.

    Arithmetic between two values is rounded to the larger of the two
    precisions.  The stored value is exact; only new results are rounded.
    """

    __slots__ = ("_mpf", "prec_bits")

    def __init__(self, value, prec_bits: int = 128):
        if prec_bits < 2:
            raise ValueError("prec_bits must be >= 2")
        self.prec_bits = int(prec_bits)
        if isinstance(value, BigReal):
            self._mpf = libmp.mpf_pos(value._mpf, self.prec_bits, _RND)
        elif isinstance(value, Fraction):
            self._mpf = libmp.mpf_div(
                libmp.from_int(value.numerator), libmp.from_int(value.denominator), self.prec_bits, _RND
            )
        elif hasattr(value, "_mpf_"):
            self._mpf = libmp.mpf_pos(value._mpf_, self.prec_bits, _RND)
        elif isinstance(value, int):
            self._mpf = libmp.from_int(value, self.prec_bits, _RND)
        elif isinstance(value, float):
            self._mpf = libmp.from_float(value, self.prec_bits, _RND)
        elif isinstance(value, str):
            text = value.strip()
            if "/" in text:
                self._mpf = BigReal(Fraction(text), self.prec_bits)._mpf
            else:
                self._mpf = libmp.from_str(text, self.prec_bits, _RND)
        else:
            raise TypeError(f"cannot make a BigReal from {type(value).__name__}")

    @classmethod
    def _raw(cls, mpf_tuple, prec_bits):
        out = cls.__new__(cls)
        out._mpf = mpf_tuple
        out.prec_bits = prec_bits
        return out

    @property
    def _mpf_(self):
        # lets mpmath contexts convert BigReal directly
        return self._mpf

    def to_mpf(self, ctx=None):
        ctx = ctx or mpmath.mp
        return ctx.make_mpf(self._mpf)

    def _binop(self, other, fn):
        if not isinstance(other, BigReal):
            other = BigReal(other, self.prec_bits)
        prec = max(self.prec_bits, other.prec_bits)
        return BigReal._raw(fn(self._mpf, other._mpf, prec, _RND), prec)

    def __add__(self, other):
        return self._binop(other, libmp.mpf_add)

    def __sub__(self, other):
        return self._binop(other, libmp.mpf_sub)

    def __mul__(self, other):
        return self._binop(other, libmp.mpf_mul)

    def __truediv__(self, other):
        return self._binop(other, libmp.mpf_div)

    def __radd__(self, other):
        return BigReal(other, self.prec_bits) + self

    def __rsub__(self, other):
        return BigReal(other, self.prec_bits) - self

    def __rmul__(self, other):
        return BigReal(other, self.prec_bits) * self

    def __rtruediv__(self, other):
        return BigReal(other, self.prec_bits) / self

    def __neg__(self):
        return BigReal._raw(libmp.mpf_neg(self._mpf), self.prec_bits)

    def __abs__(self):
        return BigReal._raw(libmp.mpf_abs(self._mpf), self.prec_bits)

    def _cmp(self, other):
        if not isinstance(other, BigReal):
            other = BigReal(other, max(self.prec_bits, 64))
        return libmp.mpf_cmp(self._mpf, other._mpf)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash(self._mpf)

    def __float__(self):
        return libmp.to_float(self._mpf)

    def sign(self) -> int:
        return libmp.mpf_sign(self._mpf)

    def is_close(self, other, guard: int = 8) -> bool:
        """Relative agreement to 2^-(prec_bits - guard)."""
        other = other if isinstance(other, BigReal) else BigReal(other, self.prec_bits)
        prec = max(self.prec_bits, other.prec_bits)
        diff = abs(self - other)
        scale = max(abs(self), abs(other))
        return diff <= scale * BigReal._raw(libmp.from_man_exp(1, guard - prec), prec)

    @property
    def digits(self) -> int:
        return max(1, int(self.prec_bits * math.log10(2)))

    def __str__(self):
        return libmp.to_str(self._mpf, self.digits)

    def __format__(self, spec):
        if not spec:
            return str(self)
        return format(float(self), spec)

    def __repr__(self):
        return f"BigReal('{self}', prec_bits={self.prec_bits})"


def _as_mpf(ctx, x):
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, BigReal):
        return ctx.make_mpf(x._mpf)
    if isinstance(x, str) and "/" in x:
        return _as_mpf(ctx, Fraction(x))
    return ctx.mpf(x)


def _positive(ctx, x):
    xv = _as_mpf(ctx, x)
    if not xv > 0:
        raise DomainError(f"x must be positive, got {x}")
    return xv


def _big(value, prec_bits):
    return BigReal(value, prec_bits)


@dataclass(frozen=True)
class EvalReport:
    x: BigReal
    value: BigReal
    method: str
    terms: int
    est_error: BigReal

    def line(self) -> str:
        err = libmp.to_str(self.est_error._mpf, 6)
        return f"x={self.x} value={self.value} method={self.method} terms={self.terms} est_err={err}"

    def as_dict(self) -> dict:
        return {
            "x": str(self.x),
            "value": str(self.value),
            "method": self.method,
            "terms": self.terms,
            "est_err": libmp.to_str(self.est_error._mpf, 6),
            "prec_bits": self.value.prec_bits,
        }


def _x_size(x) -> float:
    if isinstance(x, BigReal):
        return abs(float(x))
    try:
        return abs(float(Fraction(x) if isinstance(x, str) and "/" in x else x))
    except (TypeError, ValueError):
        return abs(float(mpmath.mpf(x)))


def e1_series(x, prec_bits: int = 128) -> EvalReport:
    """E1(x) = -log(x) - gamma + sum_{n>=1} (-1)^(n-1) x^n / (n n!).

    The alternating terms peak near e^x while E1(x) is about e^-x / x, so
    the working precision is raised by about 2x/ln 2 bits.
    """
    size = _x_size(x)
    wp = prec_bits + math.ceil(2 * size / LN2) + 32
    ctx = _context(wp)
    xv = _positive(ctx, x)
    eps = ctx.ldexp(1, -wp)
    power = ctx.one  # x^n / n!
    partial = ctx.zero
    peak = ctx.zero
    n = 0
    while True:
        n += 1
        power = power * xv / n
        term = power / n
        partial = partial + term if n % 2 else partial - term
        peak = max(peak, abs(partial))
        if n > size and term < eps * abs(partial):
            break
    value = partial - ctx.log(xv) - ctx.euler
    # alternating tail once terms decrease, plus accumulated rounding
    est = term + eps * (n * peak + abs(ctx.log(xv)) + 1)
    return EvalReport(_big(xv, prec_bits), _big(value, prec_bits), "series", n, _big(est, prec_bits))


def _cf_tail(ctx, xv, depth):
    """1/(m_1 + 1/(m_2 + ... 1/m_depth)) evaluated from the bottom up."""
    t = ctx.zero
    for j in range(depth, 0, -1):
        m = xv if j % 2 else ctx.mpf(2) / j
        t = 1 / (m + t)
    return t


def e1_cf(x, depth: int | None = None, prec_bits: int = 128, adaptive: bool = True, max_depth: int = MAX_CF_DEPTH) -> EvalReport:
    """E1(x) = e^-x / (x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...))))).

    ``depth`` counts partial denominators of the unit-numerator form, so
    depth n gives e^-x P_n(x)/Q_n(x).  With ``adaptive`` the depth is
    doubled until two successive values agree to 2^-(prec_bits-8).  The
    convergents bracket the limit, so the distance between the final two
    consecutive convergents is reported as the error.
    """
    wp = prec_bits + 16
    ctx = _context(wp)
    xv = _positive(ctx, x)
    d = depth or 8
    if d < 1:
        raise ValueError("depth must be >= 1")
    tol = ctx.ldexp(1, -(prec_bits - 8))
    value = _cf_tail(ctx, xv, d)
    if adaptive:
        while True:
            if 2 * d > max_depth:
                raise NoConvergence(f"continued fraction not converged at depth {d} for x={x}")
            d *= 2
            nxt = _cf_tail(ctx, xv, d)
            if abs(nxt - value) <= tol * abs(nxt):
                value = nxt
                break
            value = nxt
    prev = _cf_tail(ctx, xv, d - 1) if d > 1 else ctx.zero
    scale = ctx.exp(-xv)
    rounding = ctx.ldexp(d * value, -wp)
    est = scale * (abs(value - prev) + rounding) if d > 1 else scale * value
    return EvalReport(_big(xv, prec_bits), _big(scale * value, prec_bits), "cf", d, _big(est, prec_bits))


def _f_integral(ctx, xv, wp):
    """int_0^L e^-t/(t+x) dt and its error budget, with e^-L < 2^-(wp+16).

    The dropped tail is below e^-L/(x+L), which is e^-xT/(xT) for the
    original variable y = 1 + t/x truncated at T = 1 + L/x.
    """
    L = ctx.mpf((wp + 16) * LN2)
    points = [ctx.zero]
    edge = ctx.mpf(0.5)
    while edge < L:
        points.append(edge)
        edge *= 2
    points.append(L)
    value, err = ctx.quad(lambda t: ctx.exp(-t) / (t + xv), points, error=True)
    tail = ctx.exp(-L) / (xv + L)
    return value, err + tail, len(points) - 1


def f_quadrature(x, prec_bits: int = 128) -> EvalReport:
    """F(x) = e^x E1(x) = int_0^inf e^-t/(t + x) dt by quadrature."""
    wp = prec_bits + 32
    ctx = _context(wp)
    xv = _positive(ctx, x)
    value, err, pieces = _f_integral(ctx, xv, wp)
    return EvalReport(_big(xv, prec_bits), _big(value, prec_bits), "quadrature", pieces, _big(err, prec_bits))


def e1_quadrature(x, prec_bits: int = 128) -> EvalReport:
    """E1(x) = int_1^inf e^-xy dy/y, integrated as e^-x int_0^inf e^-t/(t+x) dt."""
    wp = prec_bits + 32
    ctx = _context(wp)
    xv = _positive(ctx, x)
    value, err, pieces = _f_integral(ctx, xv, wp)
    scale = ctx.exp(-xv)
    return EvalReport(_big(xv, prec_bits), _big(scale * value, prec_bits), "quadrature", pieces, _big(scale * err, prec_bits))


def g1(x, prec_bits: int = 128, method: str = "auto", switchover: float = SWITCHOVER) -> BigReal:
    """G1(x) = E1(x); ``auto`` uses the series below ``switchover`` and the fraction above."""
    if method == "auto":
        method = "series" if _x_size(x) < switchover else "cf"
    if method == "series":
        return e1_series(x, prec_bits).value
    if method == "cf":
        return e1_cf(x, prec_bits=prec_bits).value
    if method == "quadrature":
        return e1_quadrature(x, prec_bits).value
    raise ValueError(f"unknown method {method!r}")


def asymptotic_partial(x, n: int, prec_bits: int = 128) -> tuple[BigReal, BigReal]:
    """Partial sum sum_{k=1}^n (-1)^(k-1) (k-1)! x^-k and the remainder bound n!/x^(n+1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx = _context(prec_bits + 16)
    xv = _positive(ctx, x)
    total = ctx.zero
    term = 1 / xv
    for k in range(1, n + 1):
        total += term
        term = -term * k / xv
    bound = ctx.factorial(n) / xv ** (n + 1)
    return _big(total, prec_bits), _big(bound, prec_bits)


def f_iteration(x, m_max: int, prec_bits: int = 512, auto_precision: bool = True, guard: int = 16) -> list[tuple[int, BigReal]]:
    """Expand F at infinity step by step and return normalized ratios.

    F_1 = 1/F, F_2 = 1/(F_1 - x), F_{2m+1} = 1/(F_{2m} - 1/m) and
    F_{2m+2} = 1/(F_{2m+1} - x).  Returned pairs are ``(j, rho_j)`` for
    j = 1 .. 2*m_max with rho_{2m-1} = F_{2m-1}/x and rho_{2m} = m F_{2m}.

    Each subtraction cancels roughly log2(x) leading bits.  With
    ``auto_precision`` the working precision is raised by
    2*m_max*(log2(x) + 8) bits up front; otherwise the loss is tracked and
    :class:`PrecisionExhausted` is raised once fewer than ``guard``
    significant bits remain.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    size = _x_size(x)
    wp = prec_bits
    if auto_precision:
        wp += 2 * m_max * (math.ceil(math.log2(max(size, 2.0))) + 8)
    ctx = _context(wp)
    xv = _positive(ctx, x)
    F, _, _ = _f_integral(ctx, xv, wp)
    significant = wp - 8
    current = 1 / F
    out = [(1, _big(current / xv, prec_bits))]
    for j in range(2, 2 * m_max + 1):
        if j % 2 == 0:
            main = xv
        else:
            main = ctx.one / ((j - 1) // 2)
        diff = current - main
        if diff == 0:
            raise PrecisionExhausted(f"F_{j - 1} equals its main term at working precision {wp}")
        significant -= max(0, ctx.mag(current) - ctx.mag(diff))
        if significant < guard:
            raise PrecisionExhausted(
                f"only {significant} significant bits left at step {j} (working precision {wp})"
            )
        current = 1 / diff
        rho = current / xv if j % 2 else current * (j // 2)
        out.append((j, _big(rho, prec_bits)))
    return out
