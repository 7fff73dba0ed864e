"""L'(E, 1) for an elliptic curve over Q from its Dirichlet coefficients.

For a curve with odd functional equation,

    L'(E, 1) = 2 * sum_{n>=1} (a_n / n) * E1(2 pi n / sqrt(N)).

Coefficients a_p come from naive point counting; a_n follows from the
Hecke relations.  Conductor and root number are read from the curve file,
never computed.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import numeval
from .errors import ParseError, PrimeTooLarge, SingularCurve
from .numeval import BigReal

__all__ = [
    "CurveConfig",
    "AnTable",
    "load_curve",
    "parse_curve",
    "bundled_curve",
    "from_b_invariants",
    "ap",
    "primes_up_to",
    "an_table",
    "lprime_approx",
    "tail_bound",
    "AP_CAP",
]

AP_CAP = 10**5
CURVE_DIR = Path(__file__).with_name("curves")


@dataclass(frozen=True)
class CurveConfig:
    """Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    label: str
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    N: int
    eps: int

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def from_b_invariants(b2: int, b4: int, b6: int, **kwargs) -> CurveConfig:
    """Integral long model whose completed square is y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.

    Substituting y -> 2y + a1 x + a3 recovers the given cubic.  Raises
    ValueError when no integral model with a1, a3 in {0, 1} exists.
    """
    a1 = b2 % 2
    a3 = b6 % 2
    a2, r2 = divmod(b2 - a1 * a1, 4)
    a4, r4 = divmod(b4 - a1 * a3, 2)
    a6, r6 = divmod(b6 - a3 * a3, 4)
    if r2 or r4 or r6:
        raise ValueError(f"no integral model for b-invariants ({b2}, {b4}, {b6})")
    return CurveConfig(a1=a1, a2=a2, a3=a3, a4=a4, a6=a6, **kwargs)


_KEYS = ("label", "a1", "a2", "a3", "a4", "a6", "N", "eps")


def parse_curve(text: str, source: str = "<string>") -> CurveConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{source}: expected 'key = value'", line=lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in _KEYS:
            raise ParseError(f"{source}: unknown key", line=lineno, field=key)
        if key in values:
            raise ParseError(f"{source}: duplicate key", line=lineno, field=key)
        if key == "label":
            values[key] = value
            continue
        try:
            values[key] = int(value)
        except ValueError:
            raise ParseError(f"{source}: not a decimal integer: {value!r}", line=lineno, field=key) from None
    missing = [k for k in _KEYS if k not in values]
    if missing:
        raise ParseError(f"{source}: missing keys {', '.join(missing)}")
    if values["N"] < 1:
        raise ParseError(f"{source}: conductor must be positive", field="N")
    if values["eps"] not in (1, -1):
        raise ParseError(f"{source}: eps must be +1 or -1", field="eps")
    curve = CurveConfig(**values)
    if curve.discriminant == 0:
        raise SingularCurve(f"{source}: discriminant is zero for {curve.ainvs}")
    return curve


def load_curve(path) -> CurveConfig:
    path = Path(path)
    return parse_curve(path.read_text(), source=str(path))


def bundled_curve(name: str) -> CurveConfig:
    """One of the curve files shipped with the package (``37a``, ``e0``)."""
    return load_curve(CURVE_DIR / f"{name}.curve")


def _count_affine(curve: CurveConfig, p: int) -> int:
    a1, a2, a3, a4, a6 = (a % p for a in curve.ainvs)
    if p == 2:
        return sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % 2 == 0
        )
    # y^2 + b y = f(x) has 1 + legendre(b^2 + 4 f) solutions
    squares = bytearray(p)
    for y in range(1, (p + 1) // 2):
        squares[y * y % p] = 1
    count = 0
    for x in range(p):
        b = (a1 * x + a3) % p
        f = (((x + a2) * x + a4) * x + a6) % p
        disc = (b * b + 4 * f) % p
        count += 1 if disc == 0 else (2 if squares[disc] else 0)
    return count


def _count_singular(curve: CurveConfig, p: int) -> int:
    a1, a2, a3, a4, a6 = (a % p for a in curve.ainvs)

    def singular(x, y):
        g = y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)
        gx = a1 * y - (3 * x * x + 2 * a2 * x + a4)
        gy = 2 * y + a1 * x + a3
        return g % p == 0 and gx % p == 0 and gy % p == 0

    if p == 2:
        return sum(1 for x in range(2) for y in range(2) if singular(x, y))
    half = pow(2, -1, p)
    return sum(1 for x in range(p) if singular(x, (-(a1 * x + a3) * half) % p))


def ap(curve: CurveConfig, p: int, cap: int = AP_CAP) -> int:
    """Trace of Frobenius at the prime p.

    Good reduction: p + 1 - #E(F_p).  Bad reduction: p - #E_ns(F_p), where
    the nonsingular count includes the point at infinity; this gives 1, -1
    or 0 for split, nonsplit and additive reduction.
    """
    if p > cap:
        raise PrimeTooLarge(f"p = {p} exceeds the point-counting cap {cap}")
    affine = _count_affine(curve, p)
    if curve.discriminant % p:
        return p + 1 - (affine + 1)
    nonsingular = affine + 1 - _count_singular(curve, p)
    return p - nonsingular


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


@dataclass
class AnTable:
    T: int
    a: list[int] = field(repr=False)  # a[0] unused, a[n] for 1 <= n <= T

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.T:
            raise IndexError(n)
        return self.a[n]


def _ap_job(args):
    curve, p, cap = args
    return ap(curve, p, cap)


def an_table(curve: CurveConfig, T: int, cap: int = AP_CAP, workers: int | None = None) -> AnTable:
    """a_1 .. a_T from a_p, the prime-power recursion and multiplicativity.

    ``workers`` > 1 counts points for distinct primes in a process pool.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    primes = primes_up_to(T)
    if workers and workers > 1 and primes:
        with ProcessPoolExecutor(workers) as pool:
            traces = dict(zip(primes, pool.map(_ap_job, [(curve, p, cap) for p in primes], chunksize=16)))
    else:
        traces = {p: ap(curve, p, cap) for p in primes}
    a = [0] * (T + 1)
    a[1] = 1
    spf = list(range(T + 1))  # smallest prime factor
    for p in primes:
        if p * p > T:
            break
        for m in range(p * p, T + 1, p):
            if spf[m] == m:
                spf[m] = p
    for p in primes:
        chi = 0 if curve.N % p == 0 else 1
        prev2, prev = 1, traces[p]
        a[p] = prev
        q = p * p
        while q <= T:
            prev2, prev = prev, traces[p] * prev - chi * p * prev2
            a[q] = prev
            q *= p
    for n in range(2, T + 1):
        p = spf[n]
        m = n
        while m % p == 0:
            m //= p
        if m > 1:
            a[n] = a[n // m] * a[m]
    return AnTable(T, a)


def tail_bound(N: int, T: int, prec_bits: int = 64) -> BigReal:
    """Bound on 2 sum_{n>T} |a_n|/n E1(u n) with u = 2 pi/sqrt(N).

    Uses |a_n| <= d(n) sqrt(n) <= 2n, E1(z) <= e^-z / z and a geometric sum:
    4 e^(-u(T+1)) / (u (T+1) (1 - e^-u)).
    """
    ctx = numeval._context(prec_bits + 16)
    u = 2 * ctx.pi / ctx.sqrt(N)
    value = 4 * ctx.exp(-u * (T + 1)) / (u * (T + 1) * (1 - ctx.exp(-u)))
    return BigReal(value, prec_bits)


def lprime_approx(
    curve: CurveConfig,
    T: int,
    prec_bits: int = 128,
    method: str = "auto",
    switchover: float = numeval.SWITCHOVER,
    table: AnTable | None = None,
) -> tuple[BigReal, BigReal]:
    """Truncated series for L'(E, 1) and a bound on what was left out.

    Terms whose a priori size 2|a_n|/n * e^-x/x is below 2^-wp are not
    evaluated; their bounds are added to the returned error together with
    the envelope for n > T.
    """
    if curve.eps != -1:
        raise ValueError(f"{curve.label}: the first-derivative formula needs eps = -1, got {curve.eps}")
    if T < 1:
        raise ValueError("T must be >= 1")
    table = table or an_table(curve, T)
    wp = prec_bits + T.bit_length() + 16
    ctx = numeval._context(wp)
    u = 2 * ctx.pi / ctx.sqrt(curve.N)
    cutoff = ctx.ldexp(1, -wp)
    total = BigReal(0, wp)
    skipped = ctx.zero
    for n in range(1, T + 1):
        an = table.a[n]
        if an == 0:
            continue
        x = u * n
        envelope = 2 * abs(an) * ctx.exp(-x) / (x * n)
        if envelope < cutoff:
            skipped += envelope
            continue
        g = numeval.g1(BigReal(x, wp), wp, method=method, switchover=switchover)
        total = total + g * BigReal(ctx.mpf(2 * an) / n, wp)
    tail = tail_bound(curve.N, T, wp) + BigReal(skipped, wp)
    return BigReal(total, prec_bits), BigReal(tail, prec_bits)
