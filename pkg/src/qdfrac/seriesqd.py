"""Formal power series in 1/x, Hankel determinants and the QD algorithm.

A series ``sum_{n>=0} c_n x^{-n}`` is described by its coefficient
generator.  The quotient-difference tableau built from it yields the
coefficients of the corresponding continued fraction

    d0 / (1 + d1 / (x + d2 / (1 + d3 / (x + ...))))

whose truncations are Pade approximants of the series.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from .errors import QDBreakdown

__all__ = [
    "CoeffSeq",
    "FactorialSeq",
    "ShiftedFactorialSeq",
    "det",
    "hankel_matrix",
    "hankel_det",
    "QDTableau",
    "qd_table",
    "verify_qd_hankel",
    "CFCoeffs",
    "cf_coeffs",
    "cf_series",
]


class CoeffSeq:
    """Memoized coefficient sequence, extended by ``c_n = 0`` for ``n < 0``.

    The memo table is guarded by a lock; writes are idempotent because the
    generator is deterministic.
    """

    def __init__(self, generator: Callable[[int], object], name: str = "c"):
        self._gen = generator
        self.name = name
        self._memo: dict[int, Fraction] = {}
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        try:
            return self._memo[n]
        except KeyError:
            pass
        value = Fraction(self._gen(n))
        with self._lock:
            return self._memo.setdefault(n, value)

    def take(self, count: int) -> list[Fraction]:
        return [self[n] for n in range(count)]

    def __repr__(self):
        return f"CoeffSeq({self.name})"


def _factorial_coeff(n):
    return (-1) ** n * factorial(n)


def _shifted_factorial_coeff(n):
    return factorial(n + 1)


# c_n = (-1)^n n!, the series of x*F(x) with F(x) = e^x E1(x).
FactorialSeq = CoeffSeq(_factorial_coeff, "(-1)^n n!")

# c_n = (n+1)!, a second sequence with nonvanishing Hankel determinants.
ShiftedFactorialSeq = CoeffSeq(_shifted_factorial_coeff, "(n+1)!")


def det(matrix) -> Fraction:
    """Exact determinant by rational Gaussian elimination.

    The pivot in each column is the first nonzero entry at or below the
    diagonal.  The empty matrix has determinant 1.
    """
    a = [[Fraction(v) for v in row] for row in matrix]
    size = len(a)
    result = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, size):
            factor = a[r][col] / p
            if factor:
                row_r, row_c = a[r], a[col]
                for j in range(col + 1, size):
                    row_r[j] -= factor * row_c[j]
    return result


def hankel_matrix(c: CoeffSeq, n: int, k: int) -> list[list[Fraction]]:
    return [[c[n + i + j] for j in range(k)] for i in range(k)]


def hankel_det(c: CoeffSeq, n: int, k: int) -> Fraction:
    """H_k^(n) = det(c_{n+i+j})_{0<=i,j<k}; H_0 = 1 and H_1 = c_n."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Fraction(1)
    if k == 1:
        return c[n]
    return det(hankel_matrix(c, n, k))


@dataclass
class QDTableau:
    """Rhombus-rule arrays truncated to ``0 <= n <= width``.

    ``q[k][n]`` is stored for ``0 <= k < depth`` and ``e[k][n]`` for
    ``0 <= k <= depth``.
    """

    depth: int
    width: int
    q: list[list[Fraction]] = field(repr=False)
    e: list[list[Fraction]] = field(repr=False)


def qd_table(c: CoeffSeq, depth: int, width: int) -> QDTableau:
    """Run the quotient-difference algorithm on ``c``.

    Uses the coefficients ``c_0 .. c_{2*depth + width}``.  Raises
    :class:`QDBreakdown` when a divisor vanishes.
    """
    if depth < 1 or width < 0:
        raise ValueError("need depth >= 1 and width >= 0")
    span = width + 2 * depth  # number of q_0 entries
    q_row = []
    for n in range(span):
        if c[n] == 0:
            raise QDBreakdown(0, n, "c")
        q_row.append(c[n + 1] / c[n])
    e_row = [Fraction(0)] * (span + 1)
    qs, es = [q_row], [e_row]
    for k in range(depth):
        # e_{k+1}^(n) = q_k^(n+1) - q_k^(n) + e_k^(n+1)
        e_next = [q_row[n + 1] - q_row[n] + e_row[n + 1] for n in range(len(q_row) - 1)]
        es.append(e_next)
        if k + 1 == depth:
            break
        # q_{k+1}^(n) = e_{k+1}^(n+1) / e_{k+1}^(n) * q_k^(n+1)
        q_next = []
        for n in range(len(e_next) - 1):
            if e_next[n] == 0:
                raise QDBreakdown(k + 1, n, "e")
            q_next.append(e_next[n + 1] / e_next[n] * q_row[n + 1])
        qs.append(q_next)
        q_row, e_row = q_next, e_next
    return QDTableau(
        depth=depth,
        width=width,
        q=[row[: width + 1] for row in qs],
        e=[row[: width + 1] for row in es],
    )


def verify_qd_hankel(c: CoeffSeq, depth: int, width: int):
    """Compare the tableau with the Hankel-determinant ratios.

    Returns a list of ``(k, n, name, tableau_value, hankel_value)`` for
    every entry where the two disagree; an empty list means all agree.
    """
    tab = qd_table(c, depth, width)
    memo = {}

    def H(k, n):
        if (k, n) not in memo:
            memo[k, n] = hankel_det(c, n, k)
        return memo[k, n]

    failures = []
    for k in range(1, depth + 1):
        for n in range(width + 1):
            e_h = H(k + 1, n) * H(k - 1, n + 1) / (H(k, n + 1) * H(k, n))
            if tab.e[k][n] != e_h:
                failures.append((k, n, "e", tab.e[k][n], e_h))
            q_h = H(k, n + 1) * H(k - 1, n) / (H(k, n) * H(k - 1, n + 1))
            if tab.q[k - 1][n] != q_h:
                failures.append((k - 1, n, "q", tab.q[k - 1][n], q_h))
    return failures


@dataclass(frozen=True)
class CFCoeffs:
    """Coefficients ``d_0 .. d_{2K}`` of the alternating 1 / x fraction.

    ``inv_x_prefactor`` records that the represented function carries an
    extra leading factor ``1/x`` (the layout of ``sum (-1)^{k-1}(k-1)! x^-k``).
    """

    d: tuple
    inv_x_prefactor: bool = False

    @property
    def depth(self) -> int:
        return (len(self.d) - 1) // 2


def cf_coeffs(c: CoeffSeq, depth: int, inv_x_prefactor: bool = False) -> CFCoeffs:
    tab = qd_table(c, depth, 0)
    d = [c[0]]
    for k in range(1, depth + 1):
        d.append(-tab.q[k - 1][0])
        d.append(-tab.e[k][0])
    return CFCoeffs(tuple(d), inv_x_prefactor)


# truncated power series in t = 1/x, as coefficient lists of fixed length


def _ps_mul(a, b, order):
    out = [Fraction(0)] * order
    for i, ai in enumerate(a[:order]):
        if ai:
            for j, bj in enumerate(b[: order - i]):
                out[i + j] += ai * bj
    return out


def _ps_inv(a, order):
    if a[0] == 0:
        raise ZeroDivisionError("power series with zero constant term")
    out = [Fraction(0)] * order
    out[0] = 1 / a[0]
    for n in range(1, order):
        s = sum((a[j] * out[n - j] for j in range(1, min(n, len(a) - 1) + 1)), Fraction(0))
        out[n] = -s / a[0]
    return out


def cf_series(cf: CFCoeffs, order: int) -> list[Fraction]:
    """Expand the truncated continued fraction in powers of ``1/x``.

    Returns the coefficients of ``x^0 .. x^-(order-1)`` of the function
    the fraction represents (including the ``1/x`` prefactor when flagged).
    """
    d = cf.d
    tail = [Fraction(0)] * order
    for j in range(len(d) - 1, 0, -1):
        if j % 2:
            # d_j / (x + T) = d_j t / (1 + t T)
            denom = [Fraction(1)] + tail[: order - 1]
            shifted = [Fraction(0)] + _ps_inv(denom, order)[: order - 1]
            tail = [d[j] * v for v in shifted]
        else:
            denom = [Fraction(1) + tail[0]] + tail[1:]
            tail = [d[j] * v for v in _ps_inv(denom, order)]
    denom = [Fraction(1) + tail[0]] + tail[1:]
    value = [d[0] * v for v in _ps_inv(denom, order)]
    if cf.inv_x_prefactor:
        value = [Fraction(0)] + value[: order - 1]
    return value
