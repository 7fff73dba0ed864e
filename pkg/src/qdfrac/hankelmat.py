"""The signed-factorial Hankel matrix and its minors.

``A^(k-1)`` is the k x k matrix with entries ``(-1)^(i+j-2) (i+j-2)!``;
it is the Hankel matrix of ``c_n = (-1)^n n!`` at offset 0.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import IdentityError
from .seriesqd import FactorialSeq, det, hankel_det

__all__ = [
    "FactorialMatrix",
    "superfactorial",
    "det_A",
    "det_A_closed_form",
    "minor_A",
    "minor_A_closed_form",
    "h1_offset_det",
    "f_eval",
    "b_vector",
    "row_dot_b",
]


@lru_cache(maxsize=None)
def superfactorial(n: int) -> int:
    """1! 2! ... n!, with the empty product 1 for n <= 0."""
    out = 1
    for i in range(1, n + 1):
        out *= factorial(i)
    return out


class FactorialMatrix:
    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        # 0-based storage of the 1-based a_ij = (-1)^(i+j-2) (i+j-2)!
        self.entries = [[Fraction((-1) ** (i + j) * factorial(i + j)) for j in range(k)] for i in range(k)]

    def minor_matrix(self, row: int, col: int):
        if not (1 <= row <= self.k and 1 <= col <= self.k):
            raise IndexError(f"minor ({row}, {col}) out of range for k={self.k}")
        return [
            [v for j, v in enumerate(r, 1) if j != col]
            for i, r in enumerate(self.entries, 1)
            if i != row
        ]

    def det(self) -> Fraction:
        return det(self.entries)

    def minor(self, row: int, col: int) -> Fraction:
        return det(self.minor_matrix(row, col))


def det_A_closed_form(k: int) -> int:
    return superfactorial(k - 1) ** 2


def det_A(k: int) -> Fraction:
    """det A^(k-1) by elimination, checked against ((k-1)! ... 1!)^2."""
    value = FactorialMatrix(k).det()
    expected = det_A_closed_form(k)
    if value != expected:
        raise IdentityError(f"det A^({k - 1}) = {value}, closed form {expected}")
    return value


def minor_A_closed_form(k: int, m: int) -> Fraction:
    """(-1)^(k+m) / ((m-1)!)^2 / (k-m)! * det A^(k-1)."""
    return Fraction((-1) ** (k + m) * det_A_closed_form(k), factorial(m - 1) ** 2 * factorial(k - m))


def minor_A(k: int, row: int, col: int) -> Fraction:
    """Determinant of A^(k-1) with ``row`` and ``col`` deleted (1-based).

    Deleting the last row is checked against the closed form for the
    last-row minors.
    """
    value = FactorialMatrix(k).minor(row, col)
    if row == k:
        expected = minor_A_closed_form(k, col)
        if value != expected:
            raise IdentityError(f"minor A^({k - 1})_({k},{col}) = {value}, closed form {expected}")
    return value


def h1_offset_det(k: int) -> Fraction:
    """H_{k-1}^(1), which is the (k, 1) minor of A^(k-1)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    value = hankel_det(FactorialSeq, 1, k - 1)
    expected = (-1) ** (k + 1) * factorial(k - 1) * superfactorial(k - 2) ** 2
    if value != expected:
        raise IdentityError(f"H_{k - 1}^(1) = {value}, closed form {expected}")
    minor = minor_A(k, k, 1)
    if value != minor:
        raise IdentityError(f"H_{k - 1}^(1) = {value} but minor (k, 1) = {minor}")
    return value


def f_eval(k: int, m: int) -> int:
    """f_{k-1}(k, m-1) = 1 + sum_{i=1}^{k-1} (-1)^i C(k-1, i) C(m+i-1, i)."""
    if not 1 <= m <= k:
        raise ValueError("need 1 <= m <= k")
    return 1 + sum((-1) ** i * comb(k - 1, i) * comb(m + i - 1, i) for i in range(1, k))


def b_vector(k: int) -> list[Fraction]:
    """Entries 1/((i-1)!)^2 * 1/(k-i)! for i = 1..k: the last column of A^-1."""
    return [Fraction(1, factorial(i - 1) ** 2 * factorial(k - i)) for i in range(1, k + 1)]


def row_dot_b(k: int, m: int) -> Fraction:
    """Row m of A^(k-1) times b_k; equals 1 if m == k else 0."""
    row = FactorialMatrix(k).entries[m - 1]
    return sum((a * b for a, b in zip(row, b_vector(k))), Fraction(0))
