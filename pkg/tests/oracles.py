"""Slow, independent reference implementations used only by the tests."""
from fractions import Fraction
from itertools import permutations
from math import factorial


def perm_sign(p):
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= m[i][p[i]]
            if not term:
                break
        total += term
    return total


def hankel_brute(coeff, n, k):
    return leibniz_det([[Fraction(coeff(n + i + j)) for j in range(k)] for i in range(k)])


def signed_factorial(n):
    return (-1) ** n * factorial(n)


def convergent_value(x, n):
    """P_n/Q_n at a rational point by top-down evaluation of the fraction."""
    x = Fraction(x)
    t = Fraction(0)
    for j in range(n, 0, -1):
        m = x if j % 2 else Fraction(2, j)
        t = 1 / (m + t)
    return t
