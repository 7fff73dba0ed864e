"""Convergent polynomials of the unit-numerator fraction for e^x E1(x).

The fraction is ``1/(m_1 + 1/(m_2 + 1/(m_3 + ...)))`` with ``m_n = x`` for
odd n and ``m_n = 2/n`` for even n.  Its n-th convergent is
``P_n(x)/Q_n(x)``.  The helper polynomials ``r_k, s_k`` are the bottom row
of the product of linear fractional transformations that drives the
expansion at infinity; the ``check_*`` functions reproduce the exact
congruences and coefficient identities those polynomials satisfy.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import IdentityError
from .polys import X, LaurentPoly, RatPoly

__all__ = [
    "partial_denominator",
    "convergent_pair",
    "convergent_table",
    "closed_form_P",
    "closed_form_Q",
    "rs_polys",
    "s_coeff",
    "r_coeff",
    "asymptotic_laurent",
    "asymptotic_coeff",
    "check_congruence_42",
    "check_congruence_43",
    "check_congruence_even_step",
    "check_S_identities",
    "check_RS_conditions",
    "bridge_Q_s",
    "expand_at_infinity",
    "pade_contact_order",
    "determinant_defect",
]


def partial_denominator(n: int) -> RatPoly:
    """m_n: the variable x for odd n, the constant 2/n for even n >= 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n % 2:
        return X
    return RatPoly.constant(Fraction(2, n))


def convergent_table(n: int) -> list[tuple[RatPoly, RatPoly]]:
    """[(P_0, Q_0), ..., (P_n, Q_n)] from the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    p_prev, q_prev = RatPoly.constant(1), RatPoly()
    p, q = RatPoly(), RatPoly.constant(1)
    out = [(p, q)]
    for j in range(1, n + 1):
        m = partial_denominator(j)
        p, p_prev = m * p + p_prev, p
        q, q_prev = m * q + q_prev, q
        out.append((p, q))
    return out


def convergent_pair(n: int) -> tuple[RatPoly, RatPoly]:
    return convergent_table(n)[n]


def _check_parity(parity):
    if parity not in ("odd", "even"):
        raise ValueError(f"parity must be 'odd' or 'even', not {parity!r}")


def _rising(l, count):
    # (l+count)(l+count-1)...(l+1); empty product is 1
    out = 1
    for j in range(1, count + 1):
        out *= l + j
    return out


def closed_form_P(n: int, parity: str) -> RatPoly:
    """P_{2n-1} (``parity='odd'``) or P_{2n} (``'even'``) from the double sum."""
    _check_parity(parity)
    if n < 1:
        raise ValueError("n must be >= 1")
    extra = 0 if parity == "odd" else 1
    coeffs = []
    for k in range(n):
        coeffs.append(
            sum(
                (Fraction((-1) ** l * comb(n, l + k + 1), _rising(l, k + extra)) for l in range(n - k)),
                Fraction(0),
            )
        )
    return RatPoly(coeffs)


def closed_form_Q(n: int, parity: str) -> RatPoly:
    """Q_{2n-1} = sum C(n,k+1)/k! x^(k+1);  Q_{2n} = sum C(n,k)/k! x^k."""
    _check_parity(parity)
    if n < 1:
        raise ValueError("n must be >= 1")
    if parity == "odd":
        return RatPoly([0] + [Fraction(comb(n, k + 1), factorial(k)) for k in range(n)])
    return RatPoly(Fraction(comb(n, k), factorial(k)) for k in range(n + 1))


def _rs_table(k):
    r = [RatPoly(), RatPoly.constant(-1)]
    s = [RatPoly.constant(1), RatPoly((1, 1))]
    for j in range(2, k + 1):
        a = RatPoly((Fraction(2 * j - 1, j), Fraction(1, j)))
        b = Fraction(j - 1, j)
        r.append(a * r[j - 1] - b * r[j - 2])
        s.append(a * s[j - 1] - b * s[j - 2])
    return r, s


def rs_polys(k: int) -> tuple[RatPoly, RatPoly]:
    """(r_k, s_k) with r_k = ((2k-1+x)/k) r_{k-1} - ((k-1)/k) r_{k-2}, same for s.

    Initial values (r_0, r_1) = (0, -1) and (s_0, s_1) = (1, 1 + x).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    r, s = _rs_table(k)
    return r[k], s[k]


def s_coeff(k: int, l: int) -> Fraction:
    """Coefficient of x^l in s_k, in closed form C(k, l)/l!."""
    if not 0 <= l <= k:
        raise IndexError(f"need 0 <= l <= k, got k={k}, l={l}")
    value = Fraction(comb(k, l), factorial(l))
    actual = rs_polys(k)[1].coeff(l)
    if value != actual:
        raise IdentityError(f"S_{l}^({k}): closed form {value}, recurrence {actual}")
    return value


def r_coeff(n: int, k: int) -> Fraction:
    """Coefficient of x^k in r_n: -sum_{l=1}^{n-k} C(n,l+k)/(l+k)! (-1)^(l-1) (l-1)!."""
    if not 0 <= k <= n - 1:
        raise IndexError(f"need 0 <= k <= n-1, got n={n}, k={k}")
    value = -sum(
        (Fraction(comb(n, l + k) * (-1) ** (l - 1) * factorial(l - 1), factorial(l + k)) for l in range(1, n - k + 1)),
        Fraction(0),
    )
    actual = rs_polys(n)[0].coeff(k)
    if value != actual:
        raise IdentityError(f"R_{k}^({n}): closed form {value}, recurrence {actual}")
    return value


def asymptotic_coeff(l: int) -> int:
    """Coefficient of x^-l in sum_{l>=1} (-1)^(l-1) (l-1)! x^-l (zero for l < 1)."""
    if l < 1:
        return 0
    return (-1) ** (l - 1) * factorial(l - 1)


def asymptotic_laurent(terms: int) -> LaurentPoly:
    """The asymptotic series of e^x E1(x) truncated after ``terms`` terms."""
    return LaurentPoly(-terms, [asymptotic_coeff(l) for l in range(terms, 0, -1)])


def _lift(p: RatPoly, shift: int = 0) -> LaurentPoly:
    return LaurentPoly.from_poly(p, shift)


def check_congruence_43(k: int) -> LaurentPoly:
    """x^(k+1) r_k + x^(k+1) s_k * (2k+1 asymptotic terms).

    Its polynomial part is the constant k!.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    r, s = rs_polys(k)
    return _lift(r, k + 1) + _lift(s, k + 1) * asymptotic_laurent(2 * k + 1)


def check_congruence_42(k: int) -> LaurentPoly:
    """-k x^k (r_k - r_{k-1}) - k x^k (s_k - s_{k-1}) * (2k asymptotic terms).

    Its polynomial part is the constant k!.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    r, s = rs_polys(k)
    r1, s1 = rs_polys(k - 1)
    return _lift(r - r1, k) * (-k) + _lift(s - s1, k) * (-k) * asymptotic_laurent(2 * k)


def check_congruence_even_step(k: int) -> LaurentPoly:
    """The even-step congruence; its polynomial part is (k+1)!."""
    if k < 1:
        raise ValueError("k must be >= 1")
    r, s = rs_polys(k)
    r1, s1 = rs_polys(k - 1)
    kx = X + k
    num = _lift(kx * r - k * r1) + _lift(kx * s - k * s1) * asymptotic_laurent(2 * k + 2)
    return num * LaurentPoly(k + 1, (-1,))


def _binomial_lemmas(k):
    # the three alternating binomial sums used for the constant term, with
    # their closed forms
    lemma_a = sum(comb(k - 1, l) * (-1) ** (l + k) * _rising(l, k) for l in range(k))
    lemma_b = sum(comb(k - 1, l) * (-1) ** (l + k + 1) * _rising(l, k + 1) for l in range(k))
    lemma_c = sum(comb(k - 2, l) * (-1) ** (l + k) * _rising(l, k) for l in range(k - 1))
    return [
        ("binom-a", lemma_a, -k * factorial(k)),
        ("binom-b", lemma_b, Fraction((k + 1) * k * factorial(k + 1), 2)),
        ("binom-c", lemma_c, Fraction(k * (k - 1) * factorial(k), 2)),
    ]


def check_S_identities(k: int) -> list[tuple[str, int, int]]:
    """Linear conditions on the coefficients S_l^(k) of s_k.

    Checks, for n = 1..k, sum_l S_l (-1)^(l+k-n) (l+k-n)! = 0 (``"s-vanishing"``),
    the normalization sum_l S_l (-1)^(l+k) (l+k)! = k! (``"s-normalization"``) and the
    three binomial lemmas.  Returns the failing ``(identity, k, n)``
    triples; ``n`` is 0 where not applicable.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    S = [s_coeff(k, l) for l in range(k + 1)]
    failures = []
    for n in range(1, k + 1):
        total = sum(S[l] * (-1) ** (l + k - n) * factorial(l + k - n) for l in range(k + 1))
        if total != 0:
            failures.append(("s-vanishing", k, n))
    total = sum(S[l] * (-1) ** (l + k) * factorial(l + k) for l in range(k + 1))
    if total != factorial(k):
        failures.append(("s-normalization", k, 0))
    for name, value, expected in _binomial_lemmas(k):
        if value != expected:
            failures.append((name, k, 0))
    return failures


def check_RS_conditions(k: int) -> list[tuple[str, int, int]]:
    """Coefficient-wise form of the odd-step congruence, indexed as stated.

    Three families: the R/S combination vanishes for n = k+1..2k
    (``"rs-vanishing"``), the S-only sums vanish for n = 1..k
    (``"s-window"``) and the constant term equals k! (``"s-constant"``).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    r, s = rs_polys(k)
    R, S = r.coeff, s.coeff
    a = asymptotic_coeff
    failures = []
    for n in range(k + 1, 2 * k + 1):
        total = R(n - k - 1) + sum(S(l + n - k - 1) * a(l) for l in range(1, 2 * k + 2 - n))
        if total != 0:
            failures.append(("rs-vanishing", k, n))
    for n in range(1, k + 1):
        total = sum(S(l + n - k - 1) * a(l) for l in range(k - n + 1, 2 * k + 2 - n))
        if total != 0:
            failures.append(("s-window", k, n))
    total = sum(S(l - k - 1) * a(l) for l in range(k + 1, 2 * k + 2))
    if total != factorial(k):
        failures.append(("s-constant", k, 0))
    return failures


def bridge_Q_s(n: int) -> list[tuple[str, int]]:
    """Relate the convergents to r_n, s_n.

    Q_{2n} = s_n, Q_{2n+1} = (x+n) s_n - n s_{n-1}, P_{2n} = -r_n and
    P_{2n+1} = (n+1)(r_n - r_{n+1}).  Returns the failing relations.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    table = convergent_table(2 * n + 1)
    r, s = _rs_table(n + 1)
    checks = [
        ("Q_2n = s_n", table[2 * n][1], s[n]),
        ("Q_2n+1 = (x+n)s_n - n s_n-1", table[2 * n + 1][1], (X + n) * s[n] - n * s[n - 1]),
        ("P_2n = -r_n", table[2 * n][0], -r[n]),
        ("P_2n+1 = (n+1)(r_n - r_n+1)", table[2 * n + 1][0], (n + 1) * (r[n] - r[n + 1])),
    ]
    return [(name, n) for name, lhs, rhs in checks if lhs != rhs]


def expand_at_infinity(p: RatPoly, q: RatPoly, order: int) -> list[Fraction]:
    """Coefficients of x^0, x^-1, ..., x^-(order-1) in the expansion of p/q."""
    if not q:
        raise ZeroDivisionError("zero denominator")
    # p/q = t^(dq-dp) * prev(p)(t) / prev(q)(t) with t = 1/x
    dp, dq = p.degree, q.degree
    if not p:
        return [Fraction(0)] * order
    shift = dq - dp
    if shift < 0:
        raise ValueError("p/q has a pole at infinity")
    rp = list(reversed(p.coeffs))
    rq = list(reversed(q.coeffs))
    need = max(order - shift, 0)
    quot = []
    rem = rp + [Fraction(0)] * need
    for i in range(need):
        c = rem[i] / rq[0]
        quot.append(c)
        if c:
            for j, b in enumerate(rq):
                if i + j < len(rem):
                    rem[i + j] -= c * b
    return ([Fraction(0)] * shift + quot)[:order]


def pade_contact_order(n: int, limit: int | None = None) -> int:
    """Largest j such that P_n/Q_n and the asymptotic series agree through x^-j."""
    limit = 2 * n + 4 if limit is None else limit
    p, q = convergent_pair(n)
    coeffs = expand_at_infinity(p, q, limit + 1)
    for j, c in enumerate(coeffs):
        if c != asymptotic_coeff(j):
            return j - 1
    return limit


def determinant_defect(n: int) -> RatPoly:
    """P_n Q_{n-1} - P_{n-1} Q_n, which is the constant (-1)^(n-1)."""
    table = convergent_table(n)
    (p1, q1), (p, q) = table[n - 1], table[n]
    return p * q1 - p1 * q
