"""Run every exact identity up to a bound and collect the outcomes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import convergents as cv
from . import hankelmat as hm
from . import seriesqd as sq
from .errors import IdentityError, QDBreakdown


@dataclass(frozen=True)
class CheckResult:
    family: str
    ok: bool
    checked: int
    detail: str = ""


def _qd_closed_form(kmax):
    tab = sq.qd_table(sq.FactorialSeq, kmax, kmax)
    bad = [
        (k, n)
        for k in range(1, kmax + 1)
        for n in range(kmax + 1)
        if tab.q[k - 1][n] != -(n + k) or tab.e[k][n] != -k
    ]
    return len(bad) == 0, 2 * kmax * (kmax + 1), f"bad entries {bad[:5]}" if bad else ""


def _hankel_ratios(kmax):
    bad = []
    for seq in (sq.FactorialSeq, sq.ShiftedFactorialSeq):
        bad += [(seq.name,) + f[:3] for f in sq.verify_qd_hankel(seq, kmax, 4)]
    return not bad, 2 * 2 * kmax * 5, f"mismatches {bad[:5]}" if bad else ""


def _cf_coeffs(kmax):
    cf = sq.cf_coeffs(sq.FactorialSeq, kmax)
    expected = [Fraction(1)] + [Fraction((j + 1) // 2) for j in range(1, 2 * kmax + 1)]
    if list(cf.d) != expected:
        return False, 1, f"d = {cf.d}"
    series = sq.cf_series(cf, 2 * kmax + 1)
    ok = series == sq.FactorialSeq.take(2 * kmax + 1)
    return ok, 2, "" if ok else "re-expansion mismatch"


def _det_A(kmax):
    for k in range(1, kmax + 1):
        if hm.det_A(k) != sq.hankel_det(sq.FactorialSeq, 0, k):
            raise IdentityError(f"det A^({k - 1}) differs from H_{k}^(0)")
    return True, kmax, ""


def _last_row_minors(kmax):
    count = 0
    for k in range(2, kmax + 1):
        for m in range(1, k + 1):
            hm.minor_A(k, k, m)
            count += 1
    return True, count, ""


def _h1(kmax):
    for k in range(2, kmax + 1):
        hm.h1_offset_det(k)
    return True, kmax - 1, ""


def _f_and_orthogonality(kmax):
    bad = []
    count = 0
    for k in range(2, kmax + 1):
        for m in range(1, k + 1):
            count += 1
            want = (-1) ** (k - 1) if m == k else 0
            if hm.f_eval(k, m) != want:
                bad.append(("f", k, m))
            if hm.row_dot_b(k, m) != (1 if m == k else 0):
                bad.append(("a.b", k, m))
    return not bad, count, f"{bad[:5]}" if bad else ""


def _congruence(fn, target):
    def check(kmax):
        bad = [k for k in range(1, kmax + 1) if fn(k).polynomial_part() != target(k)]
        return not bad, kmax, f"k = {bad}" if bad else ""

    return check


def _s_identities(kmax):
    bad = [f for k in range(2, kmax + 1) for f in cv.check_S_identities(k)]
    return not bad, kmax - 1, f"{bad[:5]}" if bad else ""


def _rs_conditions(kmax):
    bad = [f for k in range(1, kmax + 1) for f in cv.check_RS_conditions(k)]
    return not bad, kmax, f"{bad[:5]}" if bad else ""


def _coefficients(kmax):
    for k in range(kmax + 1):
        for l in range(k + 1):
            cv.s_coeff(k, l)
    for n in range(1, kmax + 1):
        for k in range(n):
            cv.r_coeff(n, k)
    return True, kmax, ""


def _closed_forms(kmax):
    table = cv.convergent_table(2 * kmax)
    bad = []
    for n in range(1, kmax + 1):
        for parity, idx in (("odd", 2 * n - 1), ("even", 2 * n)):
            p, q = table[idx]
            if cv.closed_form_P(n, parity) != p or cv.closed_form_Q(n, parity) != q:
                bad.append(idx)
    return not bad, 2 * kmax, f"indices {bad}" if bad else ""


def _bridge(kmax):
    bad = [f for n in range(1, kmax + 1) for f in cv.bridge_Q_s(n)]
    return not bad, kmax, f"{bad[:5]}" if bad else ""


def _determinant(kmax):
    bad = [n for n in range(1, 2 * kmax + 1) if cv.determinant_defect(n) != (-1) ** (n - 1)]
    return not bad, 2 * kmax, f"n = {bad}" if bad else ""


def _pade(kmax):
    bad = [n for n in range(1, kmax + 1) if cv.pade_contact_order(n) < n]
    return not bad, kmax, f"n = {bad}" if bad else ""


CHECKS = [
    ("qd closed form q=-(n+k), e=-k", _qd_closed_form),
    ("qd vs Hankel ratios", _hankel_ratios),
    ("cf coefficients and re-expansion", _cf_coeffs),
    ("det A = (1!...(k-1)!)^2", _det_A),
    ("last-row minors of A", _last_row_minors),
    ("H_{k-1}^(1) closed form", _h1),
    ("f_{k-1}(k, m-1) and a_m.b_k", _f_and_orthogonality),
    ("odd-step congruence, difference form", _congruence(cv.check_congruence_42, factorial)),
    ("odd-step congruence", _congruence(cv.check_congruence_43, factorial)),
    ("even-step congruence", _congruence(cv.check_congruence_even_step, lambda k: factorial(k + 1))),
    ("S linear conditions and binomial lemmas", _s_identities),
    ("R/S coefficient conditions", _rs_conditions),
    ("R, S coefficient closed forms", _coefficients),
    ("closed-form P_n, Q_n", _closed_forms),
    ("Q/P vs s/r bridge", _bridge),
    ("P_n Q_n-1 - P_n-1 Q_n = (-1)^(n-1)", _determinant),
    ("Pade order of contact", _pade),
]


def run_identity_sweep(kmax: int = 8):
    """Yield a :class:`CheckResult` per identity family, in a fixed order."""
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    for name, fn in CHECKS:
        try:
            ok, count, detail = fn(kmax)
        except (IdentityError, QDBreakdown) as exc:
            ok, count, detail = False, 0, str(exc)
        yield CheckResult(name, ok, count, detail)
