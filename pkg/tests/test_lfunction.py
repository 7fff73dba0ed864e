import math

import pytest
from hypothesis import given, strategies as st

from qdfrac import lfunction as lf
from qdfrac.errors import ParseError, PrimeTooLarge, SingularCurve

CURVE_37A = """\
# rank one
label = 37a
a1 = 0
a2 = 0
a3 = 1
a4 = -1
a6 = 0
N = 37
eps = -1
"""


@pytest.fixture(scope="module")
def c37():
    return lf.bundled_curve("37a")


@pytest.fixture(scope="module")
def table37(c37):
    return lf.an_table(c37, 10**4)


def brute_ap(curve, p):
    a1, a2, a3, a4, a6 = curve.ainvs
    affine = sum(
        1
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0
    )
    return p - affine  # p + 1 - (affine + 1)


def test_bundled_37a_matches_text(c37):
    assert lf.parse_curve(CURVE_37A) == c37
    assert c37.discriminant == 37
    assert (c37.N, c37.eps) == (37, -1)


def test_e0_long_form():
    e0 = lf.bundled_curve("e0")
    assert e0.ainvs == (0, 0, 1, -7, 6)
    assert e0.eps == -1


def test_e0_transform_from_completed_square():
    # y^2 = 4x^3 - 28x + 25 has b2 = 0, 2 b4 = -28, b6 = 25
    c = lf.from_b_invariants(0, -14, 25, label="e0", N=5077, eps=-1)
    assert c.ainvs == (0, 0, 1, -7, 6)
    # substituting y -> 2y + 1 maps one equation onto the other
    for x in range(-5, 6):
        for y in range(-5, 6):
            lhs = (2 * y + 1) ** 2 - (4 * x**3 - 28 * x + 25)
            rhs = 4 * (y * y + y - (x**3 - 7 * x + 6))
            assert lhs == rhs
    assert c.b_invariants[:3] == (0, -14, 25)


def test_from_b_invariants_rejects_non_integral():
    with pytest.raises(ValueError):
        lf.from_b_invariants(0, 0, 2, label="x", N=1, eps=1)


def test_singular_curve():
    with pytest.raises(SingularCurve):
        lf.parse_curve(CURVE_37A.replace("a3 = 1", "a3 = 0").replace("a4 = -1", "a4 = 0"))


@pytest.mark.parametrize(
    "edit, field",
    [
        (("N = 37", "N = 0"), "N"),
        (("eps = -1", "eps = 2"), "eps"),
        (("a4 = -1", "a4 = -1.5"), "a4"),
        (("a4 = -1", "a4 = -1\nfoo = 3"), "foo"),
        (("a4 = -1", "a4 = -1\na4 = 2"), "a4"),
    ],
)
def test_parse_errors_name_the_field(edit, field):
    with pytest.raises(ParseError) as info:
        lf.parse_curve(CURVE_37A.replace(*edit))
    assert info.value.field == field


def test_parse_error_line_number_and_missing():
    with pytest.raises(ParseError) as info:
        lf.parse_curve(CURVE_37A + "garbage\n")
    assert info.value.line == 10
    with pytest.raises(ParseError):
        lf.parse_curve("label = x\n")


def test_load_curve_from_file(tmp_path):
    path = tmp_path / "c.curve"
    path.write_text(CURVE_37A)
    assert lf.load_curve(path).label == "37a"


def test_ap_known_values(c37):
    assert [lf.ap(c37, p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)] == [-2, -3, -2, -1, -5, -2, 0, 0, 2, 6]
    assert lf.ap(c37, 37) == -1


@pytest.mark.parametrize("name", ["37a", "e0"])
def test_ap_against_brute_force(name):
    c = lf.bundled_curve(name)
    for p in lf.primes_up_to(60):
        if c.discriminant % p:
            assert lf.ap(c, p) == brute_ap(c, p)


def test_bad_prime_reduction_types():
    # y^2 = x^3 + x^2 has a node with rational tangents at 0: split
    split = lf.CurveConfig("t", 0, 1, 0, 0, 0, 1, 1)
    assert lf.ap(split, 7) == 1
    # y^2 = x^3 is a cusp: additive
    cusp = lf.CurveConfig("t", 0, 0, 0, 0, 0, 1, 1)
    assert lf.ap(cusp, 7) == 0
    # y^2 = x^3 - x^2 at p = 7: tangents y = +-ix, -1 is a non-residue mod 7
    nonsplit = lf.CurveConfig("t", 0, -1, 0, 0, 0, 1, 1)
    assert lf.ap(nonsplit, 7) == -1


def test_ap_cap(c37):
    with pytest.raises(PrimeTooLarge):
        lf.ap(c37, 101, cap=100)


def test_hasse_bound(c37, table37):
    for p in lf.primes_up_to(table37.T):
        if p != 37:
            assert table37[p] ** 2 <= 4 * p


def test_an_table_prefix(table37):
    assert [table37[n] for n in range(1, 21)] == [1, -2, -3, 2, -2, 6, -1, 0, 6, 4, -5, -6, -2, 2, 6, -4, 0, -12, 0, -4]
    with pytest.raises(IndexError):
        table37[0]


def test_multiplicativity_exhaustive(table37):
    T = table37.T
    for m in range(2, T // 2 + 1):
        am = table37[m]
        for n in range(m + 1, T // m + 1):
            if math.gcd(m, n) == 1:
                assert table37[m * n] == am * table37[n], (m, n)


def test_prime_power_recursion(table37):
    for p in (2, 3, 5, 7):
        assert table37[p * p] == table37[p] ** 2 - p
    assert table37[37 * 37] == table37[37] ** 2


def test_parallel_table_matches(c37):
    assert lf.an_table(c37, 300, workers=2).a == lf.an_table(c37, 300).a


@given(st.integers(1, 5000))
def test_tail_bound_decreases(T):
    assert lf.tail_bound(37, T + 1) < lf.tail_bound(37, T)


def test_lprime_requires_odd_sign(c37):
    even = lf.CurveConfig("t", *c37.ainvs, N=37, eps=1)
    with pytest.raises(ValueError):
        lf.lprime_approx(even, 10)


def test_lprime_converges(c37):
    v1, t1 = lf.lprime_approx(c37, 100)
    v2, _ = lf.lprime_approx(c37, 200)
    assert abs(v2 - v1) <= t1
    assert abs(float(v2) - 0.3059997738340523) < 1e-15


def test_e0_lprime_vanishes():
    e0 = lf.bundled_curve("e0")
    value, tail = lf.lprime_approx(e0, 2000, prec_bits=64)
    assert abs(float(value)) < 1e-12
    assert float(tail) < 1e-12
