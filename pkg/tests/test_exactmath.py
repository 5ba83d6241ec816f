import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_ehrhart.errors import DomainError, InputError
from matroid_ehrhart.exactmath import (
    T,
    BiPolyInt,
    UniPoly,
    binomial,
    count_compositions,
    is_log_concave,
    is_real_rooted,
    is_unimodal,
    lagrange_interpolate,
    poly_gcd,
    rising_binomial_poly,
    shift,
    square_free_part,
    stirling_first_unsigned,
    sturm_distinct_real_roots,
)

D24 = UniPoly([Fraction(6, 6), Fraction(13, 6), Fraction(9, 6), Fraction(2, 6)])

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(fractions, min_size=0, max_size=11).map(UniPoly)


# -- integers -------------------------------------------------------------------


@pytest.mark.parametrize("a,b,want", [(0, 0, 1), (5, 2, 10), (6, 3, 20), (4, -1, 0), (4, 5, 0)])
def test_binomial_values(a, b, want):
    assert binomial(a, b) == want


def test_binomial_rejects_negative_top():
    with pytest.raises(DomainError):
        binomial(-1, 0)


def test_stirling_values():
    assert stirling_first_unsigned(0, 0) == 1
    assert stirling_first_unsigned(4, 2) == 11
    assert all(stirling_first_unsigned(n, n) == 1 for n in range(1, 6))
    assert stirling_first_unsigned(5, 0) == 0


def test_stirling_rows_are_rising_factorial_coefficients():
    # oracle: expand t(t+1)...(t+a-1) by repeated multiplication
    for a in range(13):
        p = UniPoly([1])
        for i in range(a):
            p = p * UniPoly([i, 1])
        assert [stirling_first_unsigned(a, b) for b in range(a + 1)] == [p[b] for b in range(a + 1)]


def test_rising_binomial_matches_stirling_table():
    # a! C(t+a, a) = sum_b [a+1 brack b+1] t^b
    for a in range(13):
        p = rising_binomial_poly(a) * math.factorial(a)
        assert [p[b] for b in range(a + 1)] == [stirling_first_unsigned(a + 1, b + 1) for b in range(a + 1)]


def test_rising_binomial_examples():
    assert rising_binomial_poly(0) == UniPoly([1])
    assert rising_binomial_poly(1) == T + 1
    assert rising_binomial_poly(3)(2) == 10


# -- polynomials ----------------------------------------------------------------


def test_zero_polynomial_degree():
    assert UniPoly([]).degree == -1
    assert UniPoly([0, 0]).degree == -1
    assert UniPoly([0, 0]) == UniPoly([])


def test_interpolation_examples():
    assert lagrange_interpolate([(0, 1), (1, 2)]) == T + 1
    assert lagrange_interpolate([(0, 1), (1, 5), (2, 14), (3, 30)]) == D24
    assert lagrange_interpolate([(0, 7)]) == UniPoly([7])


def test_interpolation_rejects_duplicates():
    with pytest.raises(InputError):
        lagrange_interpolate([(1, 2), (1, 3)])


@settings(max_examples=60, deadline=None)
@given(polys)
def test_interpolation_inverts_evaluation(p):
    d = max(p.degree, 0)
    assert lagrange_interpolate([(t, p(t)) for t in range(d + 1)]) == p


def test_shift_examples():
    assert shift(T + 1, -1) == T
    assert shift(D24, -1) == UniPoly([0, Fraction(1, 6), Fraction(3, 6), Fraction(2, 6)])
    assert shift(D24, 0) == D24


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(-5, 5))
def test_shift_round_trip_and_pointwise(p, s):
    assert shift(shift(p, s), -s) == p
    q = shift(p, s)
    assert all(q(t) == p(t + s) for t in range(-3, 4))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_ring_operations_pointwise(p, q):
    for t in (-2, 0, 1, 3):
        assert (p + q)(t) == p(t) + q(t)
        assert (p - q)(t) == p(t) - q(t)
        assert (p * q)(t) == p(t) * q(t)


@settings(max_examples=60, deadline=None)
@given(polys, polys.filter(lambda q: q.degree >= 0))
def test_division_with_remainder(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


def test_json_round_trip_and_format():
    data = D24.to_json()
    assert data == {"denominator": "6", "numerators": ["6", "13", "9", "2"]}
    assert UniPoly.from_json(data) == D24
    assert str(D24) == "(2t^3 + 9t^2 + 13t + 6)/6"
    assert D24.format("t", 12) == "(4t^3 + 18t^2 + 26t + 12)/12"
    with pytest.raises(DomainError):
        D24.format("t", 4)
    with pytest.raises(InputError):
        UniPoly.from_json({"denominator": "0", "numerators": ["1"]})


def test_gcd_and_square_free():
    p = (T - 1) ** 2 * (T + 2)
    assert poly_gcd(p, p.derivative()) == (T - 1).monic()
    assert square_free_part(p) == ((T - 1) * (T + 2)).monic()


# -- real roots -----------------------------------------------------------------


def test_sturm_examples():
    assert sturm_distinct_real_roots(UniPoly([1, 1])) == 1
    assert sturm_distinct_real_roots(UniPoly([1, 4, 1])) == 2
    assert sturm_distinct_real_roots(UniPoly([1, 0, 1])) == 0


def test_sturm_rejects_zero():
    with pytest.raises(DomainError):
        sturm_distinct_real_roots(UniPoly([]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6), st.integers(1, 5))
def test_sturm_counts_distinct_integer_roots(roots, scale):
    p = UniPoly([scale])
    for r in roots:
        p = p * (T - r)
    assert sturm_distinct_real_roots(p) == len(set(roots))
    assert is_real_rooted(p)


def test_real_rootedness_with_complex_factor():
    assert not is_real_rooted((T + 1) ** 2 * (T * T + 1))
    assert is_real_rooted(UniPoly([1, 2, 1]))
    assert is_real_rooted(UniPoly([5]))


# -- sequences ------------------------------------------------------------------


@pytest.mark.parametrize(
    "v,lc,um", [([1, 4, 1], True, True), ([1, 0, 1], False, False), ([1], True, True), ([0, 1, 2, 1, 0], True, True)]
)
def test_sequence_shape_examples(v, lc, um):
    assert is_log_concave(v) is lc
    assert is_unimodal(v) is um


def test_unimodal_but_not_log_concave():
    assert is_unimodal([1, 1, 3])
    assert not is_log_concave([1, 1, 3])


# -- bivariate ------------------------------------------------------------------


def test_bivariate_arithmetic_and_json():
    x, y = BiPolyInt.x(), BiPolyInt.y()
    p = x * x + x * y + y * y + x + y
    assert p(2, 3) == 4 + 6 + 9 + 2 + 3
    assert (p - x * y + x + y)(2, 3) == p(2, 3) - 6 + 5
    assert BiPolyInt.from_json(p.to_json()) == p
    assert (p - p).to_json() == {"terms": []}
    assert str(p) == "x^2 + xy + y^2 + x + y"


# -- compositions ---------------------------------------------------------------


@pytest.mark.parametrize("balls,caps", [(0, []), (3, [2, 2]), (4, [1, 3, 2]), (7, [3, 3, 3]), (2, [0, 5])])
def test_count_compositions_against_enumeration(balls, caps):
    want = sum(1 for x in itertools.product(*(range(c + 1) for c in caps)) if sum(x) == balls)
    assert count_compositions(balls, caps) == want
