from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from langcount import counting, series
from langcount.series import TruncatedSeries as S

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def series_with(order, const=None):
    coeffs = st.lists(small_fracs, min_size=order + 1, max_size=order + 1)
    if const is None:
        return coeffs.map(S)
    return coeffs.map(lambda cs: S([const] + cs[1:]))


# --- add / mul -------------------------------------------------------------


def test_add_cancellation():
    assert S([1, 1]) + S([1, -1]) == S([2, 0])


def test_add_identity():
    s = S([3, Fraction(1, 2), -7])
    assert S.zero(2) + s == s


def test_add_truncates_to_shorter_order():
    assert (S.one(3) + S.one(5)).order == 3


def test_mul_square():
    assert S([1, 1, 0]) * S([1, 1, 0]) == S([1, 2, 1])


def test_mul_identity():
    s = S([2, Fraction(-1, 3), 5, 0])
    assert s * S.one(3) == s


def test_mul_hand_convolution():
    # (1 + 2z + z^2)(1 + 4z^2) = 1 + 2z + 5z^2 + 8z^3 + 4z^4
    assert S([1, 2, 1, 0]) * S([1, 0, 4, 0]) == S([1, 2, 5, 8])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 12).flatmap(lambda n: st.tuples(series_with(n), series_with(n), series_with(n))))
def test_mul_commutative_and_associative(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


# --- exp / log --------------------------------------------------------------


def test_exp_zero():
    assert series.exp(S.zero(5)) == S.one(5)


def test_exp_of_geometric_gives_kappa():
    # z/(1-z) = z + z^2 + z^3
    assert series.exp(S([0, 1, 1, 1])) == S([1, 1, Fraction(3, 2), Fraction(13, 6)])


def test_exp_log_one_plus_z():
    assert series.exp(series.log(S([1, 1, 0, 0, 0]))) == S([1, 1, 0, 0, 0])


def test_log_one():
    assert series.log(S.one(4)) == S.zero(4)


def test_log_exp_polynomial():
    a = S([0, 1, 1, 0, 0, 0, 0])
    assert series.log(series.exp(a)) == a


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        series.exp(S([1, 1]))


def test_log_rejects_bad_constant():
    with pytest.raises(ValueError):
        series.log(S([2, 1]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 64).flatmap(lambda n: series_with(n, const=0)))
def test_exp_log_round_trip(a):
    assert series.log(series.exp(a)) == a


def test_log_of_ogf_is_lambert_exponent():
    lam = series.lambert_exponent(3, 15)
    table = counting.f_via_product(3, 15)
    assert series.log(S(table.values)) == lam


# --- binomial_power ---------------------------------------------------------


def test_binomial_power_small():
    assert series.binomial_power(2, 1, 0, 2) == S([1, 2, 1])


def test_binomial_power_step_two():
    assert series.binomial_power(4, 2, 0, 4) == S([1, 0, 4, 0, 6])


def test_binomial_power_product_oracle_step():
    assert series.binomial_power(2**3, 3, 0, 3) == S([1, 0, 0, 8])


def test_binomial_power_huge_exponent():
    M = 10**40
    s = series.binomial_power(M, 1, 0, 3)
    assert s[2] == M * (M - 1) // 2
    assert s[3] == M * (M - 1) * (M - 2) // 6


def test_binomial_power_marked():
    s = series.binomial_power(3, 2, 1, 4)
    assert s.coeffs == ((1,), (), (0, 3), (), (0, 0, 3))
    assert s.at_u(1) == series.binomial_power(3, 2, 0, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 50), st.integers(0, 50), st.integers(1, 4), st.integers(0, 20))
def test_binomial_power_exponents_add(M1, M2, step, order):
    lhs = series.binomial_power(M1, step, 0, order) * series.binomial_power(M2, step, 0, order)
    assert lhs == series.binomial_power(M1 + M2, step, 0, order)


def test_marked_product_matches_exponent_addition():
    a = series.binomial_power(5, 1, 1, 6)
    b = series.binomial_power(7, 1, 1, 6)
    assert a * b == series.binomial_power(12, 1, 1, 6)


# --- lambert_exponent -------------------------------------------------------


def test_lambert_order_one():
    assert series.lambert_exponent(2, 1) == S([0, 2])


def test_lambert_m2_order3():
    assert series.lambert_exponent(2, 3) == S([0, 2, 3, Fraction(26, 3)])


@pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
def test_lambert_matches_divisor_sums(m):
    lam = series.lambert_exponent(m, 60)
    assert list(lam.coeffs[1:]) == counting.a_coefficients(m, 60)


def test_lambert_rejects_m0():
    with pytest.raises(ValueError):
        series.lambert_exponent(0, 3)


def test_lambert_direct_double_sum():
    # literal double sum over k and the geometric expansion, as an oracle
    m, N = 3, 12
    acc = [Fraction(0)] * (N + 1)
    for k in range(1, N + 1):
        for j in range(1, N + 1):
            if k * j <= N:
                acc[k * j] += Fraction((-1) ** (k - 1), k) * m**j
    assert series.lambert_exponent(m, N) == S(acc)
