import math
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from langcount import asymptotics, counting, fixtures
from langcount.asymptotics import SaddleConfig
from langcount.errors import AccuracyError


def log_phi_oracle(m, digits=60):
    """``log phi(1/m)`` regrouped by word length: ``sum_j (m^j log(1 + m^-j) - 1)``.

    The j-th term is about ``-m^-j / 2``, so stopping once ``m^-j < 1e-25``
    leaves an error far below double precision.
    """
    with localcontext() as ctx:
        ctx.prec = digits
        s = Decimal(0)
        j = 1
        while Decimal(m) ** -j >= Decimal("1e-25"):
            mj = Decimal(m) ** j
            s += mj * (1 + 1 / mj).ln() - 1
            j += 1
        return float(s)


# --- kappa ------------------------------------------------------------------


def test_kappa_small():
    assert asymptotics.kappa(3) == [1, 1, Fraction(3, 2), Fraction(13, 6)]


def test_kappa_recurrence_oracle():
    # a(n) = (2n-1) a(n-1) - (n-1)(n-2) a(n-2) for a(n) = n! kappa_n
    a = [1, 1]
    for n in range(2, 41):
        a.append((2 * n - 1) * a[-1] - (n - 1) * (n - 2) * a[-2])
    ks = asymptotics.kappa(40)
    assert [k * math.factorial(n) for n, k in enumerate(ks)] == a


def test_kappa_partition_route_matches():
    ks = asymptotics.kappa(60)
    assert all(asymptotics.kappa_via_partitions(n) == ks[n] for n in range(61))


def test_kappa_fixture():
    values = fixtures.load("A000262")
    ks = asymptotics.kappa(len(values) - 1)
    assert values == [k * math.factorial(n) for n, k in enumerate(ks)]


def test_kappa_asymptotic_trend():
    ks = asymptotics.kappa(800)
    errs = [abs(math.exp(asymptotics.log_rational(ks[n]) - asymptotics.log_kappa_asymptotic(n)) - 1) for n in (50, 200, 800)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 0.05


def test_kappa_rejects_negative():
    with pytest.raises(ValueError):
        asymptotics.kappa(-1)


# --- phi --------------------------------------------------------------------


def test_phi_two_value():
    phi = asymptotics.phi_at(2)
    assert phi.value == pytest.approx(0.6602994483152114, rel=1e-12)
    assert phi.terms_used == 41
    assert phi.tail_bound < 1e-12


@pytest.mark.parametrize("m", [2, 3, 5, 10, 100])
def test_phi_matches_product_form_oracle(m):
    phi = asymptotics.phi_at(m)
    assert phi.log_value == pytest.approx(log_phi_oracle(m), abs=1e-12)


def test_phi_tail_bound_is_honest():
    exact = log_phi_oracle(2)
    for tol in (1e-3, 1e-6, 1e-9):
        phi = asymptotics.phi_at(2, tol)
        assert abs(phi.log_value - exact) <= phi.tail_bound


def test_phi_rejects_m1():
    with pytest.raises(ValueError):
        asymptotics.phi_at(1)


def test_phi_increasing_in_m():
    vals = [asymptotics.phi_at(m).value for m in (2, 3, 4, 10, 1000)]
    assert all(0 < a < b < 1 for a, b in zip(vals, vals[1:]))


# --- closed forms -----------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 1000), st.integers(1, 5000))
def test_growth_log_formula(m, n):
    assert asymptotics.growth_log(m, n) == pytest.approx(n * math.log(m) + 2 * math.sqrt(n) - 0.75 * math.log(n))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 50), st.integers(1, 500))
def test_joint_over_leading_is_inverse_phi(m, n):
    lead = asymptotics.leading_asymptotic(m, n)
    joint = asymptotics.joint_asymptotic(m, n)
    assert math.exp(joint.log_value - lead.log_value) == pytest.approx(1 / asymptotics.phi_at(m).value, rel=1e-12)


def test_leading_ratio_at_2000():
    f = counting.f_via_gf(2, 2000)[2000]
    assert 0.8 < asymptotics.leading_asymptotic(2, 2000).ratio_to(f) < 1.2


def test_leading_error_bounded_by_quarter_power():
    # |ratio - 1| * n^(1/4) stays bounded (the full expansion starts no later than n^(-1/4))
    ns = [100, 200, 400, 800]
    errs = asymptotics.leading_relative_errors(2, ns)
    assert max(e * n**0.25 for e, n in zip(errs, ns)) < 1.0


def test_leading_error_decreasing():
    errs = asymptotics.leading_relative_errors(3, [50, 100, 200, 400])
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_large_m_values():
    ratios = [asymptotics.large_m_ratio(5, m) for m in (10**2, 10**4, 10**6)]
    assert all(r < 1 for r in ratios)
    assert ratios[0] < ratios[1] < ratios[2]
    assert ratios[0] == pytest.approx(0.99741, abs=1e-5)


def test_large_m_estimate_matches_kappa():
    est = asymptotics.large_m_estimate(10, 3)
    assert est.components["kappa"] == Fraction(13, 6)
    assert math.exp(est.log_value) == pytest.approx(13 / 6 * 1000)


def test_estimates_reject_bad_args():
    with pytest.raises(ValueError):
        asymptotics.leading_asymptotic(1, 10)
    with pytest.raises(ValueError):
        asymptotics.joint_asymptotic(2, 0)
    with pytest.raises(ValueError):
        asymptotics.large_m_ratio(5, 1)


def test_error_decay_slope_exact_power():
    ns = [10, 20, 40, 80]
    assert asymptotics.error_decay_slope(ns, [3 * n**-0.5 for n in ns]) == pytest.approx(-0.5)


def test_phi_uniform_bound_dominates_contour():
    import numpy as np

    for m, n in ((2, 50), (3, 200)):
        r = SaddleConfig.radius(n)
        z = r * np.exp(1j * np.linspace(-np.pi, np.pi, 257)) / m
        assert np.max(np.abs(asymptotics._log_phi_complex(z, m))) <= asymptotics.phi_uniform_bound(m, n)


def test_commuting_limits_along_diagonal():
    # phi(1/m) -> 1, so leading and joint laws merge as m = n grows
    gaps = []
    for m in (16, 64, 256):
        f = counting.f_via_gf(m, m)[m]
        gaps.append(abs(asymptotics.leading_asymptotic(m, m).ratio_to(f) - asymptotics.joint_asymptotic(m, m).ratio_to(f)))
    assert gaps[0] > gaps[1] > gaps[2]


# --- saddle contour ---------------------------------------------------------


def test_saddle_small_example():
    assert math.exp(asymptotics.saddle_contour_estimate(2, 2)) == pytest.approx(5, rel=1e-9)


@pytest.mark.parametrize("m,n", [(2, 10), (3, 50), (5, 30), (2, 200)])
def test_saddle_matches_exact(m, n):
    f = counting.f_via_gf(m, n)[n]
    assert asymptotics.saddle_contour_estimate(m, n) == pytest.approx(asymptotics.log_int(f), abs=1e-9)


def test_saddle_preconditions():
    with pytest.raises(ValueError):
        asymptotics.saddle_contour_estimate(2, 1)
    with pytest.raises(ValueError):
        asymptotics.saddle_contour_estimate(1, 10)


def test_saddle_config_validation():
    with pytest.raises(ValueError):
        SaddleConfig(quadrature_points=100)
    with pytest.raises(ValueError):
        SaddleConfig(alpha=0.8)


def test_saddle_refuses_unsettled_quadrature():
    with pytest.raises(AccuracyError):
        asymptotics.saddle_contour_estimate(2, 100, SaddleConfig(quadrature_points=16, rtol=1e-30, max_points=64))


@pytest.mark.xfail(
    strict=True,
    reason="an arc of width n^-0.7 keeps only erf(n^0.05) of the Gaussian mass; measured share is 0.977 at n=400",
)
def test_central_arc_dominates_at_400():
    assert asymptotics.central_arc_fraction(2, 400) >= 0.99


def test_central_arc_share_grows():
    # below n ~ 800 lower-order terms dominate and the share dips; past that it climbs toward 1
    shares = [asymptotics.central_arc_fraction(2, n) for n in (1600, 3200, 6400)]
    assert shares[0] < shares[1] < shares[2] < 1
    assert asymptotics.central_arc_fraction(2, 400) > 0.95
