import math

import numpy as np
import pytest
from scipy.special import lambertw

from XiBounds.bounds import (
    a_t_bound,
    b_t_bound,
    epsilon_t,
    find_a_root,
    find_b_root,
    find_threshold,
    g_components,
    g_t,
    integral_lower_minus,
    integral_lower_plus,
    lambert_a,
    lemma3_gap,
    lemma9_dominance_gap,
    main_lower_bound,
    n_envelope,
    n_error,
    n_lower,
    n_main,
    n_upper,
    sum_lower_minus,
    sum_lower_plus,
    tail_bound_hypothetical,
    threshold_margin,
    threshold_scan,
)
from XiBounds.errors import DomainError, NoSignChange
from XiBounds.models import GAMMA_1, BoundParams, EpsilonVariant
from XiBounds.zerodata import count_up_to

from conftest import needs_low_table

PARAMS = BoundParams.default()


class TestZeroCountEnvelope:
    """Tests for n_main, n_error and n_envelope."""

    def test_main_term_at_100(self):
        """Should give the centered count 29.002 at T = 100."""
        assert n_main(100.0) == pytest.approx(29.0020, abs=1e-4)

    def test_error_term_at_100(self):
        """Should give the half-width 3.241 at T = 100."""
        assert n_error(100.0) == pytest.approx(3.2411, abs=1e-3)

    def test_envelope_is_symmetric(self):
        """Should center the envelope on n_main."""
        lower, upper = n_envelope(1e6)
        assert (lower + upper) / 2 == pytest.approx(n_main(1e6))
        assert lower == n_lower(1e6)
        assert upper == n_upper(1e6)

    def test_below_e_raises(self):
        """Should reject T < e."""
        with pytest.raises(DomainError):
            n_main(2.0)
        with pytest.raises(DomainError):
            n_error(1.0)

    def test_envelope_holds_on_first30(self, first30_table):
        """Should sandwich the exact count for every T up to the 30th zero."""
        for T in np.linspace(math.e, 101.0, 400):
            count = count_up_to(first30_table, float(T))
            lower, upper = n_envelope(float(T))
            assert lower <= count <= upper

    @needs_low_table
    def test_envelope_holds_on_low_table(self, low_table):
        """Should sandwich the exact count at 1000 heights of the public table."""
        for T in np.geomspace(20.0, low_table.max_height, 1000):
            count = count_up_to(low_table, float(T))
            lower, upper = n_envelope(float(T))
            assert lower <= count <= upper


class TestLambertA:
    """Tests for lambert_a and lemma3_gap."""

    def test_value(self):
        """Should be 0.7968 to four decimals."""
        assert round(lambert_a(), 4) == 0.7968
        assert lambert_a() == pytest.approx(0.7968121, abs=1e-7)

    def test_matches_scipy_lambertw(self):
        """Should agree with scipy's principal-branch Lambert W."""
        reference = 1 + lambertw(-2 * math.exp(-2)).real / 2
        assert lambert_a() == pytest.approx(reference, abs=1e-12)

    def test_is_root_of_gap(self):
        """Should make log(1 - a) + 2a vanish."""
        assert abs(lemma3_gap(lambert_a())) < 1e-10

    def test_gap_positive_below_a(self):
        """Should keep log(1 - x) > -2x on (0, a)."""
        a = lambert_a()
        for x in np.linspace(1e-6, a - 1e-6, 500):
            assert lemma3_gap(float(x)) > 0

    def test_gap_negative_above_a(self):
        """Should turn negative just above a."""
        assert lemma3_gap(lambert_a() + 1e-3) < 0

    def test_gap_needs_x_below_1(self):
        """Should reject x >= 1."""
        with pytest.raises(DomainError):
            lemma3_gap(1.0)


class TestGt:
    """Tests for g_t and g_components."""

    def test_decays_like_one_over_t(self):
        """Should give t*g(t) close to 2.825 at t = 1e8."""
        t = 1e8
        assert t * g_t(t, PARAMS) == pytest.approx(2.825, rel=1e-3)

    def test_second_term_dominates(self):
        """Should have t*term2 near 1.925 at t = 1e8."""
        t = 1e8
        _, second, third = g_components(t, PARAMS)
        assert t * second == pytest.approx(1.925, rel=1e-3)
        assert abs(third) < 1e-12

    def test_sup_below_0_0879(self):
        """Should keep |g(t)| below 0.0879 for t > 2*alpha."""
        grid = np.geomspace(2 * PARAMS.alpha, 1e8, 10001)[1:]
        assert max(abs(g_t(float(t), PARAMS)) for t in grid) < 0.0879

    def test_needs_t_above_2_alpha(self):
        """Should reject t <= 2*alpha."""
        with pytest.raises(DomainError):
            g_t(2 * PARAMS.alpha, PARAMS)


class TestIntegralAndSumBounds:
    """Tests for the integral and sum lower bounds."""

    def test_integral_minus_close_to_main_term(self):
        """Should sit below pi/(ab) log(t/2pi) by exactly g(t)."""
        t = 1e6
        a, b = PARAMS.kernels(t)
        main = math.pi / (a * b) * math.log(t / (2 * math.pi))
        assert main - integral_lower_minus(t, PARAMS) == pytest.approx(g_t(t, PARAMS))

    def test_integral_plus_positive_at_height(self):
        """Should be positive for large t."""
        assert integral_lower_plus(1e6, PARAMS) > 0

    def test_integral_plus_needs_t_above_alpha(self):
        """Should reject t <= alpha."""
        with pytest.raises(DomainError):
            integral_lower_plus(PARAMS.alpha, PARAMS)

    def test_sum_bounds_subtract_constants(self):
        """Should scale the integral by 1/(2 pi) before the corrections."""
        t = 1e6
        assert sum_lower_minus(t, PARAMS, 2 * math.pi) < 1.0
        assert sum_lower_plus(t, PARAMS, 2 * math.pi) < 1.0
        delta = sum_lower_minus(t, PARAMS, 4 * math.pi) - sum_lower_minus(t, PARAMS, 2 * math.pi)
        assert delta == pytest.approx(1.0)

    def test_sum_bounds_need_t_above_gamma1(self):
        """Should reject t <= gamma_1."""
        with pytest.raises(DomainError):
            sum_lower_minus(GAMMA_1, PARAMS, 1.0)
        with pytest.raises(DomainError):
            sum_lower_plus(10.0, PARAMS, 1.0)


class TestEpsilonAndThreshold:
    """Tests for epsilon_t, main_lower_bound and find_threshold."""

    def test_epsilon_below_constant_at_2_68e11(self):
        """Should leave a positive margin at the 10^12-zone height."""
        value = epsilon_t(2.68e11)
        assert value == pytest.approx(0.259, abs=5e-3)
        assert threshold_margin(2.68e11, EpsilonVariant.LEMMA_CONSISTENT) > 0

    def test_epsilon_decays(self):
        """Should decrease towards 0 for very large t."""
        assert epsilon_t(1e100) < epsilon_t(1e20) < epsilon_t(1e11)

    @pytest.mark.parametrize("variant", [EpsilonVariant.AS_PRINTED, EpsilonVariant.LEMMA_CONSISTENT])
    def test_epsilon_decreases_on_grid(self, variant):
        """Should decrease strictly on a geometric grid over [1e6, 1e14]."""
        values = np.array([epsilon_t(float(t), variant) for t in np.geomspace(1e6, 1e14, 400)])
        assert np.all(np.diff(values) < 0)

    def test_variants_differ_only_in_inner_term(self):
        """Should differ by the (log t - log 2)/2 term of the third line alone."""
        t = 100.0
        log_t = math.log(t)
        expected = (log_t - math.log(2.0)) / 2.0 / ((1.0 + (t - GAMMA_1) ** 2) * log_t * 2 * math.pi)
        printed = epsilon_t(t, EpsilonVariant.AS_PRINTED)
        difference = printed - epsilon_t(t, EpsilonVariant.LEMMA_CONSISTENT)
        assert difference == pytest.approx(expected, rel=1e-8)

    def test_epsilon_needs_t_above_2_gamma1(self):
        """Should reject t <= 2*gamma_1."""
        with pytest.raises(DomainError):
            epsilon_t(2 * GAMMA_1)

    def test_variant_accepts_string(self):
        """Should accept the variant name as a string."""
        assert epsilon_t(1e12, "as_printed") == epsilon_t(1e12, EpsilonVariant.AS_PRINTED)

    def test_lemma_consistent_threshold(self):
        """Should find the threshold 3.1e10."""
        root = find_threshold(EpsilonVariant.LEMMA_CONSISTENT)
        assert 2.8e10 <= root <= 3.4e10
        assert f"{root:.1e}" == "3.1e+10"

    def test_as_printed_threshold(self):
        """Should find the same two significant figures with the printed display."""
        root = find_threshold(EpsilonVariant.AS_PRINTED)
        assert f"{root:.1e}" == "3.1e+10"

    def test_composed_threshold(self):
        """Should find a later threshold when composing the implemented bounds."""
        root = find_threshold(EpsilonVariant.COMPOSED)
        assert 3e11 <= root <= 4e11

    def test_single_sign_change_certified(self):
        """Should certify exactly one bracket around the root."""
        scan = threshold_scan(EpsilonVariant.LEMMA_CONSISTENT)
        assert scan.sign_changes == 1
        lo, hi = scan.brackets[0]
        assert lo < 3.11e10 < hi

    def test_window_below_domain(self):
        """Should scan nothing and find no root below 2*gamma_1."""
        assert threshold_scan(window=(10.0, 20.0)).grid_points == 0
        with pytest.raises(NoSignChange):
            find_threshold(window=(10.0, 20.0))

    def test_window_without_root(self):
        """Should raise NoSignChange when the window misses the root."""
        with pytest.raises(NoSignChange):
            find_threshold(window=(1e3, 1e6))

    def test_main_lower_bound_value(self):
        """Should equal (0.28 - epsilon) c/(sigma - 1/2)."""
        t, sigma = 1e12, 0.8
        expected = (0.28 - epsilon_t(t)) * 0.5 / 0.3
        assert main_lower_bound(sigma, t, PARAMS.with_c(0.5)) == pytest.approx(expected)

    def test_main_lower_bound_strict_strip(self):
        """Should reject sigma on or left of 1/2 + 1/sqrt(log t)."""
        t = 1e12
        edge = 0.5 + 1 / math.sqrt(math.log(t))
        with pytest.raises(DomainError):
            main_lower_bound(edge, t, PARAMS)
        with pytest.raises(DomainError):
            main_lower_bound(1.0, t, PARAMS)

    def test_main_lower_bound_decreases_in_sigma(self):
        """Should decrease strictly from the strip edge towards sigma = 1."""
        t = 1e11
        edge = 0.5 + 1 / math.sqrt(math.log(t))
        sigmas = np.linspace(edge + 1e-3, 0.999, 200)
        values = np.array([main_lower_bound(float(sigma), t, PARAMS) for sigma in sigmas])
        assert np.all(np.diff(values) < 0)

    def test_main_lower_bound_below_threshold(self):
        """Should refuse heights where 0.28 - epsilon is not positive."""
        with pytest.raises(DomainError):
            main_lower_bound(0.95, 1e6, PARAMS)


class TestAandB:
    """Tests for the main terms of A(t) and B(t)."""

    def test_b_at_first_zero_height(self):
        """Should give B(14.635) close to -3.616."""
        assert b_t_bound(14.635) == pytest.approx(-3.616, abs=1e-3)

    def test_b_root(self):
        """Should find the B root near 5.86e3."""
        root = find_b_root()
        assert root == pytest.approx(5.86e3, rel=1e-2)
        assert abs(b_t_bound(root)) < 1e-9

    def test_a_root(self):
        """Should find the A root near 1.98e114."""
        root = find_a_root((1e110, 1e118))
        assert root == pytest.approx(1.9831e114, rel=1e-3)

    def test_a_negative_at_practical_heights(self):
        """Should stay negative well beyond any table."""
        assert a_t_bound(1e12) < 0

    def test_no_sign_change(self):
        """Should raise NoSignChange when both ends agree."""
        with pytest.raises(NoSignChange):
            find_a_root((1e3, 1e10))


class TestHypotheticalTail:
    """Tests for tail_bound_hypothetical and lemma9_dominance_gap."""

    def test_value_at_zero(self):
        """Should equal (1 + log g1)/(pi g1) at t = 0."""
        g1 = 3.001e12
        expected = (1 + math.log(g1)) / (math.pi * g1)
        assert tail_bound_hypothetical(0.0, g1) == pytest.approx(expected)

    def test_decreasing_in_t(self):
        """Should shrink as t grows."""
        assert tail_bound_hypothetical(1e12, 3.001e12) < tail_bound_hypothetical(0.0, 3.001e12)

    def test_needs_zeros_above_verified_height(self):
        """Should reject gamma_1 at or below 3e12."""
        with pytest.raises(DomainError):
            tail_bound_hypothetical(0.0, 3e12)

    def test_needs_nonnegative_t(self):
        """Should reject t < 0."""
        with pytest.raises(DomainError):
            tail_bound_hypothetical(-1.0, 3.001e12)

    def test_dominance_holds_above_8_04(self):
        """Should keep u log u/(2 pi) above n_upper on (8.04, 1e10)."""
        for u in np.geomspace(8.04, 1e10, 500):
            assert lemma9_dominance_gap(float(u)) > 0

    def test_dominance_fails_at_7_5(self):
        """Should fail just below the crossover."""
        assert lemma9_dominance_gap(7.5) < 0
