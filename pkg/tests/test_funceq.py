"""Functional-equation engine: finite unrolling, series solutions in both
directions, and the Gamma/eta/zeta applications."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from sincprod.errors import DomainError, NoConvergence
from sincprod.funceq import (F0_FINITE, F0_ZERO, F_INF_FINITE, FunceqProblem,
                             cm1b_splitting_check, eta_series_check, expand_finite,
                             gn3a_series_check, half_argument_log_ratio,
                             r0a_product_check, rs2_sum_check, series_inhomogeneity,
                             solve_expanding, solve_series, zeta_series_check)
from sincprod.gammazeta import euler_gamma, lngamma
from sincprod.precision import PrecisionContext


def linear_problem():
    return FunceqProblem(lambda t: t, mpf(1) / 2, 2, F0_FINITE, "linear")


class TestEngine:
    def test_linear_toy_closed_form(self, ctx50):
        # f(a) = a + f(a/2)/2 has the solution 4a/3
        pe = solve_series(linear_problem(), mpf(3), ctx50)
        with ctx50.workprec():
            assert abs(pe.value - 4) <= 4 * ctx50.tail_eps()
        assert pe.converged
        assert pe.tail_bound <= ctx50.tail_eps()

    def test_square_toy(self, ctx50):
        prob = FunceqProblem(lambda t: t * t, mpf(1) / 4, 2, F0_FINITE, "square")
        pe = solve_series(prob, mpf(1), ctx50)
        with ctx50.workprec():
            assert abs(pe.value - mpf(16) / 15) <= 4 * ctx50.tail_eps()

    def test_expanding_reciprocal(self, ctx50):
        prob = FunceqProblem(lambda t: 1 / t, 2, 2, F_INF_FINITE, "reciprocal")
        pe = solve_expanding(prob, mpf(1), ctx50)
        with ctx50.workprec():
            assert abs(pe.value + mpf(1) / 3) <= 4 * ctx50.tail_eps()

    def test_expanding_inverse_square(self, ctx50):
        prob = FunceqProblem(lambda t: 1 / (t * t), 8, 2, F_INF_FINITE, "inv square")
        pe = solve_expanding(prob, mpf(1), ctx50)
        with ctx50.workprec():
            assert abs(pe.value + mpf(1) / 31) <= 4 * ctx50.tail_eps()

    def test_expanding_exponential_against_direct_sum(self, ctx50):
        # -sum_{j>=1} e^(-2^j)/2^j converges in a handful of terms
        prob = FunceqProblem(lambda t: mpmath.exp(-t), 2, 2, F_INF_FINITE, "exp decay")
        pe = solve_expanding(prob, mpf(1), ctx50)
        with ctx50.workprec():
            direct = -mpmath.fsum(mpmath.exp(-mpf(2) ** j) / mpf(2) ** j
                                  for j in range(1, 15))
            assert abs(pe.value - direct) <= 4 * ctx50.tail_eps()
        assert pe.terms_used < 15

    def test_expand_finite_single_step(self, ctx50):
        partial, weight = expand_finite(linear_problem(), mpf(3), 1, ctx50)
        assert partial == 3
        assert weight == mpf(1) / 2

    def test_two_step_unrolling_structure(self, ctx50):
        # N = 2 must equal g(a) + x*g(a/p) with remainder weight x^2
        prob = linear_problem()
        partial, weight = expand_finite(prob, mpf(3), 2, ctx50)
        with ctx50.workprec():
            assert abs(partial - (3 + mpf(3) / 4)) == 0
            assert weight == mpf(1) / 4

    @pytest.mark.parametrize("N", [1, 5, 20])
    def test_unrolling_consistency(self, ctx50, N):
        # f(a) = partial_N + x^N * f(a/p^N) when f is the series solution
        prob = linear_problem()
        a = mpf("2.7")
        full = solve_series(prob, a, ctx50).value
        partial, weight = expand_finite(prob, a, N, ctx50)
        rest = solve_series(prob, a / 2 ** N, ctx50).value
        with ctx50.workprec():
            assert abs(full - (partial + weight * rest)) <= 8 * ctx50.tail_eps()

    @given(st.fractions(min_value=Fraction(1, 10), max_value=Fraction(4)),
           st.sampled_from(["linear", "square", "cube"]))
    @settings(max_examples=25, deadline=None)
    def test_solution_satisfies_equation(self, a_frac, g_name):
        ctx = PrecisionContext(digits=30)
        g = {"linear": lambda t: t, "square": lambda t: t * t,
             "cube": lambda t: t ** 3}[g_name]
        prob = FunceqProblem(g, mpf(1) / 3, 2, F0_FINITE, g_name)
        with ctx.workprec():
            a = mpf(a_frac.numerator) / a_frac.denominator
            f_a = solve_series(prob, a, ctx).value
            f_half = solve_series(prob, a / 2, ctx).value
            residual = f_a - prob.x * f_half - g(a)
            assert abs(residual) <= 4 * ctx.tail_eps()

    def test_max_terms_raises(self):
        ctx = PrecisionContext(digits=50, max_terms=4)
        with pytest.raises(NoConvergence) as exc:
            solve_series(linear_problem(), mpf(3), ctx)
        assert exc.value.partial is not None
        assert exc.value.partial.terms_used == 4
        assert not exc.value.partial.converged

    def test_boundary_validation(self):
        with pytest.raises(ValueError):
            FunceqProblem(lambda t: t, 2, 2, F0_FINITE)          # |x| >= 1
        with pytest.raises(ValueError):
            FunceqProblem(lambda t: t, mpf(1) / 2, 2, F_INF_FINITE)  # x <= 1
        with pytest.raises(ValueError):
            FunceqProblem(lambda t: t, 1, mpf(1) / 2, F0_ZERO)   # p <= 1
        with pytest.raises(DomainError):
            solve_expanding(linear_problem(), mpf(1), PrecisionContext())


class TestLogGammaApplications:
    def test_finite_expansion_reaches_lngamma(self, ctx50):
        # lnGamma(1+a) = g(a) + lnGamma(1+a/2) unrolled 30 times; the
        # remainder lnGamma(1 + a/2^30) is below 1e-8
        def g(t):
            return t * mpmath.log(2) - mpmath.log(mpmath.pi) / 2 + lngamma(t / 2 + mpf(1) / 2, ctx50)

        prob = FunceqProblem(g, 1, 2, F0_ZERO, "half-argument step")
        with ctx50.workprec():
            partial, weight = expand_finite(prob, mpf("0.5"), 30, ctx50)
            assert weight == 1
            assert abs(partial - lngamma(mpf("1.5"), ctx50)) < mpf("1e-8")

    def test_rs2_weighted_sum(self, ctx50):
        rep = rs2_sum_check(mpf("0.5"), ctx50)
        with ctx50.workprec():
            ref = -2 * euler_gamma(ctx50) * mpf("0.5") - 2 * lngamma(mpf("1.5"), ctx50)
            assert abs(rep.lhs - ref) < mpf("1e-38")
        assert rep.passed

    def test_rs2_terms_become_geometric(self, ctx50):
        # beyond a computed index the summand ratio settles under 0.6
        with ctx50.workprec(ctx50.cancellation_guard()):
            a = mpf("0.8")
            terms = [2 ** j * half_argument_log_ratio(a / 2 ** j, ctx50)
                     for j in range(1, 40)]
            ratios = [abs(terms[i + 1] / terms[i]) for i in range(8, len(terms) - 1)]
            assert all(r <= mpf("0.6") for r in ratios)

    def test_r0a_product(self, ctx50):
        rep = r0a_product_check(mpf("0.25"), ctx50)
        with ctx50.workprec():
            # independent route for the constant: the mpmath Euler constant
            ref = mpmath.exp(-mpmath.euler / 2)
            assert mpmath.nstr(ref, 11) == "0.7493060013"
            assert abs(rep.rhs - ref) < mpf("1e-55")
            assert abs(rep.lhs - ref) < mpf("1e-38")
        assert r0a_product_check(mpf(0), ctx50).passed
        assert r0a_product_check(mpf("0.9"), ctx50).passed

    def test_r0a_domain(self, ctx50):
        with pytest.raises(DomainError):
            r0a_product_check(mpf("-0.6"), ctx50)

    def test_gn3a_base3_series(self, ctx50):
        with ctx50.workprec():
            a = mpf("0.8")
        rep = gn3a_series_check(a, ctx50)
        with ctx50.workprec():
            assert abs(rep.rhs - mpmath.loggamma(1 + a)) < mpf("1e-55")
        assert rep.passed


class TestPowerSeriesChecks:
    def test_eta_series_both_sides_against_oracle(self, ctx50):
        rep = eta_series_check(mpf("0.5"), ctx50)
        with ctx50.workprec():
            # independent closed form through the mpmath Gamma oracle
            ref = 2 * mpmath.log(mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpf("1.25"))
                                 / (mpmath.gamma(mpf("0.75")) * 2 ** mpf("0.5")))
            assert abs(rep.rhs - ref) < mpf("1e-45")
            assert abs(rep.lhs - ref) < mpf("1e-38")
        assert rep.passed

    def test_eta_series_negative_argument(self, ctx50):
        assert eta_series_check(mpf("-0.5"), ctx50).passed

    def test_eta_series_zero_is_trivial_pass(self, ctx50):
        rep = eta_series_check(mpf(0), ctx50)
        assert rep.passed and rep.lhs == 0 and rep.rhs == 0

    def test_series_domain(self, ctx50):
        for bad in ("1", "-1", "1.5"):
            with pytest.raises(DomainError):
                eta_series_check(mpf(bad), ctx50)
            with pytest.raises(DomainError):
                zeta_series_check(mpf(bad), ctx50)

    def test_zeta_series_value(self, ctx50):
        rep = zeta_series_check(mpf("0.5"), ctx50)
        # frozen from the closed form -lnGamma(1.5)/0.5 - gamma
        assert mpmath.nstr(rep.lhs, 11) == "-0.33565118963"
        assert rep.passed

    def test_splitting_consistency(self, ctx50):
        for a in ("0.6", "0.5", "-0.5"):
            rep = cm1b_splitting_check(mpf(a), ctx50)
            with ctx50.workprec():
                assert rep.abs_error < mpf("1e-25"), f"a={a}"

    def test_inhomogeneity_matches_eta_series(self, ctx50):
        # the eta power series sums to exactly the splitting inhomogeneity
        with ctx50.workprec():
            a = mpf("0.3")
            lhs = eta_series_check(a, ctx50).lhs
            assert abs(lhs - series_inhomogeneity(a, ctx50)) < mpf("1e-38")
