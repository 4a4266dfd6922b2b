"""Gamma and zeta substrate against closed forms and the mpmath oracles."""

import mpmath
import pytest
from mpmath import mpf

from sincprod.errors import DomainError
from sincprod.gammazeta import (digamma, digamma_derivative_check, duplication_check,
                                eta_int, eta_zeta_relation_check, euler_gamma,
                                gauss_multiplication_check, lngamma, zeta_int)
from sincprod.precision import PrecisionContext


class TestLnGamma:
    def test_at_one(self, ctx50):
        assert abs(lngamma(mpf(1), ctx50)) < mpf(10) ** (-55)

    def test_at_half_closed_form(self, ctx50):
        # Gamma(1/2) = sqrt(pi)
        with ctx50.workprec():
            ref = mpmath.log(mpmath.pi) / 2
            assert abs(lngamma(mpf(1) / 2, ctx50) - ref) < mpf(10) ** (-55)

    def test_at_three_halves_closed_form(self, ctx50):
        # Gamma(3/2) = sqrt(pi)/2, so lnGamma(1.5) = ln(sqrt(pi)) - ln 2
        with ctx50.workprec():
            ref = mpmath.log(mpmath.pi) / 2 - mpmath.log(2)
            got = lngamma(mpf("1.5"), ctx50)
            assert abs(got - ref) < mpf(10) ** (-55)
            assert mpmath.nstr(got, 10) == "-0.1207822376"

    @pytest.mark.parametrize("digits", [15, 30, 50, 80])
    def test_against_mpmath_oracle(self, digits):
        ctx = PrecisionContext(digits=digits)
        with mpmath.workdps(ctx.working_dps + 10):
            for x in ("0.05", "0.31", "1.0001", "2.5", "9.7", "41.3"):
                got = lngamma(mpf(x), ctx)
                ref = mpmath.loggamma(mpf(x))
                assert abs(got - ref) <= mpf(10) ** (-(ctx.working_dps + 2))

    def test_recurrence(self, ctx50):
        with ctx50.workprec():
            tol = 4 * ctx50.tail_eps()
            for x in ("0.5", "1.3", "2.7", "10"):
                x = mpf(x)
                assert abs(lngamma(x + 1, ctx50) - lngamma(x, ctx50) - mpmath.log(x)) <= tol

    def test_domain(self, ctx50):
        with pytest.raises(DomainError):
            lngamma(mpf(0), ctx50)
        with pytest.raises(DomainError):
            lngamma(mpf(-2), ctx50)


class TestDigamma:
    def test_closed_forms(self, ctx50):
        with ctx50.workprec():
            g = euler_gamma(ctx50)
            tol = mpf(10) ** (-55)
            assert abs(digamma(mpf(1), ctx50) + g) < tol
            assert abs(digamma(mpf(2), ctx50) - (1 - g)) < tol
            assert abs(digamma(mpf(1) / 2, ctx50) + g + 2 * mpmath.log(2)) < tol

    @pytest.mark.parametrize("digits", [15, 50, 100])
    def test_against_mpmath_oracle(self, digits):
        ctx = PrecisionContext(digits=digits)
        with mpmath.workdps(ctx.working_dps + 10):
            for x in ("0.07", "0.5", "1.9", "13.25"):
                got = digamma(mpf(x), ctx)
                ref = mpmath.digamma(mpf(x))
                assert abs(got - ref) <= mpf(10) ** (-(ctx.working_dps + 2))

    def test_is_derivative_of_lngamma(self, ctx50):
        for x in ("1", "2.5"):
            rep = digamma_derivative_check(mpf(x), ctx50)
            assert rep.passed, rep.verdict

    def test_domain(self, ctx50):
        with pytest.raises(DomainError):
            digamma(mpf(0), ctx50)


class TestEulerGamma:
    def test_first_ten_digits(self):
        ctx = PrecisionContext(digits=10)
        assert mpmath.nstr(euler_gamma(ctx), 10) == "0.5772156649"

    def test_against_mpmath(self, ctx50):
        with ctx50.workprec():
            assert abs(euler_gamma(ctx50) - (+mpmath.euler)) < mpf(10) ** (-55)

    def test_consistency_with_digamma(self, ctx50):
        with ctx50.workprec():
            assert abs(digamma(mpf(1), ctx50) + euler_gamma(ctx50)) < mpf(10) ** (-55)
            assert abs(digamma(mpf(2), ctx50) + euler_gamma(ctx50) - 1) < mpf(10) ** (-55)


class TestZetaEta:
    def test_basel_values(self, ctx50):
        with ctx50.workprec():
            tol = mpf(10) ** (-55)
            assert abs(zeta_int(2, ctx50) - mpmath.pi ** 2 / 6) < tol
            assert abs(eta_int(2, ctx50) - mpmath.pi ** 2 / 12) < tol

    def test_zeta_three(self, ctx50):
        got = zeta_int(3, ctx50)
        assert mpmath.nstr(got, 20) == "1.2020569031595942854"
        with ctx50.workprec():
            assert abs(got - mpmath.zeta(3)) < mpf(10) ** (-55)

    @pytest.mark.parametrize("digits", [15, 50, 90])
    def test_against_altzeta_oracle(self, digits):
        ctx = PrecisionContext(digits=digits)
        with mpmath.workdps(ctx.working_dps + 10):
            for n in (2, 3, 5, 11, 40, 131, 500):
                assert abs(eta_int(n, ctx) - mpmath.altzeta(n)) <= mpf(10) ** (-(ctx.working_dps + 2))

    def test_relation_to_working_precision(self, ctx50):
        for n in range(2, 13):
            rep = eta_zeta_relation_check(n, ctx50)
            with ctx50.workprec():
                assert rep.abs_error <= mpf(10) ** (-ctx50.digits)

    def test_domain(self, ctx50):
        with pytest.raises(DomainError):
            zeta_int(1, ctx50)
        with pytest.raises(DomainError):
            eta_int(0, ctx50)


class TestGammaIdentities:
    def test_duplication(self, ctx50):
        for a in ("0.1", "0.5", "0.9", "1.7"):
            rep = duplication_check(mpf(a), ctx50)
            with ctx50.workprec():
                assert rep.abs_error <= 4 * ctx50.tail_eps(), f"a={a}"

    def test_gauss_multiplication(self, ctx50):
        tol = mpf(10) ** (-(ctx50.digits - 10))
        for n in (2, 3, 4, 5):
            for a in ("0.3", "0.8"):
                rep = gauss_multiplication_check(n, mpf(a), ctx50)
                with ctx50.workprec():
                    assert rep.abs_error <= tol * max(1, abs(rep.rhs)), f"n={n} a={a}"
