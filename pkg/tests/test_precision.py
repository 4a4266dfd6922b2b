"""Arithmetic substrate: exact arguments, reduction, elementary functions,
principal powers, serialization."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf, mpc

from sincprod.errors import DomainError
from sincprod.precision import (ExactArgument, PrecisionContext, elementary,
                                from_decimal, pow_principal, realize,
                                reduce_scaled, to_decimal)


def taylor_sin(x_str: str, dps: int) -> mpf:
    # independent oracle: plain Taylor summation, no library sin
    with mpmath.workdps(dps + 15):
        x = mpf(x_str)
        term = x
        total = x
        k = 1
        while abs(term) > mpf(10) ** (-(dps + 10)):
            term *= -x * x / ((2 * k) * (2 * k + 1))
            total += term
            k += 1
        return +total


class TestRealize:
    def test_half_pi_30_digits(self):
        ctx = PrecisionContext(digits=30)
        value = realize(ExactArgument.parse("1/2*pi"), ctx)
        assert to_decimal(value, ctx) == "1.57079632679489661923132169164"

    def test_unit_rational(self, ctx50):
        assert realize(ExactArgument.from_rational(1), ctx50) == 1

    def test_quarter_pi_scaled_by_8_reduces_to_zero(self, ctx50):
        assert reduce_scaled(ExactArgument.parse("1/4*pi"), 2, 3, ctx50) == 0


class TestElementary:
    def test_sin_1_against_taylor_oracle(self):
        ctx = PrecisionContext(digits=16)
        oracle = taylor_sin("1", 16)
        got = elementary("sin", mpf(1), ctx)
        assert mpmath.nstr(got, 16) == mpmath.nstr(oracle, 16) == "0.8414709848078965"

    def test_cos_zero(self, ctx50):
        assert elementary("cos", mpf(0), ctx50) == 1

    def test_tan_pole_from_exact_argument(self, ctx50):
        with pytest.raises(DomainError):
            elementary("tan", ExactArgument.parse("1/2*pi"), ctx50)
        with pytest.raises(DomainError):
            elementary("tan", ExactArgument.parse("3/2*pi"), ctx50)

    def test_cot_pole(self, ctx50):
        with pytest.raises(DomainError):
            elementary("cot", ExactArgument.parse("pi"), ctx50)
        with pytest.raises(DomainError):
            elementary("cot", mpf(0), ctx50)

    def test_ln_domain(self, ctx50):
        with pytest.raises(DomainError):
            elementary("ln", mpf(-1), ctx50)

    @given(st.floats(min_value=-10, max_value=10, allow_nan=False))
    @settings(max_examples=60, deadline=None)
    def test_pythagorean_identity_within_4ulp(self, x):
        ctx = PrecisionContext(digits=50)
        s = elementary("sin", mpf(x), ctx)
        c = elementary("cos", mpf(x), ctx)
        with ctx.workprec():
            assert abs(s * s + c * c - 1) <= 4 * mpf(10) ** (1 - ctx.digits)

    def test_monotone_refinement(self):
        # doubling digits must not move previously reported digits beyond
        # a last-place wobble
        for name, x in (("sin", "1"), ("exp", "2.5"), ("tan", "0.7"), ("ln", "3")):
            lo = elementary(name, mpf(x), PrecisionContext(digits=25))
            hi = elementary(name, mpf(x), PrecisionContext(digits=50))
            with mpmath.workdps(60):
                assert abs(lo - hi) <= 2 * mpf(10) ** (1 - 25) * max(1, abs(hi))


class TestReduceScaled:
    def test_large_doubling_against_direct_highprec(self, ctx50):
        got = reduce_scaled(ExactArgument.from_rational(1), 2, 100, ctx50)
        with mpmath.workdps(400):
            ref = mpf(2) ** 100 % (2 * mpmath.pi)
            assert abs(got - ref) < mpf(10) ** (-ctx50.digits)

    def test_exact_pi_rational_base3(self, ctx50):
        # (pi/3) * 3^5 = 81*pi == pi (mod 2*pi)
        got = reduce_scaled(ExactArgument.parse("1/3*pi"), 3, 5, ctx50)
        with ctx50.workprec():
            assert abs(got - mpmath.pi) < mpf(10) ** (-ctx50.digits - 5)

    @given(st.integers(min_value=0, max_value=120),
           st.fractions(min_value=Fraction(-4), max_value=Fraction(4)))
    @settings(max_examples=40, deadline=None)
    def test_doubled_guard_agreement(self, j, frac):
        base = PrecisionContext(digits=30, guard_digits=10)
        deep = PrecisionContext(digits=30, guard_digits=20)
        arg = ExactArgument(frac, Fraction(1, 7))
        a = reduce_scaled(arg, 2, j, base)
        b = reduce_scaled(arg, 2, j, deep)
        with mpmath.workdps(60):
            assert abs(a - b) <= mpf(10) ** (-30)


class TestPowPrincipal:
    def test_sqrt_of_minus_one_is_i(self, ctx50):
        z = pow_principal(mpf(-1), mpf(1) / 2, ctx50)
        with ctx50.workprec():
            assert abs(z - mpc(0, 1)) < mpf(10) ** (-45)

    def test_sqrt_four(self, ctx50):
        z = pow_principal(mpf(4), mpf(1) / 2, ctx50)
        assert z.imag == 0
        with ctx50.workprec():
            assert abs(z.real - 2) < mpf(10) ** (-45)

    def test_minus_two_quarter_power(self, ctx50):
        # direct-formula oracle: 2^(1/4) * (cos(pi/4) + i*sin(pi/4))
        z = pow_principal(mpf(-2), mpf(1) / 4, ctx50)
        with ctx50.workprec():
            mag = mpmath.power(2, mpf(1) / 4)
            ref = mpc(mag * mpmath.cos(mpmath.pi / 4), mag * mpmath.sin(mpmath.pi / 4))
            assert abs(z - ref) < mpf(10) ** (-45)

    def test_positive_real_matches_real_path_exactly(self, ctx50):
        with ctx50.workprec():
            x, w = mpf("3.7"), mpf("0.42")
            z = pow_principal(x, w, ctx50)
            assert z.imag == 0
            assert z.real == mpmath.exp(w * mpmath.log(x))

    def test_arg_convention_upper_edge(self, ctx50):
        # Arg(-1) must be +pi, also for a negative-zero imaginary part
        z = pow_principal(mpc(-1, mpf("-0.0")), mpf(1) / 2, ctx50)
        with ctx50.workprec():
            assert z.imag > 0

    def test_zero_base(self, ctx50):
        assert pow_principal(mpf(0), mpf(2), ctx50) == 0
        with pytest.raises(DomainError):
            pow_principal(mpf(0), mpf(-1), ctx50)


class TestSerialization:
    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    @settings(max_examples=60, deadline=None)
    def test_decimal_round_trip(self, x):
        ctx = PrecisionContext(digits=30)
        with ctx.workprec():
            v = mpf(x)
        text = to_decimal(v, ctx)
        again = to_decimal(from_decimal(text, ctx), ctx)
        assert text == again


class TestExactArgument:
    def test_parse_forms(self):
        assert ExactArgument.parse("1") == ExactArgument(Fraction(1), Fraction(0))
        assert ExactArgument.parse("-3/2") == ExactArgument(Fraction(-3, 2), Fraction(0))
        assert ExactArgument.parse("0.25") == ExactArgument(Fraction(1, 4), Fraction(0))
        assert ExactArgument.parse("pi") == ExactArgument(Fraction(0), Fraction(1))
        assert ExactArgument.parse("-pi") == ExactArgument(Fraction(0), Fraction(-1))
        assert ExactArgument.parse("3/8*pi") == ExactArgument(Fraction(0), Fraction(3, 8))
        assert ExactArgument.parse("pi/4") == ExactArgument(Fraction(0), Fraction(1, 4))
        assert ExactArgument.parse("2*pi") == ExactArgument(Fraction(0), Fraction(2))
        assert ExactArgument.parse("1/2 + 1/4*pi") == ExactArgument(Fraction(1, 2), Fraction(1, 4))
        assert ExactArgument.parse("1e-6") == ExactArgument(Fraction(1, 10 ** 6), Fraction(0))

    def test_str_round_trip(self):
        for text in ("1", "-3/2", "pi", "-pi", "3/8*pi", "1/2 + 1/4*pi", "1/2 - 1/4*pi"):
            arg = ExactArgument.parse(text)
            assert ExactArgument.parse(str(arg)) == arg

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            ExactArgument(0.5, 0)

    def test_pole_predicates(self):
        assert ExactArgument.parse("1/2*pi").is_tan_pole()
        assert ExactArgument.parse("-7/2*pi").is_tan_pole()
        assert not ExactArgument.parse("1/3*pi").is_tan_pole()
        assert ExactArgument.parse("3*pi").is_sin_zero()
        assert ExactArgument.parse("0").is_sin_zero()
        assert not ExactArgument.parse("1").is_sin_zero()

    def test_scaled_stays_exact(self):
        arg = ExactArgument.parse("3/8*pi")
        assert arg.scaled(Fraction(1, 4)) == ExactArgument.parse("3/32*pi")
