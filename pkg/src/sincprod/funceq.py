"""Expansion engine for the functional equation f(a) = g(a) + x*f(a/p).

Unrolling the recursion N times gives

    f(a) = Sum_{j=0}^{N-1} x**j * g(a/p**j)  +  x**N * f(a/p**N)

and, when the remainder weight dies (|x| < 1 with f(0) finite, or x >= 1
with f(0) = 0 and g vanishing at 0 fast enough), the series solution

    f(a) = Sum_{j=0}^{inf} x**j * g(a/p**j).

For x > 1 with f finite at infinity the reversed recursion yields instead

    f(a) = -Sum_{j=1}^{inf} g(p**j * a) / x**j.

The second half of this module applies the engine to the Gamma-function
half-argument recursion and its relatives: the eta and zeta power series
with log-Gamma closed forms, the exponentially weighted log-Gamma sum, the
infinite product with e**(-2*gamma*a) on the right, and the base-3 analogue.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import mpmath
from mpmath import mpf

from .errors import DomainError
from .gammazeta import eta_int, euler_gamma, lngamma, zeta_int
from .precision import PrecisionContext
from .reports import VerificationReport, build_report
from .summation import PartialEvaluation, sum_with_tail

F0_FINITE = "f0_finite"
F0_ZERO = "f0_zero"
F_INF_FINITE = "f_inf_finite"

_BOUNDARIES = (F0_FINITE, F0_ZERO, F_INF_FINITE)


@dataclass(frozen=True)
class FunceqProblem:
    """One instance of f(a) = g(a) + x*f(a/p).

    ``boundary`` selects the solution mode: f0_finite needs |x| < 1 (the
    remainder x**N * f(a/p**N) dies on its own), f0_zero admits x >= 1
    provided g vanishes at 0 fast enough for the series to converge, and
    f_inf_finite (x > 1) selects the reversed, expanding-argument series.
    ``label`` is carried into reports for traceability.
    """

    g: Callable
    x: object
    p: object
    boundary: str
    label: str = ""

    def __post_init__(self):
        if self.boundary not in _BOUNDARIES:
            raise ValueError(f"unknown boundary mode {self.boundary!r}")
        x = float(self.x)
        p = float(self.p)
        if not p > 1:
            raise ValueError("contraction p must satisfy p > 1")
        if self.boundary == F0_FINITE and not abs(x) < 1:
            raise ValueError("boundary f0_finite requires |x| < 1")
        if self.boundary == F0_ZERO and not x > 0:
            raise ValueError("boundary f0_zero requires x > 0")
        if self.boundary == F_INF_FINITE and not x > 1:
            raise ValueError("boundary f_inf_finite requires x > 1")


def expand_finite(prob: FunceqProblem, a, N: int, ctx: PrecisionContext):
    """N-fold unrolling: returns (Sum_{j<N} x**j g(a/p**j), x**N)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    with ctx.workprec():
        a = mpf(a)
        x = mpf(str(prob.x)) if not isinstance(prob.x, mpf) else prob.x
        p = mpf(str(prob.p)) if not isinstance(prob.p, mpf) else prob.p
        total = mpf(0)
        weight = mpf(1)
        point = a
        for _ in range(N):
            total += weight * prob.g(point)
            weight *= x
            point /= p
        return +total, +weight


def solve_series(prob: FunceqProblem, a, ctx: PrecisionContext) -> PartialEvaluation:
    """Contracting-argument series Sum_{j>=0} x**j * g(a/p**j)."""
    if prob.boundary not in (F0_FINITE, F0_ZERO):
        raise DomainError("solve_series needs boundary f0_finite or f0_zero")
    with ctx.workprec():
        a = mpf(a)
        x = mpf(str(prob.x)) if not isinstance(prob.x, mpf) else prob.x
        p = mpf(str(prob.p)) if not isinstance(prob.p, mpf) else prob.p

        def terms():
            weight = mpf(1)
            point = a
            while True:
                yield weight * prob.g(point)
                weight *= x
                point /= p

        return sum_with_tail(terms(), ctx, description=prob.label or "funceq series")


def solve_expanding(prob: FunceqProblem, a, ctx: PrecisionContext) -> PartialEvaluation:
    """Expanding-argument series -Sum_{j>=1} g(p**j * a) / x**j."""
    if prob.boundary != F_INF_FINITE:
        raise DomainError("solve_expanding needs boundary f_inf_finite")
    with ctx.workprec():
        a = mpf(a)
        x = mpf(str(prob.x)) if not isinstance(prob.x, mpf) else prob.x
        p = mpf(str(prob.p)) if not isinstance(prob.p, mpf) else prob.p

        def terms():
            weight = mpf(1)
            point = a
            while True:
                weight /= x
                point *= p
                yield -prob.g(point) * weight

        return sum_with_tail(terms(), ctx, description=prob.label or "funceq expanding series")


# --- Gamma / eta / zeta applications ------------------------------------------

def half_argument_log_ratio(t, ctx: PrecisionContext) -> mpf:
    """ln(sqrt(pi) * Gamma(t+1) / (Gamma(t+1/2) * 2**(2t))); vanishes to
    second order at t = 0."""
    with ctx.workprec():
        t = mpf(t)
        return +(mpmath.log(mpmath.pi) / 2 + lngamma(t + 1, ctx)
                 - lngamma(t + mpf(1) / 2, ctx) - 2 * t * mpmath.log(2))


def series_inhomogeneity(a, ctx: PrecisionContext) -> mpf:
    """(1/a) * ln(sqrt(pi)*Gamma(a/2+1) / (Gamma(a/2+1/2)*2**a)), the step
    between the full and half-argument zeta power series."""
    with ctx.workprec():
        a = mpf(a)
        if a == 0:
            return mpf(0)
        return +(half_argument_log_ratio(a / 2, ctx) / a)


def _power_series(coefficient, a, ctx: PrecisionContext, max_terms=None) -> PartialEvaluation:
    """Sum_{j>=1} coefficient(1+j) * (-a)**j / (1+j)."""
    with ctx.workprec():
        a = mpf(a)

        def terms():
            power = mpf(1)
            j = 1
            while True:
                power *= -a
                yield coefficient(1 + j) * power / (1 + j)
                j += 1

        return sum_with_tail(terms(), ctx, description="zeta/eta power series",
                             max_terms=max_terms)


def eta_series_check(a, ctx: PrecisionContext) -> VerificationReport:
    """Sum_{j>=1} eta(1+j)*(-a)**j/(1+j) against the closed log-Gamma form,
    valid for |a| < 1."""
    with ctx.workprec():
        a = mpf(a)
        if not abs(a) < 1:
            raise DomainError("eta series requires |a| < 1")
        if a == 0:
            return build_report("eta_series", {"a": a}, mpf(0), mpf(0), ctx,
                                lhs_source="every summand vanishes",
                                rhs_source="removable singularity, limit 0")
        partial = _power_series(lambda n: eta_int(n, ctx), a, ctx)
        rhs = series_inhomogeneity(a, ctx)
        return build_report(
            "eta_series", {"a": a}, partial.value, rhs, ctx,
            terms_used=partial.terms_used, tail_bound=partial.tail_bound,
            lhs_source="alternating eta power series",
            rhs_source="log-Gamma closed form",
        )


def zeta_series_check(a, ctx: PrecisionContext) -> VerificationReport:
    """Sum_{j>=1} zeta(1+j)*(-a)**j/(1+j) against -ln(Gamma(a+1))/a - gamma."""
    with ctx.workprec():
        a = mpf(a)
        if not abs(a) < 1:
            raise DomainError("zeta series requires |a| < 1")
        if a == 0:
            return build_report("zeta_series", {"a": a}, mpf(0), mpf(0), ctx,
                                lhs_source="every summand vanishes",
                                rhs_source="removable singularity, limit 0")
        partial = _power_series(lambda n: zeta_int(n, ctx), a, ctx)
        rhs = -lngamma(a + 1, ctx) / a - euler_gamma(ctx)
        return build_report(
            "zeta_series", {"a": a}, partial.value, rhs, ctx,
            terms_used=partial.terms_used, tail_bound=partial.tail_bound,
            lhs_source="zeta power series",
            rhs_source="-lnGamma(a+1)/a - gamma",
        )


def cm1b_splitting_check(a, ctx: PrecisionContext) -> VerificationReport:
    """Splitting consistency: S(a) = inhomogeneity(a) + S(a/2) where S is the
    zeta power series; three independent evaluations."""
    with ctx.workprec():
        a = mpf(a)
        if not abs(a) < 1:
            raise DomainError("splitting check requires |a| < 1")
        full = _power_series(lambda n: zeta_int(n, ctx), a, ctx)
        half = _power_series(lambda n: zeta_int(n, ctx), a / 2, ctx)
        rhs = series_inhomogeneity(a, ctx) + half.value
        return build_report(
            "cm1b", {"a": a}, full.value, rhs, ctx,
            terms_used=full.terms_used + half.terms_used,
            tail_bound=full.tail_bound,
            lhs_source="zeta power series at a",
            rhs_source="inhomogeneity + zeta power series at a/2",
        )


def rs2_sum_check(a, ctx: PrecisionContext) -> VerificationReport:
    """Sum_{j>=1} 2**j * h(a/2**j) = -2*gamma*a - 2*ln(Gamma(1+a)) with
    h the half-argument log ratio; realized through the series engine with
    weight x = 2 and contraction p = 2 (the summand vanishes quadratically,
    so the growing weight is harmless).  Runs at cancellation-guard
    precision: the 2**j weights amplify the rounding of the log-Gamma
    combination at the truncation point."""
    with ctx.workprec(ctx.cancellation_guard()):
        a = mpf(a)
        if a == 0:
            return build_report("rs2", {"a": a}, mpf(0), mpf(0), ctx,
                                lhs_source="every summand vanishes",
                                rhs_source="limit 0")
        prob = FunceqProblem(
            g=lambda t: 2 * half_argument_log_ratio(t, ctx),
            x=2, p=2, boundary=F0_ZERO, label="exponentially weighted log-Gamma sum",
        )
        partial = solve_series(prob, a / 2, ctx)
        lhs = partial.value
        rhs = -2 * euler_gamma(ctx) * a - 2 * lngamma(1 + a, ctx)
        return build_report(
            "rs2", {"a": a}, lhs, rhs, ctx,
            terms_used=partial.terms_used, tail_bound=partial.tail_bound,
            lhs_source="weighted log-Gamma series",
            rhs_source="-2*gamma*a - 2*lnGamma(1+a)",
        )


def r0a_product_check(a, ctx: PrecisionContext) -> VerificationReport:
    """Gamma(1+2a) * Prod_{j>=0} 2**(-2a) * (sqrt(pi)*Gamma(a/2**j+1)
    / Gamma(a/2**j+1/2))**(2**j)  ==  e**(-2*gamma*a), evaluated in log space
    at cancellation-guard precision (2**j weights)."""
    with ctx.workprec(ctx.cancellation_guard()):
        a = mpf(a)
        if not 1 + 2 * a > 0 or not a + mpf(1) / 2 > 0:
            raise DomainError("a must keep every Gamma argument positive (a > -1/2)")
        if a == 0:
            return build_report("r0a", {"a": a}, mpf(1), mpf(1), ctx,
                                lhs_source="every factor is 1",
                                rhs_source="e^0 = 1")

        ln2 = mpmath.log(2)
        lnpi = mpmath.log(mpmath.pi)

        def terms():
            j = 0
            while True:
                t = a / 2 ** j
                yield (2 ** j) * (lnpi / 2 + lngamma(t + 1, ctx) - lngamma(t + mpf(1) / 2, ctx)) \
                    - 2 * a * ln2
                j += 1

        partial = sum_with_tail(terms(), ctx, description="log product")
        log_lhs = lngamma(1 + 2 * a, ctx) + partial.value
        lhs = mpmath.exp(log_lhs)
        rhs = mpmath.exp(-2 * euler_gamma(ctx) * a)
        return build_report(
            "r0a", {"a": a}, lhs, rhs, ctx,
            terms_used=partial.terms_used, tail_bound=partial.tail_bound,
            lhs_source="log-space Gamma ratio product",
            rhs_source="exp(-2*gamma*a)",
        )


def base3_log_gamma_term(t, ctx: PrecisionContext) -> mpf:
    """g(t) = ln(3)/2 + t*ln3 + lnGamma(t/3+1/3) + lnGamma(t/3+2/3) - ln(2*pi),
    the inhomogeneity of the base-3 recursion lnGamma(1+a) = g(a) + lnGamma(1+a/3)."""
    with ctx.workprec():
        t = mpf(t)
        third = mpf(1) / 3
        return +(mpmath.log(3) / 2 + t * mpmath.log(3)
                 + lngamma(t / 3 + third, ctx) + lngamma(t / 3 + 2 * third, ctx)
                 - mpmath.log(2 * mpmath.pi))


def gn3a_series_check(a, ctx: PrecisionContext) -> VerificationReport:
    """Base-3 series solution Sum_{j>=0} g(a/3**j) == lnGamma(1+a)."""
    with ctx.workprec():
        a = mpf(a)
        if not 1 + a > 0:
            raise DomainError("a must satisfy a > -1")
        if a == 0:
            return build_report("gn3a", {"a": a}, mpf(0), mpf(0), ctx,
                                lhs_source="every summand vanishes",
                                rhs_source="lnGamma(1) = 0")
        prob = FunceqProblem(
            g=lambda t: base3_log_gamma_term(t, ctx),
            x=1, p=3, boundary=F0_ZERO, label="base-3 log-Gamma series",
        )
        partial = solve_series(prob, a, ctx)
        rhs = lngamma(1 + a, ctx)
        return build_report(
            "gn3a", {"a": a}, partial.value, rhs, ctx,
            terms_used=partial.terms_used, tail_bound=partial.tail_bound,
            lhs_source="base-3 series solution",
            rhs_source="lnGamma(1+a)",
        )


# --- builtin g registry for the command line ---------------------------------

def builtin_g(name: str, ctx: PrecisionContext) -> tuple:
    """Return (callable, label) for a named inhomogeneity."""
    table = {
        "linear": (lambda t: t, "g(a) = a"),
        "square": (lambda t: t * t, "g(a) = a^2"),
        "reciprocal": (lambda t: 1 / t, "g(a) = 1/a"),
        "recip_square": (lambda t: 1 / (t * t), "g(a) = 1/a^2"),
        "exp_decay": (lambda t: mpmath.exp(-t), "g(a) = e^-a"),
        "lngamma_half_step": (
            lambda t: mpf(t) * mpmath.log(2) - mpmath.log(mpmath.pi) / 2
            + lngamma(mpf(t) / 2 + mpf(1) / 2, ctx),
            "half-argument step of lnGamma(1+a)",
        ),
        "half_log_ratio": (
            lambda t: half_argument_log_ratio(t, ctx),
            "half-argument log-Gamma ratio",
        ),
        "base3_step": (
            lambda t: base3_log_gamma_term(t, ctx),
            "base-3 step of lnGamma(1+a)",
        ),
    }
    if name not in table:
        raise KeyError(f"unknown builtin g {name!r}; choices: {sorted(table)}")
    return table[name]
