"""Evaluators and verifiers for infinite trigonometric products, their
exceptional cases, finite telescoping products, and the N-plication family.

All infinite products are evaluated as sums of logarithms with a geometric
tail bound; factors raised to odd exponents must be positive, factors with
even exponents contribute ln|factor|.  Inputs that require exceptional-point
handling are classified exactly from :class:`ExactArgument`, never from
floating comparison.

Terms weighted by 2**(j-1) amplify rounding error in the factor logarithms,
so those evaluators run at extra guard precision sized from the tail
tolerance (the factor ln(tan(x)/x) ~ x**2/3 must stay resolvable down to
the truncation point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from .errors import DomainError, ExceptionalPoint, NoConvergence
from .gammazeta import digamma, euler_gamma
from .precision import ExactArgument, PrecisionContext, reduce_scaled
from .reports import VerificationReport, build_report
from .summation import sum_with_tail

REGULAR = "regular"
ODD_PI_MULTIPLE = "odd_pi_multiple"
EVEN_PI_MULTIPLE = "even_pi_multiple"
POLE_DYADIC = "pole_dyadic"


@dataclass(frozen=True)
class ArgumentClass:
    """Exact classification of an input point.

    odd_pi_multiple(n):     |a| = (2n-1)*pi
    even_pi_multiple(m, n): |a| = 2**m * (2n-1) * pi with m >= 1
    pole_dyadic(k):         |a| = (odd)*pi / 2**k with k >= 1
    regular:                everything else (including a = 0)

    Signs are dropped: every identity handled here is even in a.
    """

    kind: str
    m: int | None = None
    n: int | None = None
    k: int | None = None


def classify(a: ExactArgument) -> ArgumentClass:
    if a.rational_part != 0 or a.pi_multiple == 0:
        return ArgumentClass(REGULAR)
    p = a.pi_multiple
    num = abs(p.numerator)
    den = p.denominator
    if den == 1:
        if num % 2 == 1:
            return ArgumentClass(ODD_PI_MULTIPLE, n=(num + 1) // 2)
        m = (num & -num).bit_length() - 1  # dyadic valuation
        odd = num >> m
        return ArgumentClass(EVEN_PI_MULTIPLE, m=m, n=(odd + 1) // 2)
    if den & (den - 1) == 0:  # power of two; numerator odd in lowest terms
        return ArgumentClass(POLE_DYADIC, k=den.bit_length() - 1)
    return ArgumentClass(REGULAR)


# --- shared helpers -----------------------------------------------------------

def _require_exact(a) -> ExactArgument:
    if isinstance(a, ExactArgument):
        return a
    if isinstance(a, str):
        return ExactArgument.parse(a)
    return ExactArgument.from_rational(a)


def _as_real(x, ctx: PrecisionContext, extra: int = 0) -> mpf:
    if isinstance(x, ExactArgument):
        return x.realize(ctx, extra)
    with ctx.workprec(extra):
        return mpf(str(x)) if isinstance(x, (int, str, Fraction)) else mpf(x)


def _tail_guard(ctx: PrecisionContext) -> int:
    # terms with 2**(j-1) weights amplify the rounding of ln(factor) by
    # 1/tail_tolerance at the truncation point
    return ctx.cancellation_guard()


def _sinc(x: mpf) -> mpf:
    return mpf(1) if x == 0 else mpmath.sin(x) / x


def _reject_pi_multiple(a: ExactArgument, op: str):
    cls = classify(a)
    if cls.kind == ODD_PI_MULTIPLE:
        raise ExceptionalPoint(
            f"{op}: a = {a} is an odd multiple of pi; use cpodd n={cls.n}",
            classification=cls, redirect=f"cpodd n={cls.n}",
        )
    if cls.kind == EVEN_PI_MULTIPLE:
        raise ExceptionalPoint(
            f"{op}: a = {a} is an even multiple of pi; use peo2 m={cls.m} n={cls.n}",
            classification=cls, redirect=f"peo2 m={cls.m} n={cls.n}",
        )
    return cls


def _trivial(identity_id: str, params: dict, value, ctx: PrecisionContext, note: str):
    with ctx.workprec():
        v = mpf(value)
    return build_report(identity_id, params, v, v, ctx,
                        details={"note": note},
                        lhs_source="limit value", rhs_source="limit value")


def _log_factor_term(factor: mpf, weight: int, even_exponent: bool, op: str, j: int) -> mpf:
    if factor == 0:
        raise DomainError(f"{op}: factor at j={j} vanishes")
    if factor < 0:
        if not even_exponent:
            raise DomainError(
                f"{op}: factor at j={j} is negative with an odd exponent; "
                "log-space evaluation rejected"
            )
        factor = -factor
    return weight * mpmath.log(factor)


# --- the curious product family ----------------------------------------------

def vsum2_product(a, ctx: PrecisionContext) -> VerificationReport:
    """Prod_{j>=1} (tan(a/2**j) * 2**j / a)**(2**(j-1))  ==  a / sin(a)."""
    a = _require_exact(a)
    _reject_pi_multiple(a, "vsum2")
    params = {"a": str(a)}
    if a.is_zero():
        return _trivial("vsum2", params, 1, ctx, "empty-product limit at a = 0")
    extra = _tail_guard(ctx)
    with ctx.workprec(extra):
        av = a.realize(ctx, extra)

        def terms():
            j = 1
            while True:
                x = a.scaled(Fraction(1, 2 ** j)).realize(ctx, extra)
                factor = mpmath.tan(x) / x
                yield _log_factor_term(factor, mpf(2) ** (j - 1), j >= 2, "vsum2", j)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="vsum2 log product")
        lhs = mpmath.exp(partial.value)
        rhs = av / mpmath.sin(av)
    return build_report("vsum2", params, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="log-space tangent product", rhs_source="a/sin(a)")


def vsum2a_hyperbolic(b, ctx: PrecisionContext) -> VerificationReport:
    """Prod_{j>=1} (2**j * tanh(b/2**j) / b)**(2**(j-1))  ==  b / sinh(b)."""
    params = {"b": str(b)}
    extra = _tail_guard(ctx)
    with ctx.workprec(extra):
        bv = _as_real(b, ctx, extra)
        if bv == 0:
            return _trivial("vsum2a", params, 1, ctx, "empty-product limit at b = 0")

        def terms():
            j = 1
            while True:
                y = bv / 2 ** j
                factor = mpmath.tanh(y) / y
                yield _log_factor_term(factor, mpf(2) ** (j - 1), False, "vsum2a", j)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="vsum2a log product")
        lhs = mpmath.exp(partial.value)
        rhs = bv / mpmath.sinh(bv)
    return build_report("vsum2a", params, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="log-space tanh product", rhs_source="b/sinh(b)")


def sinc_cot_product(a, ctx: PrecisionContext) -> VerificationReport:
    """sinc(a) == Prod_{j>=1} (cot(a/2**j) * a / 2**j)**(2**(j-1)), the
    reciprocal of the tangent product factor by factor."""
    a = _require_exact(a)
    _reject_pi_multiple(a, "sinc")
    params = {"a": str(a)}
    if a.is_zero():
        return _trivial("sinc", params, 1, ctx, "empty-product limit at a = 0")
    extra = _tail_guard(ctx)
    with ctx.workprec(extra):
        av = a.realize(ctx, extra)

        def terms():
            j = 1
            while True:
                x = a.scaled(Fraction(1, 2 ** j)).realize(ctx, extra)
                factor = mpmath.cot(x) * x
                yield _log_factor_term(factor, mpf(2) ** (j - 1), j >= 2, "sinc", j)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="sinc log product")
        lhs = mpmath.exp(partial.value)
        rhs = mpmath.sin(av) / av
    return build_report("sinc", params, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="log-space cotangent product", rhs_source="sin(a)/a")


# --- exceptional cases at integer multiples of pi ------------------------------

def cpodd_product(n: int, ctx: PrecisionContext) -> VerificationReport:
    """At a = (2n-1)*pi the product with its divergent j=1 factor removed:
    Prod_{j>=2} (tan((2n-1)*pi/2**j) * 2**j / ((2n-1)*pi))**(2**(j-1))
    == pi**2 * (1/2 - n)**2."""
    if n < 1:
        raise DomainError("cpodd requires n >= 1")
    params = {"n": n}
    extra = _tail_guard(ctx)
    with ctx.workprec(extra):

        def terms():
            j = 2
            while True:
                x = ExactArgument.pi_fraction(Fraction(2 * n - 1, 2 ** j)).realize(ctx, extra)
                factor = mpmath.tan(x) / x
                # exponents 2**(j-1) are even for every j >= 2
                yield _log_factor_term(factor, mpf(2) ** (j - 1), True, "cpodd", j)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="cpodd log product")
        lhs = mpmath.exp(partial.value)
        rhs = mpmath.pi ** 2 * (mpf(1) / 2 - n) ** 2
    return build_report("cpodd", params, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="truncated product, divergent factor removed",
                        rhs_source="pi^2*(1/2-n)^2")


def peo2_product(m: int, n: int, ctx: PrecisionContext) -> VerificationReport:
    """At a = 2**m * (2n-1) * pi, with the vanishing and divergent factors
    removed: Prod_{j>=m+2} (tan(2**(m-j)*(2n-1)*pi) / (2**(m-j)*(2n-1)*pi))
    **(2**(j-1)) == ((2n-1)*pi/2)**(2**(m+1))."""
    if m < 0 or n < 1:
        raise DomainError("peo2 requires m >= 0 and n >= 1")
    params = {"m": m, "n": n}
    extra = _tail_guard(ctx)
    with ctx.workprec(extra):

        def terms():
            j = m + 2
            while True:
                x = ExactArgument.pi_fraction(
                    Fraction(2 * n - 1, 1) * Fraction(2) ** (m - j)
                ).realize(ctx, extra)
                factor = mpmath.tan(x) / x
                yield _log_factor_term(factor, mpf(2) ** (j - 1), True, "peo2", j)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="peo2 log product")
        lhs = mpmath.exp(partial.value)
        rhs = ((2 * n - 1) * mpmath.pi / 2) ** (2 ** (m + 1))
    return build_report("peo2", params, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="truncated product from j = m+2",
                        rhs_source="((2n-1)*pi/2)^(2^(m+1))")


def cp1_first_factor_check(n: int, eps, ctx: PrecisionContext) -> VerificationReport:
    """Pole law of the first factor at a = (2n-1+2*eps)*pi:
    2*tan((2n+2eps-1)*pi/2) / ((2n+2eps-1)*pi)  ~  -2/(pi**2*(2n-1)*eps)."""
    if n < 1:
        raise DomainError("cp1 requires n >= 1")
    with ctx.workprec():
        epsv = _as_real(eps, ctx)
        if not 0 < epsv <= mpf("1e-3"):
            raise DomainError("eps must lie in (0, 1e-3] for the asymptotic regime")
        # tan((n - 1/2 + eps)*pi) = -cot(eps*pi), computed away from the pole
        value = -mpmath.cot(epsv * mpmath.pi) * 2 / ((2 * n + 2 * epsv - 1) * mpmath.pi)
        model = -2 / (mpmath.pi ** 2 * (2 * n - 1) * epsv)
        tol = abs(model) * mpf("1e-3")
    return build_report("cp1", {"n": n, "eps": str(eps)}, value, model, ctx,
                        abs_tolerance=tol,
                        lhs_source="first product factor near the pole",
                        rhs_source="-2/(pi^2*(2n-1)*eps)",
                        details={"relative_band": "1e-3"})


def epsilon_scaling_study(m: int, n: int, eps_list, ctx: PrecisionContext) -> VerificationReport:
    """Scaling anatomy at a = 2**(m+eps) * (2n-1) * pi.

    For each eps: the partial product over j = 1..m (each factor ~ eps*ln2),
    the lone divergent factor at j = m+1, and their combination, whose
    log-log slope against eps must be -1.  The report's lhs is the fitted
    slope, rhs is -1, and the verdict uses the +-0.05 band.
    """
    if m < 0 or n < 1:
        raise DomainError("epsilon_scaling requires m >= 0 and n >= 1")
    if not eps_list:
        raise DomainError("eps_list must not be empty")
    rows = []
    with ctx.workprec():
        ln2 = mpmath.log(2)
        lnpi = mpmath.log(mpmath.pi)
        for eps in eps_list:
            epsv = _as_real(eps, ctx)
            if not 0 < epsv <= mpf("1e-3"):
                raise DomainError("each eps must lie in (0, 1e-3]")
            growth = mpmath.expm1(epsv * ln2)  # 2**eps - 1
            ln_a = (m + epsv) * ln2 + mpmath.log(2 * n - 1) + lnpi
            # vanishing partial product over j = 1..m
            p1_log = mpf(0)
            for j in range(1, m + 1):
                delta = (2 ** (m - j)) * (2 * n - 1) * mpmath.pi * growth
                p1_log += (mpf(2) ** (j - 1)) * (mpmath.log(mpmath.tan(delta)) + j * ln2 - ln_a)
            model1_log = (mpf(2) ** m - 1) * (mpmath.log(epsv) + mpmath.log(ln2))
            # divergent factor at j = m+1: tan((n-1/2)*pi*2**eps) = -cot(u)
            u = (2 * n - 1) * (mpmath.pi / 2) * growth
            f_next = -mpmath.cot(u) * mpmath.exp((m + 1) * ln2 - ln_a)
            f2_log = (mpf(2) ** m) * mpmath.log(abs(f_next))
            model2_log = (mpf(2) ** m) * mpmath.log(
                4 / (ln2 * (2 * n - 1) ** 2 * mpmath.pi ** 2 * epsv)
            )
            rows.append({
                "eps": epsv,
                "partial_log": p1_log,
                "partial_over_model": mpmath.exp(p1_log - model1_log),
                "divergent_factor_log": f2_log,
                "divergent_over_model": mpmath.exp(f2_log - model2_log),
                "combined_log": p1_log + f2_log,
                "first_factor_signed": f_next if m == 0 else None,
            })
        # least-squares slope of combined_log against ln(eps)
        xs = [mpmath.log(r["eps"]) for r in rows]
        ys = [r["combined_log"] for r in rows]
        xbar = mpmath.fsum(xs) / len(xs)
        ybar = mpmath.fsum(ys) / len(ys)
        sxx = mpmath.fsum((x - xbar) ** 2 for x in xs)
        if sxx == 0:
            raise DomainError("need at least two distinct eps values for a slope")
        slope = mpmath.fsum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sxx
    return build_report(
        "epsilon_scaling", {"m": m, "n": n, "eps": ",".join(str(e) for e in eps_list)},
        slope, mpf(-1), ctx,
        abs_tolerance=mpf("0.05"),
        lhs_source="log-log regression slope of the combined product",
        rhs_source="divergence order -1",
        details={"rows": rows, "slope_band": "0.05"},
    )


# --- generalization by recursion ------------------------------------------------

def gp1b_product(n: int, a, ctx: PrecisionContext) -> VerificationReport:
    """Prod_{j>=n+1} ((2**(j-n)/a) * tan(2**(n-j)*a))**(2**(j-1))
    == (a/sin(a))**(2**n)."""
    if n < 0:
        raise DomainError("gp1b requires n >= 0")
    a = _require_exact(a)
    _reject_pi_multiple(a, "gp1b")
    params = {"n": n, "a": str(a)}
    if a.is_zero():
        return _trivial("gp1b", params, 1, ctx, "empty-product limit at a = 0")
    extra = _tail_guard(ctx)
    with ctx.workprec(extra):
        av = a.realize(ctx, extra)

        def terms():
            j = n + 1
            while True:
                x = a.scaled(Fraction(1, 2 ** (j - n))).realize(ctx, extra)
                factor = mpmath.tan(x) / x
                yield _log_factor_term(factor, mpf(2) ** (j - 1), (j - 1) >= 1, "gp1b", j)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="gp1b log product")
        lhs = mpmath.exp(partial.value)
        rhs = (av / mpmath.sin(av)) ** (2 ** n)
    return build_report("gp1b", params, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="log-space product from j = n+1",
                        rhs_source="(a/sin(a))^(2^n)")


def finite_p5_product(n1: int, n2: int, a, ctx: PrecisionContext) -> VerificationReport:
    """Finite product Prod_{j=n1+1}^{n2} ((2**j/a)*tan(a/2**j))**(2**(j-1))
    == a**(N1-N2) * 2**(-N1*n1+N2*n2) * sin(a/N2)**N2 / sin(a/N1)**N1
    with N_i = 2**n_i.  An algebraic identity, exact at working precision."""
    if not (0 <= n1 < n2):
        raise DomainError("need 0 <= n1 < n2")
    a = _require_exact(a)
    params = {"n1": n1, "n2": n2, "a": str(a)}
    for j in range(n1 + 1, n2 + 1):
        if a.scaled(Fraction(1, 2 ** j)).is_tan_pole():
            raise DomainError(f"tan pole inside the product at j={j}")
    if a.is_zero():
        return _trivial("p5", params, 1, ctx, "both sides reach 1 as a -> 0")
    for ni in (n1, n2):
        if a.scaled(Fraction(1, 2 ** ni)).is_sin_zero():
            raise DomainError(f"sin(a/2^{ni}) vanishes; right side undefined")
    N1, N2 = 2 ** n1, 2 ** n2
    with ctx.workprec():
        av = a.realize(ctx)
        lhs = mpf(1)
        for j in range(n1 + 1, n2 + 1):
            x = a.scaled(Fraction(1, 2 ** j)).realize(ctx)
            lhs *= (mpmath.tan(x) / x) ** (2 ** (j - 1))
        rhs = (av ** (N1 - N2)
               * mpf(2) ** (-N1 * n1 + N2 * n2)
               * mpmath.sin(av / N2) ** N2
               / mpmath.sin(av / N1) ** N1)
    return build_report("p5", params, lhs, rhs, ctx,
                        terms_used=n2 - n1,
                        lhs_source="finite tangent product",
                        rhs_source="telescoped sine closed form")


def x1_instance_report(a, ctx: PrecisionContext) -> VerificationReport:
    """tan(a)*tan(a/2)**2*tan(a/4)**4*tan(a/8)**8 == 2**15 * sin(a/8)**16 / sin(2a)."""
    a = _require_exact(a)
    with ctx.workprec():
        av = a.realize(ctx)
        lhs = (mpmath.tan(av) * mpmath.tan(av / 2) ** 2
               * mpmath.tan(av / 4) ** 4 * mpmath.tan(av / 8) ** 8)
        rhs = mpf(2) ** 15 * mpmath.sin(av / 8) ** 16 / mpmath.sin(2 * av)
    return build_report("x1", {"a": str(a)}, lhs, rhs, ctx,
                        lhs_source="explicit four-factor tangent product",
                        rhs_source="2^15 sin^16(a/8)/sin(2a)")


def x1b_instance_report(n: int, a, ctx: PrecisionContext) -> VerificationReport:
    """tan(a/2**(n+1)) == 2*sin(a/2**(n+1))**2 / sin(a/2**n)."""
    a = _require_exact(a)
    with ctx.workprec():
        av = a.realize(ctx)
        x = av / 2 ** (n + 1)
        lhs = mpmath.tan(x)
        rhs = 2 * mpmath.sin(x) ** 2 / mpmath.sin(av / 2 ** n)
    return build_report("x1b", {"n": n, "a": str(a)}, lhs, rhs, ctx,
                        lhs_source="half-angle tangent",
                        rhs_source="double-angle sine form")


# --- N-plication family ---------------------------------------------------------

def nplication_factor(family: str, N: int, j: int, a, ctx: PrecisionContext,
                      extra: int = 0) -> mpf:
    """The j-th factor of the even/odd N-plication product for sinc."""
    a = _require_exact(a)
    with ctx.workprec(extra):
        if family == "even":
            base = 2 * N
            acc = mpf(0)
            for i in range(1, N + 1):
                x = a.scaled(Fraction(2 * i - 1, base ** (1 + j))).realize(ctx, extra)
                acc += mpmath.cos(x)
            return acc / N
        if family == "odd":
            base = 2 * N + 1
            acc = mpf(0)
            for i in range(1, N + 1):
                x = a.scaled(Fraction(2 * i, base ** (1 + j))).realize(ctx, extra)
                acc += mpmath.cos(x)
            return (1 + 2 * acc) / base
        raise DomainError(f"unknown family {family!r}")


def nplication_product(family: str, N: int, a, ctx: PrecisionContext,
                       identity_id: str | None = None) -> VerificationReport:
    """Even base: Prod_{j>=0} (1/N) Sum_{n=1}^{N} cos((2n-1)*a/(2N)**(1+j));
    odd base: Prod_{j>=0} (1+2*Sum_{n=1}^{N} cos(2n*a/(2N+1)**(1+j)))/(2N+1);
    both equal sin(a)/a."""
    if family not in ("even", "odd"):
        raise DomainError("family must be 'even' or 'odd'")
    if N < 1:
        raise DomainError("N must be >= 1")
    a = _require_exact(a)
    _reject_pi_multiple(a, identity_id or "nplication")
    rid = identity_id or ("g2a" if family == "even" else "g2x")
    params = {"family": family, "N": N, "a": str(a)}
    if a.is_zero():
        return _trivial(rid, params, 1, ctx, "every factor reaches 1 at a = 0")
    with ctx.workprec():
        av = a.realize(ctx)

        def terms():
            j = 0
            while True:
                factor = nplication_factor(family, N, j, a, ctx)
                yield _log_factor_term(factor, mpf(1), False, rid, j)
                j += 1

        partial = sum_with_tail(terms(), ctx, description=f"{rid} log product")
        lhs = mpmath.exp(partial.value)
        rhs = mpmath.sin(av) / av
    return build_report(rid, params, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source=f"{family} cosine-mean product, base {2*N if family=='even' else 2*N+1}",
                        rhs_source="sin(a)/a")


def gn3ci_product(a, ctx: PrecisionContext) -> VerificationReport:
    """Prod_{j>=1} (1 - (4/3)*sin(a/3**j)**2) == sin(a)/a; factor-for-factor
    the same product as the odd N=1 cosine form via 1+2cos(2x) = 3-4sin(x)**2."""
    a = _require_exact(a)
    _reject_pi_multiple(a, "gn3ci")
    params = {"a": str(a)}
    if a.is_zero():
        return _trivial("gn3ci", params, 1, ctx, "every factor reaches 1 at a = 0")
    with ctx.workprec():
        av = a.realize(ctx)

        def terms():
            j = 1
            while True:
                x = a.scaled(Fraction(1, 3 ** j)).realize(ctx)
                factor = 1 - 4 * mpmath.sin(x) ** 2 / 3
                yield _log_factor_term(factor, mpf(1), False, "gn3ci", j)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="gn3ci log product")
        lhs = mpmath.exp(partial.value)
        rhs = mpmath.sin(av) / av
    return build_report("gn3ci", params, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="sine-square product form", rhs_source="sin(a)/a")


def viete_product(ctx: PrecisionContext) -> VerificationReport:
    """Nested-radical product sqrt(2)/2 * sqrt(2+sqrt(2))/2 * ... == 2/pi,
    the a = pi/2 instance of the even N=1 cosine product."""
    with ctx.workprec():

        def terms():
            r = mpmath.sqrt(2)
            while True:
                yield mpmath.log(r / 2)
                r = mpmath.sqrt(2 + r)

        partial = sum_with_tail(terms(), ctx, description="viete log product")
        lhs = mpmath.exp(partial.value)
        rhs = 2 / mpmath.pi
    return build_report("viete", {}, lhs, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="nested radical product", rhs_source="2/pi")


def cosine_sum_lemma(kind: str, N: int, j: int, a, ctx: PrecisionContext) -> VerificationReport:
    """Closed forms of the factor sums:
    even: Sum_{n=1}^{N} cos((2n-1)*a/(2N)**(1+j)) == sin(a/(2N)**j) / (2*sin(a/(2N)**(1+j)))
    odd:  Sum_{n=1}^{N} cos(2n*a/(2N+1)**(1+j)) == sin(a/(2N+1)**j) / (2*sin(a/(2N+1)**(1+j))) - 1/2
    Exact identities, checked at working precision."""
    if kind not in ("even", "odd"):
        raise DomainError("kind must be 'even' or 'odd'")
    if N < 1 or j < 0:
        raise DomainError("need N >= 1 and j >= 0")
    a = _require_exact(a)
    base = 2 * N if kind == "even" else 2 * N + 1
    inner = a.scaled(Fraction(1, base ** (1 + j)))
    if inner.is_sin_zero():
        raise DomainError("denominator sin(a/base**(1+j)) vanishes")
    rid = "sumid1" if kind == "even" else "sumid2"
    with ctx.workprec():
        acc = mpf(0)
        for i in range(1, N + 1):
            num = 2 * i - 1 if kind == "even" else 2 * i
            x = a.scaled(Fraction(num, base ** (1 + j))).realize(ctx)
            acc += mpmath.cos(x)
        outer = a.scaled(Fraction(1, base ** j)).realize(ctx)
        inner_v = inner.realize(ctx)
        rhs = mpmath.sin(outer) / (2 * mpmath.sin(inner_v))
        if kind == "odd":
            rhs -= mpf(1) / 2
    return build_report(rid, {"kind": kind, "N": N, "j": j, "a": str(a)}, acc, rhs, ctx,
                        lhs_source="direct cosine sum",
                        rhs_source="sine-ratio closed form")


@dataclass
class TelescopingTrace:
    """Factor-level anatomy of the odd-base product.

    factors[j]    = sin(a/q**j) / (q * sin(a/q**(j+1))), q = 2N+1
    cumulative[j] = product of factors 0..j
    closed[j]     = sin(a) / (q**(j+1) * sin(a/q**(j+1)))
    limit_factor[j] = q**(j+1)*sin(a/q**(j+1))/a, the factor that must reach 1
    """

    N: int
    a: object
    factors: list
    cumulative: list
    closed: list
    limit_factors: list


def telescoping_trace(N: int, a, J: int, ctx: PrecisionContext) -> TelescopingTrace:
    if N < 1 or J < 0:
        raise DomainError("need N >= 1 and J >= 0")
    a = _require_exact(a)
    q = 2 * N + 1
    for j in range(J + 2):
        if a.scaled(Fraction(1, q ** j)).is_sin_zero():
            raise DomainError(f"sin(a/q^{j}) vanishes")
    with ctx.workprec():
        av = a.realize(ctx)
        factors, cumulative, closed, limits = [], [], [], []
        running = mpf(1)
        for j in range(J + 1):
            outer = a.scaled(Fraction(1, q ** j)).realize(ctx)
            inner = a.scaled(Fraction(1, q ** (j + 1))).realize(ctx)
            f = mpmath.sin(outer) / (q * mpmath.sin(inner))
            running *= f
            factors.append(f)
            cumulative.append(running)
            closed.append(mpmath.sin(av) / (mpf(q) ** (j + 1) * mpmath.sin(inner)))
            limits.append(mpf(q) ** (j + 1) * mpmath.sin(inner) / av)
    return TelescopingTrace(N=N, a=a, factors=factors, cumulative=cumulative,
                            closed=closed, limit_factors=limits)


# --- finite cosine product and classical relatives -------------------------------

def br114_finite(a, k: int, ctx: PrecisionContext) -> VerificationReport:
    """Prod_{j=0}^{k-1} cos(2**j * a) == sin(2**k * a) / (2**k * sin(a)),
    exact for every k; large k uses guard-digit argument reduction."""
    if k < 1:
        raise DomainError("k must be >= 1")
    a = _require_exact(a)
    if a.is_sin_zero():
        raise DomainError(
            "sin(a) = 0; the vanishing-product anatomy lives in the anomalies module"
        )
    with ctx.workprec():
        av = a.realize(ctx)
        lhs = mpf(1)
        for j in range(k):
            lhs *= mpmath.cos(reduce_scaled(a, 2, j, ctx))
        rhs = mpmath.sin(reduce_scaled(a, 2, k, ctx)) / (mpf(2) ** k * mpmath.sin(av))
    return build_report("br114", {"a": str(a), "k": k}, lhs, rhs, ctx,
                        terms_used=k,
                        lhs_source="cosine product with exact reduction",
                        rhs_source="sin(2^k a)/(2^k sin a)")


def jo1_check(n: int, ctx: PrecisionContext) -> VerificationReport:
    """(Prod_{j=1}^{n-1} tan(pi*j/(2n)))**(1/n) == 1.

    The classical table prints the upper limit as n, but the j = n factor is
    tan(pi/2); the product is taken to n-1 where the pairing
    tan(x)*tan(pi/2-x) = 1 makes it exactly 1 for every n.
    """
    if n < 2:
        raise DomainError("jo1 requires n >= 2")
    with ctx.workprec():
        acc = mpf(0)
        for j in range(1, n):
            x = ExactArgument.pi_fraction(Fraction(j, 2 * n)).realize(ctx)
            acc += mpmath.log(mpmath.tan(x))
        lhs = mpmath.exp(acc / n)
        rhs = mpf(1)
    return build_report("jo1", {"n": n}, lhs, rhs, ctx,
                        terms_used=n - 1,
                        lhs_source="tangent product, upper limit n-1",
                        rhs_source="pairing argument",
                        details={"note": "printed upper limit n hits the tan(pi/2) pole; "
                                         "product taken to n-1"})


def jo2_check(k: int, ctx: PrecisionContext) -> VerificationReport:
    """Prod_{j=1}^{2k-1} cos(pi*j/k) == ((-1)**k - 1) / 2**(2k-1); for even k
    the factors at j = k/2 and j = 3k/2 vanish exactly."""
    if k < 1:
        raise DomainError("jo2 requires k >= 1")
    zero_indices = [j for j in range(1, 2 * k) if 2 * j == k or 2 * j == 3 * k]
    with ctx.workprec():
        lhs = mpf(1)
        for j in range(1, 2 * k):
            if 2 * j == k or 2 * j == 3 * k:
                lhs = mpf(0)
                continue
            x = ExactArgument.pi_fraction(Fraction(j, k)).realize(ctx)
            lhs *= mpmath.cos(x)
        rhs_frac = Fraction((-1) ** k - 1, 2 ** (2 * k - 1))
        rhs = mpf(rhs_frac.numerator) / rhs_frac.denominator
    return build_report("jo2", {"k": k}, lhs, rhs, ctx,
                        terms_used=2 * k - 1,
                        lhs_source="direct cosine product",
                        rhs_source="((-1)^k - 1)/2^(2k-1)",
                        details={"zero_factor_indices": zero_indices})


def euler_sine_product(a, ctx: PrecisionContext, terms: int = 10000) -> VerificationReport:
    """Slowly convergent classical product Prod_{j=1}^{terms} (1 - a**2/(pi*j)**2)
    against sin(a)/a, with the explicit tail estimate a**2/(pi**2*terms).

    The verdict checks the tail estimator: pass iff the truncation defect is
    within 110% of the estimate."""
    if terms < 10:
        raise DomainError("terms must be >= 10")
    a = _require_exact(a) if isinstance(a, (ExactArgument, int, str, Fraction)) else a
    params = {"a": str(a), "terms": terms}
    if isinstance(a, ExactArgument):
        cls = classify(a)
        if cls.kind in (ODD_PI_MULTIPLE, EVEN_PI_MULTIPLE):
            j0 = abs(a.pi_multiple.numerator)
            return build_report("euler_sine", params, mpf(0), mpf(0), ctx,
                                terms_used=min(terms, j0),
                                lhs_source=f"factor j={j0} vanishes exactly",
                                rhs_source="sin(a)/a = 0",
                                details={"vanishing_factor": j0})
        if a.is_zero():
            return _trivial("euler_sine", params, 1, ctx, "empty product at a = 0")
    with ctx.workprec():
        av = _as_real(a, ctx)
        c = av * av / mpmath.pi ** 2
        prod = mpf(1)
        for j in range(1, terms + 1):
            prod *= 1 - c / (j * j)
        rhs = mpmath.sin(av) / av
        # remainder of sum_{j>terms} c/j^2 is below c/terms; inflate by the
        # first discarded factor to make the product bound rigorous
        s_ub = (c / terms) / (1 - c / (terms + 1) ** 2)
        tail_bound = abs(prod) * mpmath.expm1(s_ub)
        tol = tail_bound * mpf("1.1")
    return build_report("euler_sine", params, prod, rhs, ctx,
                        terms_used=terms, tail_bound=tail_bound,
                        abs_tolerance=tol,
                        lhs_source="partial Euler sine product",
                        rhs_source="sin(a)/a",
                        details={"tail_estimate": c / terms})


# --- summation identities ---------------------------------------------------------

def vsum3_check(a, ctx: PrecisionContext) -> VerificationReport:
    """Sum_{j>=1} (2**(j-1) - a/sin(a/2**(j-1))) == a*cot(a) - 1."""
    a = _require_exact(a) if isinstance(a, (ExactArgument, int, str, Fraction)) else a
    params = {"a": str(a)}
    if isinstance(a, ExactArgument):
        if a.is_zero():
            return _trivial("vsum3", params, 0, ctx, "every summand vanishes at a = 0")
        if classify(a).kind in (ODD_PI_MULTIPLE, EVEN_PI_MULTIPLE):
            raise DomainError("sin(a) vanishes; sum undefined at integer multiples of pi")
    extra = _tail_guard(ctx)
    with ctx.workprec(extra):
        av = _as_real(a, ctx, extra)
        if av == 0:
            return _trivial("vsum3", params, 0, ctx, "every summand vanishes at a = 0")

        def terms():
            j = 1
            while True:
                x = av / 2 ** (j - 1)
                yield mpf(2) ** (j - 1) - av / mpmath.sin(x)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="vsum3 sum")
        rhs = av * mpmath.cot(av) - 1
    return build_report("vsum3", params, partial.value, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="term-by-term sum", rhs_source="a*cot(a) - 1")


def h25_finite_sum(x, n: int, ctx: PrecisionContext) -> VerificationReport:
    """Sum_{j=0}^{n} 1/sin(x/2**j) == cot(x/2**(n+1)) - cot(x), exact."""
    if n < 0:
        raise DomainError("n must be >= 0")
    x = _require_exact(x) if isinstance(x, (ExactArgument, int, str, Fraction)) else x
    if isinstance(x, ExactArgument):
        for j in range(n + 1):
            if x.scaled(Fraction(1, 2 ** j)).is_sin_zero():
                raise DomainError(f"sin(x/2^{j}) vanishes")
    with ctx.workprec():
        xv = _as_real(x, ctx)
        lhs = mpmath.fsum(1 / mpmath.sin(xv / 2 ** j) for j in range(n + 1))
        rhs = mpmath.cot(xv / 2 ** (n + 1)) - mpmath.cot(xv)
    return build_report("h25", {"x": str(x), "n": n}, lhs, rhs, ctx,
                        terms_used=n + 1,
                        lhs_source="finite cosecant sum",
                        rhs_source="cotangent telescoping")


def r1bd_digamma_sum(a, ctx: PrecisionContext) -> VerificationReport:
    """Sum_{j>=1} (2*ln2 - psi(1 + a/2**j) + psi(a/2**j + 1/2))
    == 2*psi(a+1) + 2*gamma, for a > 0."""
    with ctx.workprec():
        av = _as_real(a, ctx)
        if not av > 0:
            raise DomainError("r1bd requires a > 0")
        ln2 = mpmath.log(2)

        def terms():
            j = 1
            while True:
                t = av / 2 ** j
                yield 2 * ln2 - digamma(1 + t, ctx) + digamma(t + mpf(1) / 2, ctx)
                j += 1

        partial = sum_with_tail(terms(), ctx, description="r1bd digamma sum")
        rhs = 2 * digamma(av + 1, ctx) + 2 * euler_gamma(ctx)
    return build_report("r1bd", {"a": str(a)}, partial.value, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="digamma difference sum",
                        rhs_source="2*psi(a+1) + 2*gamma")


def gn3ad_digamma_sum(a, ctx: PrecisionContext) -> VerificationReport:
    """Sum_{j>=0} 3**-(1+j) * (3*ln3 + psi(a/3**(1+j) + 1/3) + psi(a/3**(1+j) + 2/3))
    == psi(a+1), for a > 0."""
    with ctx.workprec():
        av = _as_real(a, ctx)
        if not av > 0:
            raise DomainError("gn3ad requires a > 0")
        ln3 = mpmath.log(3)
        third = mpf(1) / 3

        def terms():
            j = 0
            while True:
                w = mpf(3) ** (-(1 + j))
                t = av * w
                yield w * (3 * ln3 + digamma(t + third, ctx) + digamma(t + 2 * third, ctx))
                j += 1

        partial = sum_with_tail(terms(), ctx, description="gn3ad digamma sum")
        rhs = digamma(av + 1, ctx)
    return build_report("gn3ad", {"a": str(a)}, partial.value, rhs, ctx,
                        terms_used=partial.terms_used, tail_bound=partial.tail_bound,
                        lhs_source="base-3 digamma sum",
                        rhs_source="psi(a+1)")


def geometric_weight_sum(n: int) -> tuple[int, int]:
    """Sum_{j=0}^{n} 2**j and its closed form 2**(n+1) - 1 (both returned)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(2 ** j for j in range(n + 1)), 2 ** (n + 1) - 1
