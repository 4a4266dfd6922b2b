"""Gamma-family and zeta-family special functions at configurable precision.

ln-gamma and digamma are computed by recurrence shifting into the asymptotic
(Stirling) regime; eta at integer arguments by an accelerated alternating
series, with zeta derived through eta(n) = (1 - 2**(1-n)) * zeta(n).  The
Euler-Mascheroni constant falls out of the digamma series as -psi(1), so no
function here depends on an externally supplied gamma constant.

Only positive real arguments are supported for lngamma/digamma and integer
arguments n >= 2 for zeta/eta; that covers every identity in the library.
"""

from __future__ import annotations

import math
import threading

import mpmath
from mpmath import mpf

from .errors import DomainError
from .precision import PrecisionContext

_cache_lock = threading.Lock()
_constant_cache: dict = {}


def _cached(key, compute):
    with _cache_lock:
        if key in _constant_cache:
            return _constant_cache[key]
    value = compute()
    with _cache_lock:
        _constant_cache.setdefault(key, value)
    return value


def _stirling_shift_target(wdps: int) -> int:
    # smallest term of the Stirling series at y behaves like exp(-2*pi*y);
    # y >= 0.4*wdps + 4 pushes it below 10**-(1.09*wdps)
    return max(12, math.ceil(0.4 * wdps) + 4)


def _lngamma_raw(x: mpf, wdps: int) -> mpf:
    """ln(Gamma(x)) for x > 0 at wdps decimal digits (caller sets context)."""
    y0 = _stirling_shift_target(wdps)
    shift_sum = mpf(0)
    y = x
    steps = 0
    while y < y0:
        shift_sum += mpmath.log(y)
        y += 1
        steps += 1
        if steps > 10 * y0:
            raise RuntimeError("runaway recurrence shift")
    result = (y - mpf(1) / 2) * mpmath.log(y) - y + mpmath.log(2 * mpmath.pi) / 2
    target = mpf(10) ** (-(wdps + 5))
    y2 = y * y
    ypow = y
    k = 1
    while True:
        term = mpmath.bernoulli(2 * k) / ((2 * k) * (2 * k - 1) * ypow)
        result += term
        if abs(term) < target:
            break
        ypow *= y2
        k += 1
        if k > 8 * wdps:
            raise RuntimeError("Stirling series failed to reach tolerance")
    return result - shift_sum


def _target_dps(ctx: PrecisionContext) -> int:
    # honor any higher ambient precision so composite evaluations that run
    # at elevated precision get equally accurate special values
    return max(ctx.working_dps, mpmath.mp.dps)


def lngamma(x, ctx: PrecisionContext) -> mpf:
    """ln(Gamma(x)), x > 0."""
    wdps = _target_dps(ctx)
    with mpmath.workdps(wdps):
        x = mpf(x) if not isinstance(x, mpf) else x
        if not x > 0:
            raise DomainError("lngamma requires x > 0")
    y0 = _stirling_shift_target(wdps)
    # the shifted value has magnitude ~ y0*ln(y0); keep those digits as slack
    extra = math.ceil(math.log10(max(2.0, y0 * math.log(y0)))) + 5
    with mpmath.workdps(wdps + extra):
        return +_lngamma_raw(x, wdps + extra)


def _digamma_raw(x: mpf, wdps: int) -> mpf:
    y0 = _stirling_shift_target(wdps)
    shift_sum = mpf(0)
    y = x
    while y < y0:
        shift_sum += 1 / y
        y += 1
    result = mpmath.log(y) - 1 / (2 * y)
    target = mpf(10) ** (-(wdps + 5))
    y2 = y * y
    ypow = y2
    k = 1
    while True:
        term = mpmath.bernoulli(2 * k) / ((2 * k) * ypow)
        result -= term
        if abs(term) < target:
            break
        ypow *= y2
        k += 1
        if k > 8 * wdps:
            raise RuntimeError("digamma series failed to reach tolerance")
    return result - shift_sum


def digamma(x, ctx: PrecisionContext) -> mpf:
    """psi(x) = d/dx ln(Gamma(x)), x > 0."""
    wdps = _target_dps(ctx)
    with mpmath.workdps(wdps):
        x = mpf(x) if not isinstance(x, mpf) else x
        if not x > 0:
            raise DomainError("digamma requires x > 0")
    extra = 6
    with mpmath.workdps(wdps + extra):
        return +_digamma_raw(x, wdps + extra)


def euler_gamma(ctx: PrecisionContext) -> mpf:
    """Euler-Mascheroni constant, gamma = -psi(1)."""
    wdps = _target_dps(ctx)

    def compute():
        with mpmath.workdps(wdps + 6):
            return +(-_digamma_raw(mpf(1), wdps + 6))

    return _cached(("euler_gamma", wdps), compute)


def pi_value(ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return +mpmath.pi


def ln2_value(ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return mpmath.log(2)


def ln3_value(ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return mpmath.log(3)


# --- alternating series for eta ----------------------------------------------

def _alternating_sum(term, n_terms: int) -> mpf:
    """Accelerated sum of Sum_{k>=0} (-1)**k * term(k) for totally monotone
    terms; error decays like (3 + sqrt(8))**-n_terms."""
    d = (3 + 2 * mpmath.sqrt(2)) ** n_terms
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    s = mpf(0)
    for k in range(n_terms):
        c = b - c
        s += c * term(k)
        b *= (k + n_terms) * (k - n_terms) / ((k + mpf(1) / 2) * (k + 1))
    return s / d


def eta_int(n: int, ctx: PrecisionContext) -> mpf:
    """Dirichlet eta at an integer argument n >= 2,
    eta(n) = Sum_{k>=0} (-1)**k / (k+1)**n."""
    if not isinstance(n, int) or n < 2:
        raise DomainError("eta_int requires an integer argument n >= 2")
    wdps = _target_dps(ctx)

    def compute():
        w = wdps + 6
        with mpmath.workdps(w):
            if n * math.log10(2) > w + 4:
                # tail after the k-th term is below (k+2)**-n; a handful of
                # direct terms already lands under the target
                target = mpf(10) ** (-(w + 2))
                s = mpf(0)
                k = 0
                sign = 1
                while True:
                    term = mpf(k + 1) ** (-n)
                    s += sign * term
                    if term < target:
                        return +s
                    k += 1
                    sign = -sign
            n_terms = math.ceil((w + 6) * math.log(10) / math.log(3 + math.sqrt(8))) + 3
            return +_alternating_sum(lambda k: mpf(k + 1) ** (-n), n_terms)

    return _cached(("eta", n, wdps), compute)


def zeta_int(n: int, ctx: PrecisionContext) -> mpf:
    """Riemann zeta at an integer argument n >= 2, derived from eta through
    zeta(n) = eta(n) / (1 - 2**(1-n))."""
    if not isinstance(n, int) or n < 2:
        raise DomainError("zeta_int requires an integer argument n >= 2")
    wdps = _target_dps(ctx)

    def compute():
        e = eta_int(n, ctx)
        with mpmath.workdps(wdps + 6):
            return +(e / (1 - mpf(2) ** (1 - n)))

    return _cached(("zeta", n, wdps), compute)


# --- identity checks used by the verification layer ---------------------------

def duplication_defect(a, ctx: PrecisionContext) -> mpf:
    """g(a) = a*ln2 - ln(pi)/2 + lnGamma(a/2 + 1/2), the inhomogeneity of the
    half-argument recursion lnGamma(1+a) = g(a) + lnGamma(1+a/2)."""
    with ctx.workprec():
        a = mpf(a)
        return +(a * mpmath.log(2) - mpmath.log(mpmath.pi) / 2 + lngamma(a / 2 + mpf(1) / 2, ctx))


def duplication_residual(a, ctx: PrecisionContext) -> mpf:
    """lnGamma(1+a) - [a*ln2 - ln(pi)/2 + lnGamma(a/2+1/2) + lnGamma(1+a/2)]."""
    with ctx.workprec():
        a = mpf(a)
        lhs = lngamma(1 + a, ctx)
        rhs = duplication_defect(a, ctx) + lngamma(1 + a / 2, ctx)
        return +(lhs - rhs)


def gauss_multiplication_residual(n: int, a, ctx: PrecisionContext) -> mpf:
    """Log-form residual of Gamma(n*a) = (2*pi)**((1-n)/2) * n**(n*a - 1/2)
    * Prod_{k=0}^{n-1} Gamma(a + k/n)."""
    if n < 2:
        raise DomainError("multiplication order n must be >= 2")
    with ctx.workprec():
        a = mpf(a)
        if not a > 0:
            raise DomainError("a must be > 0")
        lhs = lngamma(n * a, ctx)
        rhs = (mpf(1 - n) / 2) * mpmath.log(2 * mpmath.pi) + (n * a - mpf(1) / 2) * mpmath.log(n)
        for k in range(n):
            rhs += lngamma(a + mpf(k) / n, ctx)
        return +(lhs - rhs)


# --- report-producing checks (catalog surface) ---------------------------------

def duplication_check(a, ctx: PrecisionContext):
    """lnGamma(1+a) against a*ln2 - ln(pi)/2 + lnGamma(a/2+1/2) + lnGamma(1+a/2)."""
    from .reports import build_report
    with ctx.workprec():
        a = mpf(a)
        lhs = lngamma(1 + a, ctx)
        rhs = duplication_defect(a, ctx) + lngamma(1 + a / 2, ctx)
    return build_report("lngamma_duplication", {"a": a}, lhs, rhs, ctx,
                        lhs_source="lnGamma(1+a)",
                        rhs_source="half-argument combination")


def gauss_multiplication_check(n: int, a, ctx: PrecisionContext):
    """Multiplication formula in log form."""
    from .reports import build_report
    if n < 2:
        raise DomainError("multiplication order n must be >= 2")
    with ctx.workprec():
        a = mpf(a)
        if not a > 0:
            raise DomainError("a must be > 0")
        lhs = lngamma(n * a, ctx)
        rhs = (mpf(1 - n) / 2) * mpmath.log(2 * mpmath.pi) + (n * a - mpf(1) / 2) * mpmath.log(n)
        for k in range(n):
            rhs += lngamma(a + mpf(k) / n, ctx)
    return build_report("gauss_mult", {"n": n, "a": a}, lhs, rhs, ctx,
                        lhs_source="lnGamma(n*a)",
                        rhs_source="shifted Gamma product in log form")


def eta_zeta_relation_check(n: int, ctx: PrecisionContext):
    """eta(n) == (1 - 2**(1-n)) * zeta(n)."""
    from .reports import build_report
    with ctx.workprec():
        lhs = eta_int(n, ctx)
        rhs = (1 - mpf(2) ** (1 - n)) * zeta_int(n, ctx)
    return build_report("eta_zeta", {"n": n}, lhs, rhs, ctx,
                        lhs_source="alternating series",
                        rhs_source="(1-2^(1-n))*zeta(n)")


def digamma_derivative_check(x, ctx: PrecisionContext):
    """psi(x) against the central difference of lnGamma at step 10**(-digits/3)."""
    from .reports import build_report
    with ctx.workprec():
        x = mpf(x)
        h = mpf(10) ** (-mpf(ctx.digits) / 3)
        fd = (lngamma(x + h, ctx) - lngamma(x - h, ctx)) / (2 * h)
        psi = digamma(x, ctx)
        tol = mpf(10) ** (-mpf(ctx.digits) / 3)
    return build_report("digamma_derivative", {"x": x}, fd, psi, ctx,
                        abs_tolerance=tol,
                        lhs_source="central difference of lnGamma",
                        rhs_source="digamma series",
                        details={"step": h})
