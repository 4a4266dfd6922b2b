"""Exploratory tooling for the doubling-product anomalies.

Two families live here.  The first is the product of (tan(2**j*a))**(2**-j)
factors with principal-branch powers for negative tangents: the product does
not converge to 4*sin(a)**2 in general (that needs the tail condition
lim (sin(2**(1+j)*a))**(2**-j) = 1), but a finite closure identity derived
from telescoping tan(x) = 2*sin(x)**2/sin(2x) pins every partial product:

    |P_J| * (2*|sin(2**(J+1)*a)|)**(2**-J) = 4*sin(a)**2        (modulus)
    Arg(P_J) = pi * Sum_{j<=J} 2**-j * [tan(2**j*a) < 0]        (phase)

Principal-branch powers are not multiplicative across a sign change, so the
naive complex equation P_J*(2*sin(2**(J+1)*a))**(2**-J) = 4*sin(a)**2 fails
whenever a negative tangent appears; the branch-corrected closure above is
the exact, checkable form and both are recorded per J.

The second family is the finite cosine product prod cos(2**j*a), whose
k -> infinity limit is an accumulation point rather than a limit; the
trajectory tooling records Cauchy violations and the rescaled identity
whose right side is exactly 2**-k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf, mpc

from .errors import DomainError
from .precision import ExactArgument, PrecisionContext, pow_principal, reduce_scaled
from .products import (ArgumentClass, EVEN_PI_MULTIPLE, ODD_PI_MULTIPLE, POLE_DYADIC,
                       classify, _require_exact)
from .reports import VerificationReport, build_report


@dataclass
class DobinskiFactor:
    j: int
    tan_value: mpf
    branch: str          # "real" or "complex"
    factor: mpc


@dataclass
class DobinskiTrace:
    """Per-factor trace of the doubling tangent product at one point.

    partial_products[J] multiplies factors 0..J; branch_phase[J] is the
    exact accumulated phase Sum_{j<=J} 2**-j * [tan(2**j*a) < 0] as a
    rational multiple of pi; closure_defect[J] is the branch-corrected
    closure residual, naive_closure[J] the uncorrected complex product
    P_J * (2*sin(2**(J+1)*a))**(2**-J).
    """

    a: ExactArgument
    target: mpf                       # 4*sin(a)**2
    factors: list = field(default_factory=list)
    partial_products: list = field(default_factory=list)
    deviations: list = field(default_factory=list)          # |P_J - target|
    agnew_walker_seq: list = field(default_factory=list)    # (sin(2**(1+j)a))**(2**-j)
    branch_phase: list = field(default_factory=list)        # Fraction multiples of pi
    closure_defect: list = field(default_factory=list)
    naive_closure: list = field(default_factory=list)
    modulus_closure: list = field(default_factory=list)     # |P_J|*(2|sin..|)**2**-J


def _require_not_dyadic(a: ExactArgument, op: str) -> ArgumentClass:
    cls = classify(a)
    if cls.kind == POLE_DYADIC:
        raise DomainError(
            f"{op}: a = {a} lies in the dyadic exclusion set (2n+1)*pi/2**k; "
            "a doubling step hits a tangent pole"
        )
    return cls


def dobinski_evaluate(a, J: int, ctx: PrecisionContext) -> DobinskiTrace:
    """Evaluate factors (tan(2**j*a))**(2**-j), j = 0..J, under the principal
    branch, with the telescoping closure checked at every J."""
    if J < 0:
        raise DomainError("J must be >= 0")
    a = _require_exact(a)
    _require_not_dyadic(a, "dobinski")
    extra = math.ceil((J + 1) * math.log10(2)) + 8
    with ctx.workprec(extra):
        av = a.realize(ctx, extra)
        target = 4 * mpmath.sin(av) ** 2
        trace = DobinskiTrace(a=a, target=target)
        partial = mpc(1, 0)
        phase = Fraction(0)
        for j in range(J + 1):
            angle = reduce_scaled(a, 2, j, ctx)
            tan_j = mpmath.tan(angle)
            w = mpf(2) ** (-j)
            factor = pow_principal(tan_j, w, ctx)
            branch = "real" if tan_j >= 0 else "complex"
            if tan_j < 0:
                phase += Fraction(1, 2 ** j)
            partial = partial * factor
            trace.factors.append(DobinskiFactor(j, tan_j, branch, factor))
            trace.partial_products.append(partial)
            trace.deviations.append(abs(partial - target))
            sin_next = mpmath.sin(reduce_scaled(a, 2, j + 1, ctx))
            trace.agnew_walker_seq.append(pow_principal(sin_next, w, ctx))
            closure_base = 2 * sin_next
            closure = pow_principal(closure_base, w, ctx)
            total_phase = phase + (Fraction(1, 2 ** j) if closure_base < 0 else 0)
            trace.branch_phase.append(total_phase)
            naive = partial * closure
            trace.naive_closure.append(naive)
            # remove the exactly known branch phase; what remains must be the
            # real target
            unwind = mpmath.exp(mpc(0, -1) * mpf(total_phase.numerator)
                                / total_phase.denominator * mpmath.pi) \
                if total_phase else mpc(1, 0)
            corrected = naive * unwind
            trace.closure_defect.append(abs(corrected - target))
            trace.modulus_closure.append(abs(partial) * (2 * abs(sin_next)) ** w)
    return trace


def dobinski_closure_report(a, J: int, ctx: PrecisionContext) -> VerificationReport:
    """Branch-corrected closure at depth J as a pass/fail report."""
    trace = dobinski_evaluate(a, J, ctx)
    with ctx.workprec():
        lhs = trace.modulus_closure[-1]
        rhs = trace.target
    return build_report(
        "dobinski_closure", {"a": str(trace.a), "J": J}, lhs, rhs, ctx,
        terms_used=J + 1,
        lhs_source="modulus closure |P_J|*(2|sin(2^(J+1)a)|)^(2^-J)",
        rhs_source="4*sin(a)^2",
        details={
            "corrected_defect": trace.closure_defect[-1],
            "naive_closure": trace.naive_closure[-1],
            "branch_phase_over_pi": str(trace.branch_phase[-1]),
            "deviation_from_target": trace.deviations[-1],
        },
    )


def agnew_walker_condition(a, J: int, ctx: PrecisionContext) -> list[dict]:
    """Sequence s_j = (sin(2**(1+j)*a))**(2**-j) with modulus and distance
    from 1; the product converges to the closed form exactly when s_j -> 1."""
    if J < 0:
        raise DomainError("J must be >= 0")
    a = _require_exact(a)
    _require_not_dyadic(a, "agnew_walker")
    extra = math.ceil((J + 1) * math.log10(2)) + 8
    rows = []
    with ctx.workprec(extra):
        for j in range(J + 1):
            sin_v = mpmath.sin(reduce_scaled(a, 2, j + 1, ctx))
            s = pow_principal(sin_v, mpf(2) ** (-j), ctx)
            rows.append({
                "j": j,
                "s": s,
                "modulus": abs(s),
                "distance_from_one": abs(s - 1),
                "sin_negative": bool(sin_v < 0),
            })
    return rows


# --- finite cosine product limit anatomy ---------------------------------------

@dataclass
class LimitTrajectory:
    """P_k = prod_{j<k} cos(2**j*a) against sin(2**k*a)/(2**k*sin(a)), with
    the rescaled column sin(a)*P_k/sin(2**k*a) that must equal 2**-k, and
    Cauchy violations |P_k2/P_k1 - 1| > 0.5 among consecutive indices."""

    a: ExactArgument
    k_values: list
    lhs_products: list
    rhs_values: list
    br114a_values: list
    cauchy_violations: list   # (k1, k2, |ratio - 1|)

    def violation_in_window(self, start: int, length: int, threshold=0.5) -> bool:
        """Any pair k1 < k2 inside [start, start+length) with
        |P_k2/P_k1 - 1| > threshold and both |P| < 1."""
        idx = {k: i for i, k in enumerate(self.k_values)}
        ks = [k for k in self.k_values if start <= k < start + length]
        for i, k1 in enumerate(ks):
            p1 = self.lhs_products[idx[k1]]
            if not abs(p1) < 1 or p1 == 0:
                continue
            for k2 in ks[i + 1:]:
                p2 = self.lhs_products[idx[k2]]
                if abs(p2) < 1 and abs(p2 / p1 - 1) > threshold:
                    return True
        return False


def weierstrass_trajectory(a, k_max: int, ctx: PrecisionContext,
                           allow_deep: bool = False) -> LimitTrajectory:
    """Track the finite identity for k = 1..k_max with guard-digit reduction.

    Refuses k_max whose reduction precision would exceed 4x the context
    digits unless ``allow_deep`` is set (cost transparency).
    """
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    a = _require_exact(a)
    if a.is_sin_zero():
        raise DomainError("sin(a) = 0; use the zero-factor anatomy instead")
    extra = math.ceil(k_max * math.log10(2))
    if ctx.digits + extra + ctx.guard_digits > 4 * ctx.digits and not allow_deep:
        raise DomainError(
            f"k_max={k_max} needs about {ctx.digits + extra + ctx.guard_digits} working "
            f"digits (> 4x digits); pass allow_deep=True to accept the cost"
        )
    with ctx.workprec(extra):
        av = a.realize(ctx, extra)
        sin_a = mpmath.sin(av)
        ks, lhs, rhs, resc = [], [], [], []
        violations = []
        partial = mpf(1)
        prev = None
        for k in range(1, k_max + 1):
            partial *= mpmath.cos(reduce_scaled(a, 2, k - 1, ctx))
            sin_k = mpmath.sin(reduce_scaled(a, 2, k, ctx))
            ks.append(k)
            lhs.append(partial)
            rhs.append(sin_k / (mpf(2) ** k * sin_a))
            resc.append(sin_a * partial / sin_k)
            if prev is not None and abs(prev) < 1 and abs(partial) < 1 and prev != 0:
                jump = abs(partial / prev - 1)
                if jump > mpf("0.5"):
                    violations.append((k - 1, k, jump))
            prev = partial
    return LimitTrajectory(a=a, k_values=ks, lhs_products=lhs, rhs_values=rhs,
                           br114a_values=resc, cauchy_violations=violations)


def case1_expansion_check(n: int, k: int, ctx: PrecisionContext) -> VerificationReport:
    """Quadratic behaviour of prod_{j<k} cos(2**j*a) near a = 2**n*pi.

    For n >= 1 every factor equals 1 at the center and the product expands as
    1 + (1-4**k)/6 * (a - 2**n*pi)**2; the check compares a second central
    difference against the coefficient (1-4**k)/3.  For n = 0 the j = 0
    factor is cos(pi) = -1, so the center value is -1 and the same
    coefficient appears relative to the center (reported, not asserted as
    the unity case).
    """
    if k < 1 or k > 12:
        raise DomainError("need 1 <= k <= 12 (finite-difference conditioning)")
    if n < 0:
        raise DomainError("n must be >= 0")
    center = ExactArgument.pi_fraction(2 ** n)
    with ctx.workprec():
        h = mpf(10) ** (-mpf(ctx.digits) / 4)
        center_factors = []
        c0 = mpf(1)
        for j in range(k):
            # 2**j * 2**n * pi reduces exactly to 0 or pi
            angle = reduce_scaled(center, 2, j, ctx)
            f = mpmath.cos(angle)
            center_factors.append(f)
            c0 *= f

        def product_at_offset(offset):
            p = mpf(1)
            for j in range(k):
                base = reduce_scaled(center, 2, j, ctx)
                p *= mpmath.cos(base + 2 ** j * offset)
            return p

        d2 = (product_at_offset(h) - 2 * c0 + product_at_offset(-h)) / (h * h)
        lhs = d2 / c0
        rhs = (1 - mpf(4) ** k) / 3
        tol = abs(rhs) * mpf("1e-6")
    return build_report(
        "case1", {"n": n, "k": k}, lhs, rhs, ctx,
        abs_tolerance=tol,
        lhs_source="second central difference over the center value",
        rhs_source="(1 - 4^k)/3",
        details={
            "center_value": c0,
            "factors_at_center": center_factors,
            "all_factors_unity": bool(n >= 1),
            "step": h,
        },
    )


def case2_zero_factor(m: int, k: int, ctx: PrecisionContext) -> dict:
    """At a = pi/2**m: for k >= m the right side vanishes and exactly the
    factor indexed j = m-1 (cos(pi/2)) is zero; for k < m both sides are
    nonzero and equal."""
    if m < 1 or k < 1:
        raise DomainError("need m >= 1 and k >= 1")
    a = ExactArgument.pi_fraction(Fraction(1, 2 ** m))
    zero_indices = []
    with ctx.workprec():
        av = a.realize(ctx)
        product = mpf(1)
        factors = []
        for j in range(k):
            scaled = a.scaled(2 ** j)
            if scaled.is_cos_zero():
                zero_indices.append(j)
                factors.append(mpf(0))
                product = mpf(0)
                continue
            f = mpmath.cos(reduce_scaled(a, 2, j, ctx))
            factors.append(f)
            product *= f
        rhs_arg = a.scaled(2 ** k)
        rhs_is_zero = rhs_arg.is_sin_zero()
        rhs = mpf(0) if rhs_is_zero else \
            mpmath.sin(reduce_scaled(a, 2, k, ctx)) / (mpf(2) ** k * mpmath.sin(av))
    return {
        "m": m,
        "k": k,
        "zero_factor_indices": zero_indices,
        "expected_zero_index": m - 1 if k >= m else None,
        "rhs_is_zero": rhs_is_zero,
        "product": product,
        "rhs": rhs,
        "factors": factors,
        "factor_theorem_consistent": (product == 0) == rhs_is_zero,
    }


def jo2_zero_anatomy(k: int, ctx: PrecisionContext) -> dict:
    """Even k: the cosine product over j = 1..2k-1 vanishes at j = k/2 and
    j = 3k/2 (two zero factors) while the closed form ((-1)**k - 1)/2**(2k-1)
    has a plain zero; the order mismatch is reported as a note."""
    if k < 2 or k % 2:
        raise DomainError("jo2 zero anatomy needs even k >= 2")
    zero_indices = []
    with ctx.workprec():
        for j in range(1, 2 * k):
            if 2 * j == k or 2 * j == 3 * k:
                zero_indices.append(j)
        rhs = mpf((-1) ** k - 1) / mpf(2) ** (2 * k - 1)
    return {
        "k": k,
        "zero_factor_indices": zero_indices,
        "expected_indices": [k // 2, 3 * k // 2],
        "rhs": rhs,
        "note": "two vanishing factors against a simple zero of the closed form; "
                "k is discrete, so no order-of-zero contradiction arises",
    }
