"""Truncation engine for infinite sums and log-space products.

The stopping rule: accept term j once |t_j| < tail_tolerance, the observed
ratio |t_j|/|t_{j-1}| is below the cap (0.75), and the geometric tail
estimate |t_j| * r / (1 - r) is itself below tail_tolerance.  Series whose
terms have not settled into geometric decay keep summing; hitting max_terms
raises :class:`NoConvergence` with the partial result attached.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mpf

from .errors import NoConvergence
from .precision import PrecisionContext

RATIO_CAP = 0.75


@dataclass
class PartialEvaluation:
    """Truncated value of a product or sum.

    value                the partial sum (or log-sum, or product)
    terms_used           number of terms consumed
    last_term_deviation  |last summand| (for products, |last factor - 1| in
                         log form)
    tail_bound           geometric estimate of the discarded remainder
    converged            tail_bound <= tail_tolerance at the stopping point
    """

    value: object
    terms_used: int
    last_term_deviation: object
    tail_bound: object
    converged: bool


def sum_with_tail(terms, ctx: PrecisionContext, *, ratio_cap: float = RATIO_CAP,
                  max_terms: int | None = None, description: str = "series") -> PartialEvaluation:
    """Sum an iterable of mpf terms under the geometric-dominance rule."""
    tol = ctx.tail_eps()
    cap = mpf(ratio_cap)
    limit = ctx.max_terms if max_terms is None else max_terms
    total = mpf(0)
    prev_mag = None
    prev_ratio = None
    last_mag = mpf(0)
    used = 0
    zero_streak = 0
    for t in terms:
        total += t
        used += 1
        mag = abs(t)
        last_mag = mag
        if mag == 0:
            zero_streak += 1
            # an identically vanishing tail (e.g. a = 0 inputs) is converged
            if zero_streak >= 2 and used >= 2:
                return PartialEvaluation(total, used, mag, mpf(0), True)
            prev_mag = mag
            prev_ratio = mpf(0)
            if used >= limit:
                break
            continue
        zero_streak = 0
        ratio = None
        if prev_mag is not None and prev_mag > 0:
            ratio = mag / prev_mag
        if mag < tol and ratio is not None and ratio <= cap:
            r = ratio if prev_ratio is None else max(ratio, min(prev_ratio, cap))
            tail = mag * r / (1 - r)
            if tail <= tol:
                return PartialEvaluation(total, used, mag, tail, True)
        prev_mag = mag
        prev_ratio = ratio
        if used >= limit:
            break
    partial = PartialEvaluation(total, used, last_mag, None, False)
    raise NoConvergence(
        f"{description}: tolerance {tol} not reached within {limit} terms", partial=partial
    )
