"""sincprod: high-precision evaluation and verification of infinite
trigonometric product and series identities.

The library evaluates the tangent-power product representation of
a/sin(a) and its relatives (hyperbolic twin, cotangent form for sinc,
recursive and finite generalizations, cosine-mean products for every
integer base), the exceptional closed forms at integer multiples of pi,
eta/zeta power series with log-Gamma closed forms, digamma summation
identities, the doubling tangent product with complex principal branches,
and the limit anatomy of the finite doubling cosine product.  Everything
runs under an explicit precision context with certified truncation and
machine-readable verification reports.
"""

from .errors import (DomainError, EvaluationError, ExceptionalPoint, NoConvergence,
                     ParameterError, UnknownIdentityError)
from .precision import (BigComplex, BigReal, ExactArgument, PrecisionContext,
                        elementary, from_decimal, pow_principal, realize,
                        reduce_scaled, to_decimal)
from .gammazeta import (digamma, eta_int, euler_gamma, lngamma, pi_value,
                        zeta_int)
from .summation import PartialEvaluation, sum_with_tail
from .funceq import (F0_FINITE, F0_ZERO, F_INF_FINITE, FunceqProblem,
                     eta_series_check, expand_finite, r0a_product_check,
                     solve_expanding, solve_series, zeta_series_check)
from .products import ArgumentClass, classify
from .reports import VerificationReport, build_report
from .suite import run_acceptance

__version__ = "0.1.0"

__all__ = [
    "ArgumentClass", "BigComplex", "BigReal", "DomainError", "EvaluationError",
    "ExactArgument", "ExceptionalPoint", "F0_FINITE", "F0_ZERO", "F_INF_FINITE",
    "FunceqProblem", "NoConvergence", "ParameterError", "PartialEvaluation",
    "PrecisionContext", "UnknownIdentityError", "VerificationReport",
    "build_report", "classify", "digamma", "elementary", "eta_int",
    "eta_series_check", "euler_gamma", "expand_finite", "from_decimal",
    "lngamma", "pi_value", "pow_principal", "r0a_product_check", "realize",
    "reduce_scaled", "run_acceptance", "solve_expanding", "solve_series",
    "sum_with_tail", "to_decimal", "zeta_int", "zeta_series_check",
    "__version__",
]
