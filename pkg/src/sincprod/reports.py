"""Verification report type and serialization helpers."""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mpf, mpc

from .precision import PrecisionContext, to_decimal, complex_to_decimal

SCHEMA_VERSION = "1"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationReport:
    """Outcome of checking LHS == RHS for one identity at one parameter point.

    verdict is "pass" iff abs_error <= max(tail_tolerance, rel_tolerance*|rhs|),
    "inconclusive" when the evaluation did not converge, "fail" otherwise.
    """

    identity_id: str
    parameters: dict
    lhs: object
    rhs: object
    abs_error: object
    rel_error: object
    terms_used: int
    tail_bound: object
    verdict: str
    lhs_source: str = ""
    rhs_source: str = ""
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


def build_report(identity_id: str, parameters: dict, lhs, rhs, ctx: PrecisionContext,
                 *, terms_used: int = 0, tail_bound=None, inconclusive: bool = False,
                 lhs_source: str = "", rhs_source: str = "", details: dict | None = None,
                 abs_tolerance=None) -> VerificationReport:
    with ctx.workprec():
        diff = lhs - rhs
        abs_error = abs(diff)
        rhs_mag = abs(rhs)
        rel_error = abs_error / rhs_mag if rhs_mag > 0 else None
        if inconclusive:
            verdict = INCONCLUSIVE
        else:
            allowed = abs_tolerance if abs_tolerance is not None else max(
                ctx.tail_eps(), ctx.rel_eps() * rhs_mag
            )
            verdict = PASS if abs_error <= allowed else FAIL
    return VerificationReport(
        identity_id=identity_id,
        parameters=dict(parameters),
        lhs=lhs,
        rhs=rhs,
        abs_error=abs_error,
        rel_error=rel_error,
        terms_used=terms_used,
        tail_bound=tail_bound,
        verdict=verdict,
        lhs_source=lhs_source,
        rhs_source=rhs_source,
        details=details or {},
    )


def _render(value, ctx: PrecisionContext):
    if value is None:
        return None
    if isinstance(value, mpc):
        return complex_to_decimal(value, ctx)
    if isinstance(value, mpf):
        return to_decimal(value, ctx)
    if isinstance(value, (list, tuple)):
        return [_render(v, ctx) for v in value]
    if isinstance(value, dict):
        return {k: _render(v, ctx) for k, v in value.items()}
    return value


def report_to_dict(report: VerificationReport, ctx: PrecisionContext) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "identity_id": report.identity_id,
        "parameters": {k: str(v) for k, v in report.parameters.items()},
        "lhs": _render(report.lhs, ctx),
        "rhs": _render(report.rhs, ctx),
        "abs_error": _render(report.abs_error, ctx),
        "rel_error": _render(report.rel_error, ctx),
        "terms_used": report.terms_used,
        "tail_bound": _render(report.tail_bound, ctx),
        "verdict": report.verdict,
        "lhs_source": report.lhs_source,
        "rhs_source": report.rhs_source,
        "details": _render(report.details, ctx),
    }


CSV_COLUMNS = [
    "identity_id", "parameters", "lhs", "rhs", "abs_error", "rel_error",
    "terms_used", "tail_bound", "verdict",
]


def report_to_csv_row(report: VerificationReport, ctx: PrecisionContext) -> list:
    d = report_to_dict(report, ctx)
    params = ";".join(f"{k}={v}" for k, v in sorted(d["parameters"].items()))
    return [d["identity_id"], params, d["lhs"], d["rhs"], d["abs_error"],
            d["rel_error"], d["terms_used"], d["tail_bound"], d["verdict"]]
