"""Identity catalog: stable string ids bound to evaluators and parameter schemas.

The command line resolves ``verify <id> key=value ...`` through this table;
parameters are parsed exactly (rationals and rational multiples of pi), so
exceptional-point classification never depends on binary floating parsing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import anomalies, funceq, gammazeta, products
from .errors import ParameterError, UnknownIdentityError
from .precision import ExactArgument, PrecisionContext
from .reports import VerificationReport, build_report


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str            # exact | real | int | real_list | choice
    required: bool = True
    default: object = None
    help: str = ""
    choices: tuple = ()


@dataclass(frozen=True)
class IdentitySpec:
    identity_id: str
    summary: str
    params: tuple
    evaluator: Callable


def _convert(spec: ParamSpec, raw: str):
    try:
        if spec.kind == "exact":
            return raw if isinstance(raw, ExactArgument) else ExactArgument.parse(str(raw))
        if spec.kind == "real":
            arg = raw if isinstance(raw, ExactArgument) else ExactArgument.parse(str(raw))
            return arg
        if spec.kind == "int":
            return int(str(raw))
        if spec.kind == "real_list":
            return [s for s in str(raw).split(",") if s]
        if spec.kind == "choice":
            value = str(raw)
            if value not in spec.choices:
                raise ValueError(f"must be one of {spec.choices}")
            return value
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"parameter {spec.name}={raw!r}: {exc}") from exc
    raise ParameterError(f"unknown parameter kind {spec.kind!r}")


def _realize(arg, ctx):
    return arg.realize(ctx) if isinstance(arg, ExactArgument) else arg


def _case2_report(m: int, k: int, ctx: PrecisionContext) -> VerificationReport:
    info = anomalies.case2_zero_factor(m, k, ctx)
    ok = info["factor_theorem_consistent"]
    if info["rhs_is_zero"]:
        ok = ok and info["zero_factor_indices"] == [info["expected_zero_index"]]
    report = build_report("case2", {"m": m, "k": k}, info["product"], info["rhs"], ctx,
                          lhs_source="cosine product",
                          rhs_source="sine quotient closed form",
                          details={k2: v for k2, v in info.items()
                                   if k2 in ("zero_factor_indices", "expected_zero_index",
                                             "rhs_is_zero", "factor_theorem_consistent")})
    if not ok:
        report.verdict = "fail"
    return report


def _jo2_zeros_report(k: int, ctx: PrecisionContext) -> VerificationReport:
    info = anomalies.jo2_zero_anatomy(k, ctx)
    from mpmath import mpf
    ok = info["zero_factor_indices"] == info["expected_indices"]
    report = build_report("jo2_zeros", {"k": k}, mpf(0), info["rhs"], ctx,
                          lhs_source="product with exact zero factors",
                          rhs_source="((-1)^k - 1)/2^(2k-1)",
                          details={"zero_factor_indices": info["zero_factor_indices"],
                                   "note": info["note"]})
    if not ok:
        report.verdict = "fail"
    return report


def _ids():
    P, F, G, A = products, funceq, gammazeta, anomalies
    e, r, i = "exact", "real", "int"
    entries = [
        ("vsum2", "infinite tangent product against a/sin(a)",
         [ParamSpec("a", e)],
         lambda p, ctx: P.vsum2_product(p["a"], ctx)),
        ("vsum2a", "hyperbolic tangent product against b/sinh(b)",
         [ParamSpec("b", r)],
         lambda p, ctx: P.vsum2a_hyperbolic(_realize(p["b"], ctx), ctx)),
        ("sinc", "cotangent product representation of sin(a)/a",
         [ParamSpec("a", e)],
         lambda p, ctx: P.sinc_cot_product(p["a"], ctx)),
        ("cpodd", "exceptional closed form at odd multiples of pi",
         [ParamSpec("n", i)],
         lambda p, ctx: P.cpodd_product(p["n"], ctx)),
        ("peo2", "exceptional closed form at even multiples of pi",
         [ParamSpec("m", i), ParamSpec("n", i)],
         lambda p, ctx: P.peo2_product(p["m"], p["n"], ctx)),
        ("cp1", "pole law of the first factor near odd multiples of pi",
         [ParamSpec("n", i), ParamSpec("eps", r)],
         lambda p, ctx: P.cp1_first_factor_check(p["n"], _realize(p["eps"], ctx), ctx)),
        ("epsilon_scaling", "divergence order of the perturbed product",
         [ParamSpec("m", i), ParamSpec("n", i), ParamSpec("eps", "real_list")],
         lambda p, ctx: P.epsilon_scaling_study(p["m"], p["n"], p["eps"], ctx)),
        ("gp1b", "recursive generalization against (a/sin(a))**2**n",
         [ParamSpec("n", i), ParamSpec("a", e)],
         lambda p, ctx: P.gp1b_product(p["n"], p["a"], ctx)),
        ("p5", "finite telescoping tangent product",
         [ParamSpec("n1", i), ParamSpec("n2", i), ParamSpec("a", e)],
         lambda p, ctx: P.finite_p5_product(p["n1"], p["n2"], p["a"], ctx)),
        ("x1", "four-factor tangent instance of the finite product",
         [ParamSpec("a", e)],
         lambda p, ctx: P.x1_instance_report(p["a"], ctx)),
        ("x1b", "one-step half-angle tangent identity",
         [ParamSpec("n", i), ParamSpec("a", e)],
         lambda p, ctx: P.x1b_instance_report(p["n"], p["a"], ctx)),
        ("g2a", "even-base cosine-mean product for sinc",
         [ParamSpec("N", i), ParamSpec("a", e)],
         lambda p, ctx: P.nplication_product("even", p["N"], p["a"], ctx, "g2a")),
        ("g2x", "odd-base cosine-mean product for sinc",
         [ParamSpec("N", i), ParamSpec("a", e)],
         lambda p, ctx: P.nplication_product("odd", p["N"], p["a"], ctx, "g2x")),
        ("gn1", "halving cosine product for sinc (even base 2)",
         [ParamSpec("a", e)],
         lambda p, ctx: P.nplication_product("even", 1, p["a"], ctx, "gn1")),
        ("gn3ca", "base-3 cosine product for sinc",
         [ParamSpec("a", e)],
         lambda p, ctx: P.nplication_product("odd", 1, p["a"], ctx, "gn3ca")),
        ("gn3ci", "base-3 sine-square product for sinc",
         [ParamSpec("a", e)],
         lambda p, ctx: P.gn3ci_product(p["a"], ctx)),
        ("gn4a", "base-4 cosine product for sinc",
         [ParamSpec("a", e)],
         lambda p, ctx: P.nplication_product("even", 2, p["a"], ctx, "gn4a")),
        ("gn5b", "base-5 cosine product for sinc",
         [ParamSpec("a", e)],
         lambda p, ctx: P.nplication_product("odd", 2, p["a"], ctx, "gn5b")),
        ("viete", "nested-radical product for 2/pi",
         [],
         lambda p, ctx: P.viete_product(ctx)),
        ("sumid1", "even-base cosine sum closed form",
         [ParamSpec("N", i), ParamSpec("j", i), ParamSpec("a", e)],
         lambda p, ctx: P.cosine_sum_lemma("even", p["N"], p["j"], p["a"], ctx)),
        ("sumid2", "odd-base cosine sum closed form",
         [ParamSpec("N", i), ParamSpec("j", i), ParamSpec("a", e)],
         lambda p, ctx: P.cosine_sum_lemma("odd", p["N"], p["j"], p["a"], ctx)),
        ("br114", "finite doubling cosine product",
         [ParamSpec("a", e), ParamSpec("k", i)],
         lambda p, ctx: P.br114_finite(p["a"], p["k"], ctx)),
        ("jo1", "normalized tangent product equal to 1",
         [ParamSpec("n", i)],
         lambda p, ctx: P.jo1_check(p["n"], ctx)),
        ("jo2", "cosine product over multiples of pi/k",
         [ParamSpec("k", i)],
         lambda p, ctx: P.jo2_check(p["k"], ctx)),
        ("euler_sine", "classical quadratic-factor sine product (slow)",
         [ParamSpec("a", e), ParamSpec("terms", i, required=False, default=10000)],
         lambda p, ctx: P.euler_sine_product(p["a"], ctx, terms=p["terms"])),
        ("vsum3", "derivative sum against a*cot(a) - 1",
         [ParamSpec("a", e)],
         lambda p, ctx: P.vsum3_check(p["a"], ctx)),
        ("h25", "finite cosecant sum against cotangent telescoping",
         [ParamSpec("x", e), ParamSpec("n", i)],
         lambda p, ctx: P.h25_finite_sum(p["x"], p["n"], ctx)),
        ("r1bd", "doubling digamma sum against 2*psi(a+1) + 2*gamma",
         [ParamSpec("a", r)],
         lambda p, ctx: P.r1bd_digamma_sum(_realize(p["a"], ctx), ctx)),
        ("gn3ad", "base-3 digamma sum against psi(a+1)",
         [ParamSpec("a", r)],
         lambda p, ctx: P.gn3ad_digamma_sum(_realize(p["a"], ctx), ctx)),
        ("eta_series", "eta power series against the log-Gamma closed form",
         [ParamSpec("a", r)],
         lambda p, ctx: F.eta_series_check(_realize(p["a"], ctx), ctx)),
        ("zeta_series", "zeta power series against -lnGamma(a+1)/a - gamma",
         [ParamSpec("a", r)],
         lambda p, ctx: F.zeta_series_check(_realize(p["a"], ctx), ctx)),
        ("cm1b", "splitting consistency of the zeta power series",
         [ParamSpec("a", r)],
         lambda p, ctx: F.cm1b_splitting_check(_realize(p["a"], ctx), ctx)),
        ("rs2", "exponentially weighted log-Gamma sum",
         [ParamSpec("a", r)],
         lambda p, ctx: F.rs2_sum_check(_realize(p["a"], ctx), ctx)),
        ("r0a", "Gamma-ratio product against exp(-2*gamma*a)",
         [ParamSpec("a", r)],
         lambda p, ctx: F.r0a_product_check(_realize(p["a"], ctx), ctx)),
        ("gn3a", "base-3 series solution for lnGamma(1+a)",
         [ParamSpec("a", r)],
         lambda p, ctx: F.gn3a_series_check(_realize(p["a"], ctx), ctx)),
        ("gauss_mult", "multiplication formula for Gamma in log form",
         [ParamSpec("n", i), ParamSpec("a", r)],
         lambda p, ctx: G.gauss_multiplication_check(p["n"], _realize(p["a"], ctx), ctx)),
        ("lngamma_duplication", "half-argument identity of lnGamma",
         [ParamSpec("a", r)],
         lambda p, ctx: G.duplication_check(_realize(p["a"], ctx), ctx)),
        ("eta_zeta", "eta(n) = (1 - 2**(1-n)) * zeta(n)",
         [ParamSpec("n", i)],
         lambda p, ctx: G.eta_zeta_relation_check(p["n"], ctx)),
        ("digamma_derivative", "digamma against finite difference of lnGamma",
         [ParamSpec("x", r)],
         lambda p, ctx: G.digamma_derivative_check(_realize(p["x"], ctx), ctx)),
        ("dobinski_closure", "branch-aware closure of the doubling tangent product",
         [ParamSpec("a", e), ParamSpec("J", i)],
         lambda p, ctx: A.dobinski_closure_report(p["a"], p["J"], ctx)),
        ("case1", "quadratic expansion of the cosine product at even pi multiples",
         [ParamSpec("n", i), ParamSpec("k", i)],
         lambda p, ctx: A.case1_expansion_check(p["n"], p["k"], ctx)),
        ("case2", "zero-factor bookkeeping at a = pi/2**m",
         [ParamSpec("m", i), ParamSpec("k", i)],
         lambda p, ctx: _case2_report(p["m"], p["k"], ctx)),
        ("jo2_zeros", "double zero factors of the cosine product at even k",
         [ParamSpec("k", i)],
         lambda p, ctx: _jo2_zeros_report(p["k"], ctx)),
    ]
    return {
        identity_id: IdentitySpec(identity_id, summary, tuple(params), evaluator)
        for identity_id, summary, params, evaluator in entries
    }


CATALOG: dict = _ids()


def get(identity_id: str) -> IdentitySpec:
    try:
        return CATALOG[identity_id]
    except KeyError:
        raise UnknownIdentityError(identity_id) from None


def convert_params(spec: IdentitySpec, raw: dict) -> dict:
    known = {p.name for p in spec.params}
    unknown = set(raw) - known
    if unknown:
        raise ParameterError(f"unknown parameter(s) {sorted(unknown)} for {spec.identity_id}; "
                             f"expected {sorted(known)}")
    params = {}
    for p in spec.params:
        if p.name in raw:
            params[p.name] = _convert(p, raw[p.name])
        elif p.required:
            raise ParameterError(f"missing required parameter {p.name!r} for {spec.identity_id}")
        else:
            params[p.name] = p.default
    return params


def evaluate(identity_id: str, raw_params: dict, ctx: PrecisionContext) -> VerificationReport:
    spec = get(identity_id)
    params = convert_params(spec, raw_params)
    return spec.evaluator(params, ctx)
