"""Command-line front end: verify, sweep, trace, funceq, suite.

Exit codes: 0 pass, 2 fail, 3 inconclusive, 4 unknown identity, 5 bad
parameters or domain error.  Numeric arguments are parsed exactly
(rationals, decimals taken as exact fractions, and rational multiples of
pi written like ``1/2*pi``), never through binary floats.

Configuration precedence: built-in defaults, then ``--config`` file
(``key = value`` lines), then ``SINCPROD_*`` environment variables, then
explicit flags.  JSON output is byte-stable for identical inputs; the
timestamp field is suppressed under ``--reproducible``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from . import catalog, funceq
from .anomalies import dobinski_evaluate, weierstrass_trajectory
from .errors import (DomainError, EvaluationError, ExceptionalPoint, NoConvergence,
                     ParameterError, UnknownIdentityError)
from .precision import ExactArgument, PrecisionContext, to_decimal
from .products import telescoping_trace
from .reports import (INCONCLUSIVE, SCHEMA_VERSION, report_to_csv_row, report_to_dict,
                      CSV_COLUMNS)
from .suite import CRITERION_IDS, DEFAULT_SEED, run_acceptance

EXIT_PASS = 0
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3
EXIT_UNKNOWN_IDENTITY = 4
EXIT_BAD_PARAMS = 5

ENV_PREFIX = "SINCPROD_"


@dataclass
class RunConfig:
    digits: int = 50
    tail_tolerance: float | None = None     # defaults to 10**-(digits-10)
    rel_tolerance: float | None = None      # defaults to 10**-(digits-10)
    max_terms: int = 256
    guard_digits: int = 10
    output_format: str = "json"
    seed: int = DEFAULT_SEED
    reproducible: bool = False
    output_path: str | None = None

    def context(self) -> PrecisionContext:
        return PrecisionContext(
            digits=self.digits,
            tail_tolerance=self.tail_tolerance,
            max_terms=self.max_terms,
            guard_digits=self.guard_digits,
            rel_tolerance=self.rel_tolerance,
        )


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


_CONFIG_KEYS = {
    "digits": int,
    "tol": float,
    "tail_tolerance": float,
    "rel_tolerance": float,
    "max_terms": int,
    "guard_digits": int,
    "format": str,
    "seed": int,
}


def build_config(args) -> RunConfig:
    cfg = RunConfig()

    def apply(key: str, raw):
        if raw is None:
            return
        if key in ("tol", "tail_tolerance"):
            cfg.tail_tolerance = float(raw)
        elif key == "rel_tolerance":
            cfg.rel_tolerance = float(raw)
        elif key == "digits":
            cfg.digits = int(raw)
        elif key == "max_terms":
            cfg.max_terms = int(raw)
        elif key == "guard_digits":
            cfg.guard_digits = int(raw)
        elif key == "format":
            value = str(raw).lower()
            if value not in ("json", "csv"):
                raise ParameterError(f"unknown output format {raw!r}")
            cfg.output_format = value
        elif key == "seed":
            cfg.seed = int(raw)

    if getattr(args, "config", None):
        for key, value in _load_config_file(args.config).items():
            if key not in _CONFIG_KEYS:
                raise ParameterError(f"unknown config key {key!r}")
            apply(key, value)
    for key in _CONFIG_KEYS:
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            apply(key, env)
    apply("digits", getattr(args, "digits", None))
    apply("tol", getattr(args, "tol", None))
    apply("rel_tolerance", getattr(args, "rel_tol", None))
    apply("max_terms", getattr(args, "max_terms", None))
    apply("guard_digits", getattr(args, "guard_digits", None))
    apply("format", getattr(args, "format", None))
    apply("seed", getattr(args, "seed", None))
    cfg.reproducible = bool(getattr(args, "reproducible", False))
    cfg.output_path = getattr(args, "output", None)
    return cfg


def _emit(text: str, cfg: RunConfig):
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_document(kind: str, cfg: RunConfig, payload: dict) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "config": {
            "digits": cfg.digits,
            "tail_tolerance": repr(cfg.context().tail_tolerance)
            if cfg.tail_tolerance is not None else f"1e-{cfg.digits - 10}",
            "rel_tolerance": repr(cfg.rel_tolerance)
            if cfg.rel_tolerance is not None else f"1e-{cfg.digits - 10}",
            "max_terms": cfg.max_terms,
            "guard_digits": cfg.guard_digits,
            "seed": cfg.seed,
        },
    }
    if not cfg.reproducible:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    doc.update(payload)
    return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"


def _csv_document(header: list, rows: list) -> str:
    buf = io.StringIO()
    buf.write(f"# sincprod schema {SCHEMA_VERSION}\n")
    writer = csv.writer(buf)
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def _parse_kv(pairs: list[str]) -> dict:
    params = {}
    for pair in pairs:
        if "=" not in pair:
            raise ParameterError(f"expected key=value, got {pair!r}")
        key, _, value = pair.partition("=")
        if not key or not value:
            raise ParameterError(f"expected key=value, got {pair!r}")
        params[key] = value
    return params


def _verdict_exit(verdict: str) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(verdict, EXIT_INCONCLUSIVE)


# --- subcommands ----------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = build_config(args)
    ctx = cfg.context()
    params = _parse_kv(args.params)
    try:
        report = catalog.evaluate(args.identity, params, ctx)
    except NoConvergence as exc:
        partial = exc.partial
        doc = {
            "identity_id": args.identity,
            "parameters": params,
            "verdict": INCONCLUSIVE,
            "reason": str(exc),
            "terms_used": getattr(partial, "terms_used", None),
        }
        _emit(_json_document("verification", cfg, {"report": doc}), cfg)
        return EXIT_INCONCLUSIVE
    if cfg.output_format == "csv":
        _emit(_csv_document(CSV_COLUMNS, [report_to_csv_row(report, ctx)]), cfg)
    else:
        _emit(_json_document("verification", cfg, {"report": report_to_dict(report, ctx)}), cfg)
    return _verdict_exit(report.verdict)


def _expand_sweep_value(spec_kind: str, value: str) -> list[str]:
    if spec_kind == "real_list":
        return [value]
    if ":" in value and spec_kind in ("exact", "real"):
        parts = value.split(":")
        if len(parts) != 3:
            raise ParameterError(f"range must be start:stop:count, got {value!r}")
        start, stop, count = Fraction(parts[0]), Fraction(parts[1]), int(parts[2])
        if count < 1:
            raise ParameterError("range count must be >= 1")
        if count == 1:
            return [str(start)]
        step = (stop - start) / (count - 1)
        return [str(start + k * step) for k in range(count)]
    if "," in value:
        items = [v for v in value.split(",") if v]
        if not items:
            raise ParameterError(f"empty list for {value!r}")
        return items
    return [value]


def cmd_sweep(args) -> int:
    cfg = build_config(args)
    ctx = cfg.context()
    spec = catalog.get(args.identity)
    kinds = {p.name: p.kind for p in spec.params}
    raw = _parse_kv(args.params)
    grids = []
    for key, value in raw.items():
        if key not in kinds:
            raise ParameterError(f"unknown parameter {key!r} for {args.identity}")
        grids.append([(key, v) for v in _expand_sweep_value(kinds[key], value)])
    if not grids or any(len(g) == 0 for g in grids):
        raise ParameterError("empty sweep range")
    rows = []
    verdicts = []
    from itertools import product as iproduct
    for combo in iproduct(*grids):
        point = dict(combo)
        try:
            report = catalog.evaluate(args.identity, point, ctx)
            rows.append(report_to_csv_row(report, ctx))
            verdicts.append(report.verdict)
        except NoConvergence:
            rows.append([args.identity,
                         ";".join(f"{k}={v}" for k, v in sorted(point.items())),
                         None, None, None, None, None, None, INCONCLUSIVE])
            verdicts.append(INCONCLUSIVE)
    if cfg.output_format == "json":
        docs = [dict(zip(CSV_COLUMNS, row)) for row in rows]
        _emit(_json_document("sweep", cfg, {"identity_id": args.identity, "rows": docs}), cfg)
    else:
        _emit(_csv_document(CSV_COLUMNS, rows), cfg)
    if any(v == "fail" for v in verdicts):
        return EXIT_FAIL
    if any(v == INCONCLUSIVE for v in verdicts):
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _trace_rows(kind: str, params: dict, ctx: PrecisionContext):
    def dec(x):
        return to_decimal(x, ctx) if isinstance(x, mpf) else x

    if kind == "dobinski":
        a = ExactArgument.parse(params.get("a", "1"))
        J = int(params.get("J", params.get("j", 20)))
        trace = dobinski_evaluate(a, J, ctx)
        header = ["j", "tan", "branch", "factor_re", "factor_im", "partial_re",
                  "partial_im", "target", "deviation", "closure_defect",
                  "branch_phase_over_pi"]
        rows = []
        for f in trace.factors:
            j = f.j
            rows.append([
                j, dec(f.tan_value), f.branch,
                dec(f.factor.real), dec(f.factor.imag),
                dec(trace.partial_products[j].real), dec(trace.partial_products[j].imag),
                dec(trace.target), dec(trace.deviations[j]),
                dec(trace.closure_defect[j]), str(trace.branch_phase[j]),
            ])
        return header, rows
    if kind == "weierstrass":
        a = ExactArgument.parse(params.get("a", "1"))
        kmax = int(params.get("kmax", 60))
        traj = weierstrass_trajectory(a, kmax, ctx,
                                      allow_deep=params.get("allow_deep", "") == "1")
        header = ["k", "lhs_product", "rhs_value", "br114a", "two_pow_neg_k",
                  "cauchy_jump_from_prev"]
        jumps = {k2: jump for (_, k2, jump) in traj.cauchy_violations}
        with ctx.workprec():
            rows = [[k, dec(l), dec(r), dec(b), dec(mpf(2) ** (-k)),
                     dec(jumps[k]) if k in jumps else ""]
                    for k, l, r, b in zip(traj.k_values, traj.lhs_products,
                                          traj.rhs_values, traj.br114a_values)]
        return header, rows
    if kind == "telescoping":
        a = ExactArgument.parse(params.get("a", "1"))
        N = int(params.get("N", 1))
        J = int(params.get("J", 10))
        trace = telescoping_trace(N, a, J, ctx)
        header = ["j", "factor", "cumulative", "closed_form", "limit_factor"]
        rows = [[j, dec(f), dec(c), dec(cl), dec(lf)]
                for j, (f, c, cl, lf) in enumerate(zip(trace.factors, trace.cumulative,
                                                       trace.closed, trace.limit_factors))]
        return header, rows
    raise ParameterError(f"unknown trace kind {kind!r}; choices: dobinski, weierstrass, telescoping")


def cmd_trace(args) -> int:
    cfg = build_config(args)
    ctx = cfg.context()
    params = _parse_kv(args.params)
    header, rows = _trace_rows(args.kind, params, ctx)
    if cfg.output_format == "json":
        docs = [dict(zip(header, row)) for row in rows]
        _emit(_json_document("trace", cfg, {"trace_kind": args.kind, "rows": docs}), cfg)
    else:
        _emit(_csv_document(header, rows), cfg)
    return EXIT_PASS


def cmd_funceq(args) -> int:
    cfg = build_config(args)
    ctx = cfg.context()
    params = _parse_kv(args.params)
    g_name = params.get("g", "linear")
    g, label = funceq.builtin_g(g_name, ctx)
    with ctx.workprec():
        x = ExactArgument.parse(params.get("x", "1/2")).realize(ctx)
        p = ExactArgument.parse(params.get("p", "2")).realize(ctx)
        a = ExactArgument.parse(params.get("a", "1")).realize(ctx)
    mode = params.get("mode", "series")
    if mode == "series":
        boundary = funceq.F0_FINITE if abs(x) < 1 else funceq.F0_ZERO
        prob = funceq.FunceqProblem(g, x, p, boundary, label)
        pe = funceq.solve_series(prob, a, ctx)
        payload = {"mode": mode, "g": g_name, "label": label,
                   "value": to_decimal(pe.value, ctx), "terms_used": pe.terms_used,
                   "last_term_deviation": to_decimal(pe.last_term_deviation, ctx),
                   "tail_bound": to_decimal(pe.tail_bound, ctx), "converged": pe.converged}
    elif mode == "expanding":
        prob = funceq.FunceqProblem(g, x, p, funceq.F_INF_FINITE, label)
        pe = funceq.solve_expanding(prob, a, ctx)
        payload = {"mode": mode, "g": g_name, "label": label,
                   "value": to_decimal(pe.value, ctx), "terms_used": pe.terms_used,
                   "last_term_deviation": to_decimal(pe.last_term_deviation, ctx),
                   "tail_bound": to_decimal(pe.tail_bound, ctx), "converged": pe.converged}
    elif mode == "finite":
        N = int(params.get("N", 10))
        boundary = funceq.F0_FINITE if abs(x) < 1 else funceq.F0_ZERO
        prob = funceq.FunceqProblem(g, x, p, boundary, label)
        partial, weight = funceq.expand_finite(prob, a, N, ctx)
        payload = {"mode": mode, "g": g_name, "label": label, "N": N,
                   "partial_sum": to_decimal(partial, ctx),
                   "remainder_weight": to_decimal(weight, ctx)}
    else:
        raise ParameterError(f"unknown mode {mode!r}; choices: series, expanding, finite")
    if cfg.output_format == "csv":
        header = sorted(payload)
        _emit(_csv_document(header, [[payload[k] for k in header]]), cfg)
    else:
        _emit(_json_document("funceq", cfg, {"result": payload}), cfg)
    return EXIT_PASS


def cmd_suite(args) -> int:
    cfg = build_config(args)
    ctx = cfg.context()
    only = args.only or None
    if only:
        bad = [c for c in only if c not in CRITERION_IDS]
        if bad:
            raise ParameterError(f"unknown criteria {bad}; choices: {CRITERION_IDS}")
    t0 = time.perf_counter()
    results = run_acceptance(ctx, seed=cfg.seed, only=only,
                             printer=lambda line: print(line))
    wall = time.perf_counter() - t0
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed in {wall:.2f}s")
    if cfg.output_path:
        payload = {"results": [{
            "cid": r.cid, "description": r.description,
            "passed": r.passed, "inconclusive": r.inconclusive,
            "detail": r.detail, "seconds": round(r.seconds, 4),
        } for r in results]}
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(_json_document("suite", cfg, payload))
    if all(r.passed for r in results):
        return EXIT_PASS
    if any(not r.passed and not r.inconclusive for r in results):
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def _add_common(parser):
    parser.add_argument("--digits", type=int, help="decimal digits of working precision")
    parser.add_argument("--tol", type=float, help="truncation tail tolerance")
    parser.add_argument("--rel-tol", type=float, dest="rel_tol", help="relative verdict tolerance")
    parser.add_argument("--max-terms", type=int, dest="max_terms", help="term budget")
    parser.add_argument("--guard-digits", type=int, dest="guard_digits", help="extra digits")
    parser.add_argument("--format", choices=("json", "csv"), help="output format")
    parser.add_argument("--reproducible", action="store_true",
                        help="suppress the timestamp for byte-identical output")
    parser.add_argument("--output", help="write output to a file instead of stdout")
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--seed", type=int, help="seed for randomized sweep points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sincprod",
        description="High-precision verification of trigonometric product and series identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one identity at one parameter point")
    p.add_argument("identity", help="identity id from the catalog (see 'list')")
    p.add_argument("params", nargs="*", help="key=value parameters; pi arguments as 'p/q*pi'")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="verify an identity over a parameter grid")
    p.add_argument("identity")
    p.add_argument("params", nargs="*",
                   help="key=value with ranges start:stop:count or comma lists")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("trace", help="emit a factor-level trace (dobinski, weierstrass, telescoping)")
    p.add_argument("kind", choices=("dobinski", "weierstrass", "telescoping"))
    p.add_argument("params", nargs="*", help="key=value (a=..., J=..., kmax=..., N=...)")
    _add_common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("funceq", help="run the functional-equation expansion engine")
    p.add_argument("params", nargs="*",
                   help="g=<name> x=<rat> p=<rat> a=<rat> mode=series|expanding|finite [N=...]")
    _add_common(p)
    p.set_defaults(func=cmd_funceq)

    p = sub.add_parser("suite", help="run the full acceptance suite")
    p.add_argument("--only", action="append", metavar="cN",
                   help="run only the given criterion (repeatable)")
    _add_common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("list", help="list catalog identities")
    _add_common(p)
    p.set_defaults(func=cmd_list)
    return parser


def cmd_list(args) -> int:
    cfg = build_config(args)
    rows = [[spec.identity_id,
             " ".join(f"{q.name}:{q.kind}" for q in spec.params),
             spec.summary]
            for spec in sorted(catalog.CATALOG.values(), key=lambda s: s.identity_id)]
    if cfg.output_format == "csv":
        _emit(_csv_document(["identity_id", "parameters", "summary"], rows), cfg)
    else:
        _emit(_json_document("catalog", cfg, {
            "identities": [dict(zip(("identity_id", "parameters", "summary"), r)) for r in rows]
        }), cfg)
    return EXIT_PASS


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownIdentityError as exc:
        print(f"error: unknown identity {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_IDENTITY
    except ExceptionalPoint as exc:
        hint = f" (try: {exc.redirect})" if exc.redirect else ""
        print(f"error: {exc}{hint}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except (ParameterError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except EvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
