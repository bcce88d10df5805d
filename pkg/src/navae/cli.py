"""Command-line surface: mean-ci, ols-ci, feasibility, simulate, width-curve.

Every command writes a CSV report plus a JSON summary and prints its headline
result to stdout.  Exit codes: 0 success, 2 configuration error, 3 data
error.  When an uncertified delta provider backs a finite-sample method, a
line starting with ``UNCERTIFIED-DELTA`` is printed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import dgp_sim
from .dgp_sim import (
    GumbelHeteroLinear,
    KnownVarianceMethod,
    OlsEdgMethod,
    UnknownVarianceMethod,
    method_from_config,
    resolve_workers,
    run_coverage_study,
    study_from_config,
    width_curve,
)
from .edgeworth import DeltaProvider, provider_from_string
from .errors import ConfigError, DataError, DomainError, NavaeError
from .mean_ci import ConfidenceInterval, Sample, alpha_min, feasible_a_interval
from .ols_ci import Design, OlsBounds, OlsTuning, PlugIn, ci_asymp, ci_edg, n_zero
from .report import ReportRow, row_as_dict, write_report, write_summary
from .rules import OptimizedRule, parse_rule

__all__ = ["load_mean_csv", "load_ols_csv", "run_command", "main"]


def load_mean_csv(path: str | Path) -> Sample:
    """Read a single numeric column; optional header ``x``; blanks skipped."""
    values: list[float] = []
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open {path}: {exc}") from exc
    with fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            cell = row[0].strip()
            if lineno == 1 and cell.lower() == "x":
                continue
            try:
                values.append(float(cell))
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: non-numeric cell {cell!r}") from exc
    if not values:
        raise DataError(f"{path}: no numeric rows")
    return Sample(np.asarray(values))


def load_ols_csv(path: str | Path, add_intercept: bool, u_spec: str) -> Design:
    """Read ``y,x1,...,xp`` rows into a design targeting direction ``u_spec``.

    With ``add_intercept`` the intercept column is prepended and the first
    coordinate of ``u_spec`` refers to it.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = [cell.strip().lower() for cell in next(reader)]
        except StopIteration as exc:
            raise DataError(f"{path}: empty file") from exc
        p_file = len(header) - 1
        if p_file < 1 or header[0] != "y" or header[1:] != [f"x{i}" for i in range(1, p_file + 1)]:
            raise DataError(f"{path}: expected header 'y,x1,...,xp', got {header!r}")
        ys: list[float] = []
        xs: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != p_file + 1:
                raise ConfigError(
                    f"{path}:{lineno}: ragged row with {len(row)} cells, "
                    f"expected {p_file + 1}"
                )
            try:
                numbers = [float(cell) for cell in row]
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
            ys.append(numbers[0])
            xs.append(numbers[1:])
    if not xs:
        raise DataError(f"{path}: no data rows")
    x = np.asarray(xs)
    if add_intercept:
        x = np.column_stack([np.ones(len(xs)), x])
    u = _parse_vector(u_spec)
    if u.size != x.shape[1]:
        raise ConfigError(
            f"direction u has {u.size} coordinates but the design has "
            f"{x.shape[1]} columns (intercept {'included' if add_intercept else 'absent'})"
        )
    return Design(x=x, y=np.asarray(ys), u=u)


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.asarray([float(part) for part in text.split(",")], dtype=float)
    except ValueError as exc:
        raise ConfigError(f"cannot parse vector {text!r}: {exc}") from exc


def _parse_n_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(float(part)) for part in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse n list {text!r}: {exc}") from exc
    if not values or any(n < 1 for n in values):
        raise ConfigError(f"n values must be positive, got {text!r}")
    return values


def _warn_uncertified(provider: DeltaProvider) -> None:
    if not provider.certified:
        print(
            f"UNCERTIFIED-DELTA: provider {provider.label!r} omits remainder "
            "terms; the finite-sample validity guarantee does not apply"
        )


def _print_interval(ci: ConfidenceInterval) -> None:
    if ci.whole_line:
        print(f"interval: R (whole real line), level {ci.level}, method {ci.method}")
    else:
        print(
            f"interval: [{ci.lower!r}, {ci.upper!r}], level {ci.level}, "
            f"method {ci.method}"
        )


def _emit(args, command: str, rows, params: dict) -> None:
    output = Path(args.output) if args.output else Path(f"{command.replace('-', '_')}_report.csv")
    write_report(output, rows)
    summary_path = output.with_suffix(".json")
    write_summary(
        summary_path,
        {"command": command, "params": params, "rows": [row_as_dict(r) for r in rows]},
    )
    print(f"report: {output}")
    print(f"summary: {summary_path}")


def _interval_row(ci: ConfidenceInterval, n: int, alpha: float) -> ReportRow:
    return ReportRow(
        method=ci.method,
        n=n,
        alpha=alpha,
        lower=ci.lower,
        upper=ci.upper,
        is_whole_line=ci.whole_line,
        width=ci.width,
    )


def _cmd_mean_ci(args) -> int:
    sample = load_mean_csv(args.input)
    method_cfg: dict = {"name": args.method}
    if args.method == "known-variance":
        if args.sigma is None:
            raise ConfigError("--sigma is required for known-variance")
        method_cfg.update({"sigma": args.sigma, "K": _require_k(args), "delta": args.delta})
    elif args.method == "unknown-variance":
        method_cfg.update(
            {
                "K": "plugin" if args.K == "plugin" else _require_k(args),
                "delta": args.delta,
                "a_rule": args.a_rule,
                "inflation": args.inflation,
            }
        )
    elif args.method == "chebyshev":
        if args.var_bound is None:
            raise ConfigError("--var-bound is required for chebyshev")
        method_cfg.update({"var_bound": args.var_bound})
    elif args.method == "hoeffding":
        if args.support is None:
            raise ConfigError("--support is required for hoeffding")
        lo, hi = _parse_vector(args.support)
        method_cfg.update({"support": [lo, hi]})
    method = method_from_config(method_cfg)
    if method.navae:
        _warn_uncertified(method.delta)
    ci = method.interval(sample, args.alpha)
    _print_interval(ci)
    rows = [_interval_row(ci, sample.n, args.alpha)]
    _emit(args, "mean-ci", rows, {"input": str(args.input), "method": args.method,
                                  "alpha": args.alpha})
    return 0


def _require_k(args) -> float:
    if args.K is None:
        raise ConfigError("--K is required for this method")
    try:
        return float(args.K)
    except ValueError as exc:
        raise ConfigError(f"--K must be a number or 'plugin', got {args.K!r}") from exc


def _bound_from_flag(text: str, name: str, inflation: float) -> float | PlugIn:
    if text.strip().lower() == "plugin":
        return PlugIn(inflation)
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"--{name} must be a number or 'plugin', got {text!r}") from exc


def _cmd_ols_ci(args) -> int:
    design = load_ols_csv(args.input, args.add_intercept, args.u)
    if args.method == "asymp":
        ci = ci_asymp(design, args.alpha)
    else:
        bounds = OlsBounds(
            lambda_reg=_bound_from_flag(args.lambda_reg, "lambda-reg", args.inflation),
            k_reg=_bound_from_flag(args.k_reg, "k-reg", args.inflation),
            k_eps=_bound_from_flag(args.k_eps, "k-eps", args.inflation),
            k_xi=_bound_from_flag(args.k_xi, "k-xi", args.inflation),
        )
        tuning = OlsTuning(
            omega_rule=_explicit_rule(args.omega_rule, "omega-rule"),
            a_rule=_explicit_rule(args.a_rule, "a-rule"),
            delta=provider_from_string(args.delta),
        )
        _warn_uncertified(tuning.delta)
        ci = ci_edg(design, args.alpha, bounds, tuning)
    _print_interval(ci)
    rows = [_interval_row(ci, design.n, args.alpha)]
    _emit(args, "ols-ci", rows, {"input": str(args.input), "method": args.method,
                                 "alpha": args.alpha, "u": args.u})
    return 0


def _explicit_rule(text: str, flag: str):
    rule = parse_rule(text)
    if isinstance(rule, OptimizedRule):
        raise ConfigError(f"--{flag} must be an explicit formula, not 'optimized'")
    return rule


def _cmd_feasibility(args) -> int:
    delta = provider_from_string(args.delta)
    rows: list[ReportRow] = []
    if args.mode == "alpha-min":
        a_rule = parse_rule(args.a_rule)
        for n in _parse_n_list(args.n):
            value = alpha_min(n, args.K, a_rule, delta)
            rows.append(ReportRow(method="alpha-min", n=n, alpha_min=value))
            print(f"alpha_min(n={n}, K={args.K}) = {value!r}")
    elif args.mode == "a-interval":
        if args.alpha is None:
            raise ConfigError("--alpha is required for a-interval mode")
        for n in _parse_n_list(args.n):
            interval = feasible_a_interval(n, args.alpha, args.K, delta)
            if interval is None:
                rows.append(ReportRow(method="a-interval", n=n, alpha=args.alpha))
                print(f"I_n(n={n}) = empty")
            else:
                rows.append(
                    ReportRow(
                        method="a-interval",
                        n=n,
                        alpha=args.alpha,
                        a_lower=interval[0],
                        a_upper=interval[1],
                    )
                )
                print(f"I_n(n={n}) = ({interval[0]!r}, {interval[1]!r})")
    else:  # n-zero
        if args.alpha is None:
            raise ConfigError("--alpha is required for n-zero mode")
        tuning = OlsTuning(
            omega_rule=_explicit_rule(args.omega_rule, "omega-rule"),
            a_rule=_explicit_rule(args.a_rule, "a-rule"),
            delta=delta,
        )
        bounds = OlsBounds(
            lambda_reg=1.0, k_reg=args.k_reg, k_eps=1.0, k_xi=args.k_xi
        )
        value = n_zero(args.alpha, tuning, bounds)
        rows.append(ReportRow(method="n-zero", alpha=args.alpha, n_zero=value))
        print(f"n_zero = {value}")
    _emit(args, "feasibility", rows, {"mode": args.mode})
    return 0


def _cmd_simulate(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot open {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.config}: invalid JSON: {exc}") from exc
    study = study_from_config(config)
    for method in study.methods:
        if getattr(method, "navae", False):
            _warn_uncertified(method.delta)
    report = run_coverage_study(study, workers=args.workers)
    rows = [
        ReportRow(
            method=r.method,
            n=r.n,
            alpha=r.alpha,
            coverage=r.coverage,
            mc_se=r.mc_se,
            width=r.mean_width,
            whole_line_fraction=r.whole_line_fraction,
            mean_alpha_min=r.mean_alpha_min,
            median_alpha_min=r.median_alpha_min,
            replications=r.replications,
        )
        for r in report.rows
    ]
    for r in report.rows:
        print(
            f"coverage[{r.method}, n={r.n}] = {r.coverage:.4f} "
            f"(mc se {r.mc_se:.4f}, whole-line share {r.whole_line_fraction:.4f})"
        )
    _emit(args, "simulate", rows, {"config": str(args.config)})
    return 0


def _cmd_width_curve(args) -> int:
    delta = args.delta
    if args.method == "known-variance":
        if args.sigma is None:
            raise ConfigError("--sigma is required for known-variance width curves")
        method = KnownVarianceMethod(
            sigma=args.sigma,
            kurtosis_bound=_require_k(args),
            delta=provider_from_string(delta),
        )
        dgp = dgp_sim.ExponentialMean()
    elif args.method == "unknown-variance":
        method = UnknownVarianceMethod(
            kurtosis_bound=_require_k(args),
            delta=provider_from_string(delta),
            a_rule=parse_rule(args.a_rule),
        )
        dgp = dgp_sim.ExponentialMean()
    elif args.method == "edg":
        bounds = OlsBounds(
            lambda_reg=_bound_from_flag(args.lambda_reg, "lambda-reg", args.inflation),
            k_reg=_bound_from_flag(args.k_reg, "k-reg", args.inflation),
            k_eps=_bound_from_flag(args.k_eps, "k-eps", args.inflation),
            k_xi=_bound_from_flag(args.k_xi, "k-xi", args.inflation),
        )
        tuning = OlsTuning(
            omega_rule=_explicit_rule(args.omega_rule, "omega-rule"),
            a_rule=_explicit_rule(args.a_rule_ols, "a-rule-ols"),
            delta=provider_from_string(delta),
        )
        method = OlsEdgMethod(bounds=bounds, tuning=tuning)
        dgp = GumbelHeteroLinear(u=tuple(float(v) for v in _parse_vector(args.u)))
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unsupported width-curve method {args.method!r}")
    if method.navae:
        _warn_uncertified(method.delta)
    curve = width_curve(
        dgp,
        method,
        _parse_n_list(args.n),
        args.alpha,
        replications=args.replications,
        base_seed=args.seed,
        workers=args.workers,
    )
    rows = [
        ReportRow(method=r.method, n=r.n, alpha=r.alpha, width=r.mean_width, ratio=r.ratio)
        for r in curve
    ]
    for r in curve:
        print(f"width[{r.method}, n={r.n}]: mean {r.mean_width!r}, ratio {r.ratio!r}")
    _emit(args, "width-curve", rows, {"method": args.method, "alpha": args.alpha})
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="navae",
        description="Finite-sample-valid, asymptotically exact confidence intervals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mean = sub.add_parser("mean-ci", help="confidence interval for a scalar mean")
    mean.add_argument("--input", required=True, help="CSV with one numeric column")
    mean.add_argument("--alpha", type=float, required=True)
    mean.add_argument(
        "--method",
        default="unknown-variance",
        choices=["clt", "student", "chebyshev", "hoeffding", "known-variance", "unknown-variance"],
    )
    mean.add_argument("--K", default=None, help="kurtosis bound, a number or 'plugin'")
    mean.add_argument("--delta", default="be", help="delta provider spec")
    mean.add_argument("--a-rule", dest="a_rule", default="1+n^-0.2")
    mean.add_argument("--sigma", type=float, default=None, help="known standard deviation")
    mean.add_argument("--var-bound", dest="var_bound", type=float, default=None)
    mean.add_argument("--support", default=None, help="a,b support for hoeffding")
    mean.add_argument("--inflation", type=float, default=0.0)
    mean.add_argument("--output", default=None)
    mean.set_defaults(handler=_cmd_mean_ci)

    ols = sub.add_parser("ols-ci", help="confidence interval for u'beta in OLS")
    ols.add_argument("--input", required=True, help="CSV with header y,x1,...,xp")
    ols.add_argument("--u", required=True, help="comma-separated direction vector")
    ols.add_argument("--add-intercept", dest="add_intercept", action="store_true")
    ols.add_argument("--alpha", type=float, required=True)
    ols.add_argument("--method", default="edg", choices=["asymp", "edg"])
    ols.add_argument("--lambda-reg", dest="lambda_reg", default="plugin")
    ols.add_argument("--k-reg", dest="k_reg", default="plugin")
    ols.add_argument("--k-eps", dest="k_eps", default="plugin")
    ols.add_argument("--k-xi", dest="k_xi", default="plugin")
    ols.add_argument("--inflation", type=float, default=0.0)
    ols.add_argument("--omega-rule", dest="omega_rule", default="n^-1/5")
    ols.add_argument("--a-rule", dest="a_rule", default="1+20*n^-2/5")
    ols.add_argument("--delta", default="be")
    ols.add_argument("--output", default=None)
    ols.set_defaults(handler=_cmd_ols_ci)

    feas = sub.add_parser("feasibility", help="alpha_min, feasible a intervals, n_zero")
    feas.add_argument("--mode", required=True, choices=["alpha-min", "a-interval", "n-zero"])
    feas.add_argument("--K", type=float, default=9.0)
    feas.add_argument("--alpha", type=float, default=None)
    feas.add_argument("--n", default="1000")
    feas.add_argument("--a-rule", dest="a_rule", default="1+n^-0.2")
    feas.add_argument("--omega-rule", dest="omega_rule", default="n^-1/5")
    feas.add_argument("--k-reg", dest="k_reg", type=float, default=1.0)
    feas.add_argument("--k-xi", dest="k_xi", type=float, default=9.0)
    feas.add_argument("--delta", default="be")
    feas.add_argument("--output", default=None)
    feas.set_defaults(handler=_cmd_feasibility)

    sim = sub.add_parser("simulate", help="Monte Carlo coverage study from JSON config")
    sim.add_argument("--config", required=True)
    sim.add_argument("--workers", type=int, default=None)
    sim.add_argument("--output", default=None)
    sim.set_defaults(handler=_cmd_simulate)

    wc = sub.add_parser("width-curve", help="width against the CLT baseline over n")
    wc.add_argument("--method", required=True, choices=["known-variance", "unknown-variance", "edg"])
    wc.add_argument("--alpha", type=float, required=True)
    wc.add_argument("--n", required=True, help="comma-separated n grid")
    wc.add_argument("--K", default=None)
    wc.add_argument("--delta", default="be")
    wc.add_argument("--sigma", type=float, default=None)
    wc.add_argument("--a-rule", dest="a_rule", default="1+n^-0.2")
    wc.add_argument("--u", default="0,0,1")
    wc.add_argument("--lambda-reg", dest="lambda_reg", default="plugin")
    wc.add_argument("--k-reg", dest="k_reg", default="plugin")
    wc.add_argument("--k-eps", dest="k_eps", default="plugin")
    wc.add_argument("--k-xi", dest="k_xi", default="9")
    wc.add_argument("--inflation", type=float, default=0.0)
    wc.add_argument("--omega-rule", dest="omega_rule", default="n^-1/5")
    wc.add_argument("--a-rule-ols", dest="a_rule_ols", default="1+20*n^-2/5")
    wc.add_argument("--replications", "-M", type=int, default=0)
    wc.add_argument("--seed", type=int, default=0)
    wc.add_argument("--workers", type=int, default=None)
    wc.add_argument("--output", default=None)
    wc.set_defaults(handler=_cmd_width_curve)

    return parser


def run_command(argv: list[str]) -> int:
    """Run one CLI invocation; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.handler(args)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, DomainError, NavaeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
