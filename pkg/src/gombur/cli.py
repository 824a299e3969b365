"""Command-line interface.

Subcommands: describe, fit, compare, gof, sample, quantile, hazard-scan,
verify, plot-data.  Results go to stdout, diagnostics to stderr.  Exit
codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analysis import compare, emit_plot_data
from .data import DataError, Dataset, describe, load_dataset
from .distributions import (
    FAMILIES,
    ParameterError,
    cdf,
    family_param_names,
    hazard_scan,
    make_model,
    param_names,
    param_values,
    quantile,
    sample,
)
from .estimation import (
    OptimizerConfig,
    SingularHessianError,
    fit_mle,
)
from .gof import gof_report
from .oracle import (
    MedianSimConfig,
    ToleranceNotMetError,
    quadrature_unit,
    rayleigh_median_sample,
)
from .specfun import DomainError, IterationLimitError, log_beta

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

TABLE_FAMILIES = ("gombur_v1", "beta", "kumaraswamy", "topp_leone",
                  "unit_lindley")

# 0.1% asymptotic Kolmogorov critical constant, used by `verify`
_KS_CONST_001 = 1.94947


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: data source, families, output and solver knobs."""

    source: str | None = None
    families: tuple = ()
    fmt: str = "table"
    seed: int | None = None
    tol: float | None = None
    grid: int = 512
    bins: int = 8
    count: int = 10
    version: int = 1
    params: tuple | None = None
    population: bool = False
    replications: int = 100000
    probs: tuple = ()
    out_prefix: str = "plot"


def _optimizer_config(cfg: RunConfig):
    if cfg.tol is None:
        return None
    return OptimizerConfig(fatol=cfg.tol)


def _resolve_family(name, version):
    if name == "gombur":
        name = f"gombur_v{version}"
    if name not in FAMILIES:
        raise _UsageError(
            f"unknown family {name!r}; choose from "
            f"{', '.join(FAMILIES)} (or 'gombur' with --version)"
        )
    return name


def _resolve_families(spec, version):
    if spec == "all":
        names = list(TABLE_FAMILIES)
        if version == 2:
            names[0] = "gombur_v2"
        return tuple(names)
    return tuple(_resolve_family(token.strip(), version)
                 for token in spec.split(",") if token.strip())


def _model_from_args(cfg: RunConfig, family):
    if cfg.params is None:
        raise _UsageError(
            f"--params is required (need {family_param_names(family)})"
        )
    return make_model(family, cfg.params)


def _emit(fmt, payload_dict, text):
    if fmt == "json":
        print(json.dumps(payload_dict, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


# --- subcommand handlers ---------------------------------------------------

def _cmd_describe(cfg: RunConfig):
    data = load_dataset(cfg.source)
    stats = describe(data, corrected=not cfg.population)
    d = stats.as_dict()
    if cfg.fmt == "json":
        print(json.dumps({"m": data.m, **d}, indent=2))
    elif cfg.fmt == "csv":
        print(",".join(d))
        print(",".join(repr(v) for v in d.values()))
    else:
        width = max(len(k) for k in d)
        print(f"{'m':<{width}}  {data.m}")
        for k, v in d.items():
            print(f"{k:<{width}}  {v:.6f}")
    return EXIT_OK


def _cmd_fit(cfg: RunConfig):
    data = load_dataset(cfg.source)
    family = cfg.families[0]
    fit = fit_mle(family, data, _optimizer_config(cfg))
    names = param_names(fit.model)
    values = param_values(fit.model)
    if cfg.fmt == "json":
        payload = {
            "family": family,
            "params": dict(zip(names, values)),
            "se": None if fit.se is None else dict(
                zip(names, map(float, fit.se))),
            "score_se": None if fit.score_se is None else dict(
                zip(names, map(float, fit.score_se))),
            "loglik": fit.loglik,
            "aic": fit.aic, "caic": fit.caic, "bic": fit.bic,
            "converged": fit.converged,
            "evaluations": fit.evaluations,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"family      {family}")
        for i, (n, v) in enumerate(zip(names, values)):
            se = "" if fit.se is None else f"   se {fit.se[i]:.4f}"
            print(f"{n:<11} {v:.4f}{se}")
        print(f"loglik      {fit.loglik:.4f}")
        print(f"AIC/CAIC/BIC  {fit.aic:.4f} / {fit.caic:.4f} / {fit.bic:.4f}")
        print(f"converged   {fit.converged} ({fit.evaluations} evaluations)")
        for note in fit.notes:
            print(f"note: {note}", file=sys.stderr)
    return EXIT_OK


def _cmd_compare(cfg: RunConfig):
    data = load_dataset(cfg.source)
    table = compare(data, cfg.families, _optimizer_config(cfg), seed=cfg.seed)
    if cfg.fmt == "json":
        print(table.to_json())
    elif cfg.fmt == "csv":
        print(table.to_csv(), end="")
    else:
        print(table.to_text(), end="")
    failures = [r for r in table.rows if r.error is not None]
    for r in failures:
        print(f"{r.family}: {r.error}", file=sys.stderr)
    return EXIT_NUMERIC if len(failures) == len(table.rows) else EXIT_OK


def _cmd_gof(cfg: RunConfig):
    data = load_dataset(cfg.source)
    family = cfg.families[0]
    if cfg.params is not None:
        model = make_model(family, cfg.params)
    else:
        model = fit_mle(family, data, _optimizer_config(cfg)).model
    report = gof_report(data, model)
    payload = {"family": family,
               "params": dict(zip(param_names(model), param_values(model))),
               **report.as_dict()}
    text = "\n".join(f"{k:<10} {v}" for k, v in payload.items()) + "\n"
    _emit(cfg.fmt, payload, text)
    return EXIT_OK


def _cmd_sample(cfg: RunConfig):
    family = cfg.families[0]
    model = _model_from_args(cfg, family)
    seed = 0 if cfg.seed is None else cfg.seed
    draws = sample(model, cfg.count, seed)
    if cfg.fmt == "json":
        print(json.dumps({"family": family, "seed": seed,
                          "draws": [float(v) for v in draws]}, indent=2))
    else:
        for v in draws:
            print(repr(float(v)))
    return EXIT_OK


def _cmd_quantile(cfg: RunConfig):
    family = cfg.families[0]
    model = _model_from_args(cfg, family)
    qs = [(p, float(quantile(model, p))) for p in cfg.probs]
    if cfg.fmt == "json":
        print(json.dumps({"family": family,
                          "quantiles": [{"p": p, "y": y} for p, y in qs]},
                         indent=2))
    else:
        for p, y in qs:
            print(f"{p!r},{y!r}")
    return EXIT_OK


def _cmd_hazard_scan(cfg: RunConfig):
    family = cfg.families[0]
    model = _model_from_args(cfg, family)
    result = hazard_scan(model, cfg.grid)
    if cfg.fmt == "json":
        payload = {
            "family": family,
            "classification": result.classification,
            "sign_changes": result.sign_changes,
            "naive_sign_changes": result.naive_sign_changes,
            "naive_sign_change_positions":
                [float(v) for v in result.naive_sign_change_positions],
            "survival_underflow_y": result.survival_underflow_y,
            "naive_zero_y": result.naive_zero_y,
            "summary": result.summary,
        }
        print(json.dumps(payload, indent=2))
    elif cfg.fmt == "csv":
        print("y,hazard,finite,hazard_naive")
        for y, h, f, hn in zip(result.y, result.hazard, result.finite,
                               result.hazard_naive):
            print(f"{y!r},{h!r},{int(f)},{hn!r}")
        print(result.summary, file=sys.stderr)
    else:
        print(result.summary)
    return EXIT_OK


def _cmd_plot_data(cfg: RunConfig):
    data = load_dataset(cfg.source)
    family = cfg.families[0]
    if cfg.params is not None:
        model = make_model(family, cfg.params)
    else:
        model = fit_mle(family, data, _optimizer_config(cfg)).model
    hist_path = f"{cfg.out_prefix}_hist.csv"
    cdf_path = f"{cfg.out_prefix}_cdf.csv"
    emit_plot_data(data, model, cfg.bins, hist_path, cdf_path)
    print(hist_path)
    print(cdf_path)
    return EXIT_OK


def _ks_distance(sorted_sample, model):
    z = cdf(model, sorted_sample)
    n = sorted_sample.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - z), np.max(z - (i - 1) / n)))


def _cmd_verify(cfg: RunConfig):
    """Monte Carlo construction and quadrature cross-checks; exit 3 on any
    failure."""
    seed = 20240 if cfg.seed is None else cfg.seed
    reps = cfg.replications
    crit = _KS_CONST_001 / np.sqrt(reps)
    ok = True

    def check(label, passed, detail):
        nonlocal ok
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")

    for i, (n, alpha) in enumerate([(1, 1.0), (2, 0.452), (5, 1.8),
                                    (8, 1.1168)]):
        sim = rayleigh_median_sample(
            MedianSimConfig(n=n, alpha=alpha, replications=reps,
                            seed=seed + i))
        sim.sort()
        d = _ks_distance(sim, make_model("gombur_v1", (n, alpha)))
        check(f"median construction v1(n={n}, alpha={alpha})", d < crit,
              f"KS={d:.5f} < {crit:.5f}")

    for i, msize in enumerate((3, 5, 9)):
        sim = rayleigh_median_sample(
            MedianSimConfig(n=(msize - 1) // 2, alpha=1.3, replications=reps,
                            seed=seed + 100 + i))
        sim.sort()
        d = _ks_distance(sim, make_model("gombur_v2", (msize, 1.3)))
        check(f"median construction v2(n={msize}, alpha=1.3)", d < crit,
              f"KS={d:.5f} < {crit:.5f}")

    for a, b in ((2.0, 2.0), (9.1, 9.1), (3.0, 12.0)):
        val = quadrature_unit(
            lambda w: w ** (a - 1.0) * (1.0 - w) ** (b - 1.0), tol=1e-12)
        target = float(np.exp(log_beta(a, b)))
        err = abs(val - target)
        check(f"quadrature beta integral (a={a}, b={b})", err < 1e-10,
              f"|err|={err:.2e}")

    return EXIT_OK if ok else EXIT_NUMERIC


# --- parser ----------------------------------------------------------------

def _build_parser():
    parser = _Parser(prog="gombur",
                     description="Unit-interval distribution toolkit: "
                                 "fitting, comparison, goodness of fit")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *, data=False, family=False, families=False,
            params=False, fmt=True):
        p = sub.add_parser(name, help=help_)
        if data:
            p.add_argument("--data", required=True,
                           help="builtin name (flood) or path to a text file")
        if family:
            p.add_argument("--family", required=True,
                           help="family name, or 'gombur' with --version")
            p.add_argument("--version", dest="gombur_version", type=int,
                           choices=(1, 2), default=1)
        if families:
            p.add_argument("--families", required=True,
                           help="'all' or comma-separated family names")
            p.add_argument("--version", dest="gombur_version", type=int,
                           choices=(1, 2), default=1)
        if params:
            p.add_argument("--params",
                           help="comma-separated parameter values")
        if fmt:
            p.add_argument("--format", dest="fmt", default="table",
                           choices=("table", "json", "csv"))
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol", type=float, default=None,
                       help="optimizer function-spread tolerance")
        return p

    p = add("describe", "descriptive statistics of a dataset", data=True)
    p.add_argument("--population", action="store_true",
                   help="plain moment-ratio skewness/kurtosis instead of "
                        "the bias-corrected estimators")

    add("fit", "maximum-likelihood fit of one family", data=True, family=True)

    add("compare", "fit several families and rank by log-likelihood",
        data=True, families=True)

    p = add("gof", "goodness-of-fit statistics", data=True, family=True,
            params=True)

    p = add("sample", "draw from a distribution", family=True, params=True)
    p.add_argument("--count", type=int, default=10)

    p = add("quantile", "evaluate quantiles", family=True, params=True)
    p.add_argument("--p", default="0.5",
                   help="comma-separated probabilities")

    p = add("hazard-scan", "hazard-shape diagnostic on a grid", family=True,
            params=True)
    p.add_argument("--grid", type=int, default=512)

    p = add("verify", "Monte Carlo and quadrature self-checks")
    p.add_argument("--replications", type=int, default=100000)

    p = add("plot-data", "emit histogram/pdf and ecdf/cdf CSV files",
            data=True, family=True, params=True)
    p.add_argument("--bins", type=int, default=8)
    p.add_argument("--out-prefix", default="plot")

    return parser


_HANDLERS = {
    "describe": _cmd_describe,
    "fit": _cmd_fit,
    "compare": _cmd_compare,
    "gof": _cmd_gof,
    "sample": _cmd_sample,
    "quantile": _cmd_quantile,
    "hazard-scan": _cmd_hazard_scan,
    "verify": _cmd_verify,
    "plot-data": _cmd_plot_data,
}


def _to_config(args) -> RunConfig:
    version = getattr(args, "gombur_version", 1)
    families = ()
    if hasattr(args, "family"):
        families = (_resolve_family(args.family, version),)
    elif hasattr(args, "families"):
        families = _resolve_families(args.families, version)
        if not families:
            raise _UsageError("at least one family is required")
    params = None
    if getattr(args, "params", None):
        try:
            params = tuple(float(t) for t in args.params.split(","))
        except ValueError:
            raise _UsageError(
                f"--params must be comma-separated numbers, got "
                f"{args.params!r}"
            ) from None
    probs = ()
    if hasattr(args, "p"):
        try:
            probs = tuple(float(t) for t in args.p.split(","))
        except ValueError:
            raise _UsageError(
                f"--p must be comma-separated numbers, got {args.p!r}"
            ) from None
    return RunConfig(
        source=getattr(args, "data", None),
        families=families,
        fmt=getattr(args, "fmt", "table"),
        seed=args.seed,
        tol=args.tol,
        grid=getattr(args, "grid", 512),
        bins=getattr(args, "bins", 8),
        count=getattr(args, "count", 10),
        version=version,
        params=params,
        population=getattr(args, "population", False),
        replications=getattr(args, "replications", 100000),
        probs=probs,
        out_prefix=getattr(args, "out_prefix", "plot"),
    )


def cli_main(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _to_config(args)
        return _HANDLERS[args.command](cfg)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DomainError, ParameterError, SingularHessianError,
            IterationLimitError, ToleranceNotMetError, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
