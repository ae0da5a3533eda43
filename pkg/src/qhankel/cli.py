"""Command line front end.

Two subcommands:

  qhankel eval <function> --param value ...   point evaluation
  qhankel verify <suite> [options]            run a verification suite

eval prints the value at full working precision, followed by the tail
bound and term count when the evaluator certifies one.  verify writes a
JSON report whose bytes depend only on the configuration, never on the
worker count, and exits 0 (all passed), 1 (some case failed), 2 (bad
configuration or domain), or 3 (a case could not certify its
truncation).
"""

from __future__ import annotations

import argparse
import os
import sys
from configparser import ConfigParser
from typing import List, Optional

import mpmath

from .context import (
    BranchCut,
    ConfigError,
    DivergentParameters,
    QContext,
    SeriesValue,
    TruncationInsufficient,
)
from .erdelyi import ErdelyiParams, erdelyi_lhs, erdelyi_rhs
from .kernels import kernel_plus, kernel_zero
from .qfunctions import (
    QBesselParams,
    WallParams,
    bessel_j,
    laguerre,
    qbessel,
    wall_polynomial,
)
from .qseries import (
    PhiParams,
    basic_hypergeometric,
    big_q_exponential,
    q_gamma,
    qpochhammer,
)
from .suites import (
    SUITE_NAMES,
    SuiteConfig,
    expand_grid_tokens,
    parse_point,
    run_suite,
    summarize,
    write_report,
)

ENV_PRECISION = "QHANKEL_PRECISION"
ENV_TOLERANCE = "QHANKEL_TOLERANCE"


def _int_arg(params: dict, name: str) -> int:
    if name not in params:
        raise ConfigError(f"missing required parameter --{name}")
    try:
        return int(params.pop(name))
    except ValueError:
        raise ConfigError(f"parameter --{name} must be an integer")


def _point_arg(params: dict, name: str, ctx: QContext):
    if name not in params:
        raise ConfigError(f"missing required parameter --{name}")
    return parse_point(params.pop(name), ctx)


def _opt_int(params: dict, name: str, default: int) -> int:
    if name not in params:
        return default
    try:
        return int(params.pop(name))
    except ValueError:
        raise ConfigError(f"parameter --{name} must be an integer")


def _eval_qpochhammer(params, ctx):
    if "a" not in params:
        raise ConfigError("missing required parameter --a")
    a = parse_point(params.pop("a"), ctx)
    if "k" not in params:
        raise ConfigError("missing required parameter --k")
    k_raw = params.pop("k")
    k = k_raw if str(k_raw).lower() in ("inf", "infinity") else int(k_raw)
    return qpochhammer(a, k, ctx)


def _eval_phi(params, ctx):
    def point_list(name):
        raw = params.pop(name, "").strip()
        if not raw:
            return []
        return [parse_point(t, ctx) for t in expand_grid_tokens(raw)]

    nums = point_list("numerators")
    dens = point_list("denominators")
    arg = _point_arg(params, "argument", ctx)
    reg = str(params.pop("regularize", "false")).lower() in ("1", "true",
                                                             "yes")
    return basic_hypergeometric(PhiParams(nums, dens, arg, reg), ctx)


def _eval_wall(params, ctx):
    n = _int_arg(params, "n")
    a = _point_arg(params, "a", ctx)
    x = _point_arg(params, "x", ctx)
    norm = params.pop("normalization", "plain")
    return wall_polynomial(WallParams(n, a, x, norm), ctx)


def _eval_qbessel(params, ctx):
    order = _point_arg(params, "order", ctx)
    argument = _point_arg(params, "argument", ctx)
    return qbessel(QBesselParams(order, argument), ctx)


def _eval_eq(params, ctx):
    return big_q_exponential(_point_arg(params, "z", ctx), ctx)


def _eval_qgamma(params, ctx):
    return q_gamma(_point_arg(params, "x", ctx), ctx)


def _eval_kernel_plus(params, ctx):
    return kernel_plus(_int_arg(params, "p"), _int_arg(params, "v"),
                       _int_arg(params, "w"), ctx)


def _eval_kernel_zero(params, ctx):
    return kernel_zero(_int_arg(params, "p"), _int_arg(params, "v"),
                       _int_arg(params, "w"), ctx)


def _erdelyi_params(params, ctx):
    return ErdelyiParams(_int_arg(params, "n"), _int_arg(params, "m"),
                         _point_arg(params, "nu", ctx),
                         _point_arg(params, "sigma", ctx),
                         _point_arg(params, "z", ctx),
                         _opt_int(params, "l", 0))


def _eval_erdelyi_lhs(params, ctx):
    return erdelyi_lhs(_erdelyi_params(params, ctx), ctx)


def _eval_erdelyi_rhs(params, ctx):
    return erdelyi_rhs(_erdelyi_params(params, ctx), ctx)


def _eval_laguerre(params, ctx):
    n = _int_arg(params, "n")
    alpha = _point_arg(params, "alpha", ctx)
    x = _point_arg(params, "x", ctx)
    return laguerre(n, alpha, x, ctx)


def _eval_bessel_j(params, ctx):
    nu = _point_arg(params, "nu", ctx)
    x = _point_arg(params, "x", ctx)
    return bessel_j(nu, x, ctx)


_EVALUATORS = {
    "qpochhammer": _eval_qpochhammer,
    "phi": _eval_phi,
    "wall": _eval_wall,
    "qbessel": _eval_qbessel,
    "Eq": _eval_eq,
    "q_gamma": _eval_qgamma,
    "kernel_plus": _eval_kernel_plus,
    "kernel_zero": _eval_kernel_zero,
    "erdelyi_lhs": _eval_erdelyi_lhs,
    "erdelyi_rhs": _eval_erdelyi_rhs,
    "laguerre": _eval_laguerre,
    "bessel_j": _eval_bessel_j,
}


def _collect_params(tokens: List[str]) -> dict:
    """Pair up ["--a", "0.5", "--k", "inf"] style leftovers."""
    params = {}
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--") or len(tok) <= 2:
            raise ConfigError(f"unexpected argument {tok!r}; parameters "
                              "are passed as --name value")
        name = tok[2:]
        if "=" in name:
            name, _, value = name.partition("=")
            params[name] = value
            i += 1
            continue
        if i + 1 >= len(tokens):
            raise ConfigError(f"parameter --{name} is missing a value")
        params[name] = tokens[i + 1]
        i += 2
    return params


def _cmd_eval(ns, leftovers: List[str]) -> int:
    if ns.function not in _EVALUATORS:
        raise ConfigError(
            f"unknown function {ns.function!r}; choose from "
            f"{', '.join(sorted(_EVALUATORS))}")
    params = _collect_params(leftovers)
    precision = ns.precision if ns.precision is not None else int(
        os.environ.get(ENV_PRECISION, 50))
    tolerance = ns.tolerance if ns.tolerance is not None else \
        os.environ.get(ENV_TOLERANCE)
    ctx = QContext(ns.q, precision, tolerance)
    result = _EVALUATORS[ns.function](params, ctx)
    if params:
        raise ConfigError(
            f"unknown parameter(s) for {ns.function}: "
            f"{', '.join('--' + k for k in sorted(params))}")
    with ctx.working():
        if isinstance(result, SeriesValue):
            print(mpmath.nstr(result.value, ctx.precision_digits))
            print(f"tail_bound {mpmath.nstr(result.tail_bound, 10)}")
            print(f"terms {result.terms_used}")
        else:
            print(mpmath.nstr(result, ctx.precision_digits))
    return 0


def _parse_window(text: str):
    lo, sep, hi = str(text).partition(":")
    if not sep:
        raise ConfigError("window must be LOW:HIGH")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ConfigError(f"window bounds must be integers, got {text!r}")


def _load_config_file(path: str) -> dict:
    cp = ConfigParser(interpolation=None)
    cp.optionxform = str
    read = cp.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    out = {"grid": {}}
    for section in cp.sections():
        if section == "suite":
            out["suite"] = cp.get(section, "name", fallback=None)
        elif section == "context":
            for key in ("q", "precision", "tolerance", "pass_tolerance"):
                if cp.has_option(section, key):
                    out[key] = cp.get(section, key)
        elif section == "grid":
            for key, value in cp.items(section):
                out["grid"][key] = value
        elif section == "window":
            if not (cp.has_option(section, "low")
                    and cp.has_option(section, "high")):
                raise ConfigError("[window] needs low and high")
            out["window"] = f"{cp.get(section, 'low')}:{cp.get(section, 'high')}"
        elif section == "output":
            if cp.has_option(section, "path"):
                out["out"] = cp.get(section, "path")
        else:
            raise ConfigError(f"unknown config section [{section}]")
    return out


def _cmd_verify(ns) -> int:
    file_cfg = _load_config_file(ns.config) if ns.config else {"grid": {}}
    if file_cfg.get("suite") and file_cfg["suite"] != ns.suite:
        raise ConfigError(
            f"config file names suite {file_cfg['suite']!r} but the "
            f"command line says {ns.suite!r}")

    def pick(flag, env_name, file_key):
        if flag is not None:
            return flag
        if env_name and os.environ.get(env_name) is not None:
            return os.environ[env_name]
        return file_cfg.get(file_key)

    precision = pick(ns.precision, ENV_PRECISION, "precision")
    tolerance = pick(ns.tolerance, ENV_TOLERANCE, "tolerance")
    q_text = ns.q if ns.q is not None else file_cfg.get("q")
    window_text = ns.window if ns.window is not None else \
        file_cfg.get("window")
    pass_tol = ns.pass_tolerance if ns.pass_tolerance is not None else \
        file_cfg.get("pass_tolerance")
    cfg = SuiteConfig(
        suite=ns.suite,
        q_values=expand_grid_tokens(q_text) if q_text else None,
        precision=int(precision) if precision is not None else 50,
        tolerance=str(tolerance) if tolerance else None,
        pass_tolerance=str(pass_tol) if pass_tol else None,
        grid={k: expand_grid_tokens(v)
              for k, v in file_cfg["grid"].items()},
        window=_parse_window(window_text) if window_text else None,
        jobs=ns.jobs if ns.jobs is not None else (os.cpu_count() or 1),
    )
    # fail fast on an unusable tolerance/precision pair before any work
    probe_q = cfg.q_values[0] if cfg.q_values else "0.5"
    QContext(probe_q, cfg.precision, cfg.tolerance)
    report = run_suite(cfg)
    out_path = ns.out or file_cfg.get("out") or f"{ns.suite}.report.json"
    write_report(report, out_path)
    print(summarize(report))
    print(f"report written to {out_path}")
    if report["counts"]["fail"]:
        return 1
    if report["counts"]["truncation"]:
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    # abbreviation matching is off so forwarded --name parameters of
    # eval can never collide with prefixes of the fixed options
    parser = argparse.ArgumentParser(
        prog="qhankel",
        allow_abbrev=False,
        description="High-precision q-special functions and verification "
                    "suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", allow_abbrev=False,
                        help="evaluate one registered function")
    pe.add_argument("function",
                    help=f"one of: {', '.join(sorted(_EVALUATORS))}")
    pe.add_argument("--q", default="0.5", help="base, in (0, 1)")
    pe.add_argument("--precision", type=int, default=None,
                    help="working precision in decimal digits")
    pe.add_argument("--tolerance", default=None,
                    help="certification tolerance, e.g. 1e-30")

    pv = sub.add_parser("verify", allow_abbrev=False,
                        help="run a verification suite")
    pv.add_argument("suite", choices=SUITE_NAMES)
    pv.add_argument("--config", default=None, help="INI configuration file")
    pv.add_argument("--out", default=None,
                    help="report path (default <suite>.report.json)")
    pv.add_argument("--jobs", type=int, default=None,
                    help="worker processes (default: cpu count)")
    pv.add_argument("--q", default=None,
                    help="comma-separated q grid override")
    pv.add_argument("--precision", type=int, default=None)
    pv.add_argument("--tolerance", default=None)
    pv.add_argument("--pass-tolerance", dest="pass_tolerance", default=None,
                    help="per-case pass threshold override")
    pv.add_argument("--window", default=None, help="lattice window LOW:HIGH")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # a window like -30:30 starts with a dash; fold it into = form so
    # the option parser does not mistake the value for a flag
    folded = []
    i = 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            folded.append(f"--window={argv[i + 1]}")
            i += 2
        else:
            folded.append(argv[i])
            i += 1
    argv = folded
    try:
        if argv and argv[0] == "eval":
            ns, leftovers = parser.parse_known_args(argv)
            return _cmd_eval(ns, leftovers)
        ns = parser.parse_args(argv)
        return _cmd_verify(ns)
    except (ConfigError, BranchCut, DivergentParameters) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TruncationInsufficient as exc:
        print(f"truncation: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:
        # argparse exits on usage errors and --help; fold into our codes
        return int(exc.code) if exc.code else 0


if __name__ == "__main__":
    sys.exit(main())
