"""Named verification suites shared by the CLI and the acceptance tests.

A suite is a deterministic, ordered list of cases.  A case is a pair
(key, args) where args is a flat dict of strings and ints; every worker
re-parses the args at the case's own precision, so the resulting records
are independent of process boundaries, scheduling, and worker count.
Records serialize every number through mpmath's decimal printer at the
case precision, which makes reruns byte-identical.

Per-case pass/fail: a record passes iff its residual is below the case's
effective tolerance.  Suites whose target identity is relative multiply
the context tolerance by (1 + |rhs|); operator-window suites add the
documented multiple of the materialized column deficits.  The effective
tolerance is stored in the record, so the report is self-contained.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

import mpmath
from mpmath import mp

from .context import (
    ConfigError,
    QContext,
    TruncationInsufficient,
)
from . import operators as ops
from .erdelyi import (
    ErdelyiParams,
    classical_limit_table,
    clear_caches,
    erdelyi_lhs,
    erdelyi_qintegral,
    erdelyi_rhs,
    lattice_consistency_residual,
    scalar_identity_residual,
)
from .kernels import (
    kernel_contraction_residual,
    kernel_orthogonality_residual,
)
from .operators import LegSpec
from .qfunctions import qbessel_lattice, qhankel_transform, wall_orthogonality_sum

SUITE_NAMES = (
    "wall-orthogonality",
    "qbessel-orthogonality",
    "hankel-roundtrip",
    "kernel-plus-orthogonality",
    "kernel-zero-orthogonality",
    "kernel-contraction",
    "su2-relations",
    "comultiplication",
    "podles-coaction",
    "corepresentation",
    "scalar-identity",
    "erdelyi",
    "erdelyi-qintegral",
    "classical-limit",
    "all",
)

_COREP_SEED = 20260819


@dataclass
class SuiteConfig:
    """Resolved configuration for one suite run.

    q_values, tolerance, grid entries and window stay as strings; parsing
    happens per case at the case's working precision.  None means "use
    the suite default".
    """

    suite: str
    q_values: Optional[List[str]] = None
    precision: int = 50
    tolerance: Optional[str] = None
    pass_tolerance: Optional[str] = None
    grid: Dict[str, List[str]] = field(default_factory=dict)
    window: Optional[Tuple[int, int]] = None
    jobs: int = 1
    out: Optional[str] = None

    def __post_init__(self):
        if self.suite not in SUITE_NAMES:
            raise ConfigError(
                f"unknown suite {self.suite!r}; choose from "
                f"{', '.join(SUITE_NAMES)}")
        if self.q_values is not None:
            if not self.q_values:
                raise ConfigError("q grid must be nonempty")
            for qs in self.q_values:
                with mp.workdps(30):
                    qv = mpmath.mpf(qs)
                    if not 0 < qv < 1:
                        raise ConfigError(
                            f"q must lie strictly in (0, 1), got {qs}")
        for name, values in self.grid.items():
            if not values:
                raise ConfigError(f"grid for {name!r} must be nonempty")
        if int(self.jobs) < 1:
            raise ConfigError("jobs must be at least 1")


def parse_point(token: str, ctx: QContext):
    """Parse one grid token into an mpf/mpc at working precision.

    Forms: plain decimal ("0.3", "-1"); complex "re+imj" ("1+0.5j");
    power of the base "q" / "q^2"; polar "mag@a/b" meaning
    mag * exp(i pi a/b) ("0.5@1/3").  Decimal text goes through mpmath
    strings only, never binary floats.
    """
    t = str(token).strip()
    if not t:
        raise ConfigError("empty grid token")
    with ctx.working():
        if t == "q":
            return +ctx.q
        if t.startswith("q^"):
            try:
                return ctx.q ** int(t[2:])
            except ValueError:
                raise ConfigError(f"bad base-power token {token!r}")
        if "@" in t:
            mag, _, ang = t.partition("@")
            num, _, den = ang.partition("/")
            try:
                theta = mpmath.pi * mpmath.mpf(num.strip())
                if den.strip():
                    theta /= mpmath.mpf(den.strip())
                return mpmath.mpf(mag.strip()) * mpmath.exp(
                    mpmath.mpc(0, 1) * theta)
            except ValueError:
                raise ConfigError(f"bad polar token {token!r}")
        if t.endswith("j") or t.endswith("J"):
            body = t[:-1]
            cut = 0
            for i in range(len(body) - 1, 0, -1):
                if body[i] in "+-" and body[i - 1] not in "eE":
                    cut = i
                    break
            re_part = body[:cut] if cut else "0"
            im_part = body[cut:] if cut else body
            if im_part in ("", "+", "-"):
                im_part += "1"
            try:
                return mpmath.mpc(mpmath.mpf(re_part), mpmath.mpf(im_part))
            except ValueError:
                raise ConfigError(f"bad complex token {token!r}")
        try:
            return mpmath.mpf(t)
        except ValueError:
            raise ConfigError(f"bad numeric token {token!r}")


def expand_grid_tokens(spec) -> List[str]:
    """Comma list with integer ranges: "0:4" -> 0,1,2,3,4; "a, b" -> [a,b]."""
    if isinstance(spec, (list, tuple)):
        raw = [str(s) for s in spec]
    else:
        raw = str(spec).split(",")
    out: List[str] = []
    for tok in raw:
        t = tok.strip()
        if not t:
            continue
        if ":" in t and "@" not in t:
            lo, _, hi = t.partition(":")
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise ConfigError(f"bad range token {tok!r}")
            if lo_i > hi_i:
                raise ConfigError(f"empty range token {tok!r}")
            out.extend(str(i) for i in range(lo_i, hi_i + 1))
        else:
            out.append(t)
    if not out:
        raise ConfigError(f"grid spec {spec!r} expands to nothing")
    return out


def _ints(tokens: List[str], what: str) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ConfigError(f"{what} grid must be integers, got {tokens}")


def _fmt(x, digits: int) -> str:
    if x is None:
        return ""
    return mpmath.nstr(x, digits)


def _case_ctx(args: dict) -> QContext:
    tol = args.get("tolerance") or None
    return QContext(args["q"], int(args["precision"]), tol)


def _pass_tol(args: dict, ctx: QContext):
    with ctx.working():
        t = args.get("pass_tol") or ""
        return mpmath.mpf(t) if t else +ctx.tolerance


# ---------------------------------------------------------------------------
# generators: config -> ordered [(key, args)]


def _base_args(cfg: SuiteConfig, q: str) -> dict:
    return {
        "q": q,
        "precision": int(cfg.precision),
        "tolerance": cfg.tolerance or "",
        "pass_tol": cfg.pass_tolerance or "",
    }


def _qs(cfg: SuiteConfig, default: List[str]) -> List[str]:
    if cfg.q_values is not None:
        return cfg.q_values
    if "q" in cfg.grid:
        return expand_grid_tokens(cfg.grid["q"])
    return default


def _grid(cfg: SuiteConfig, name: str, default: List[str]) -> List[str]:
    if name in cfg.grid:
        return expand_grid_tokens(cfg.grid[name])
    return default


def _gen_wall_orthogonality(cfg: SuiteConfig):
    cases = []
    degs = _ints(_grid(cfg, "n", [str(i) for i in range(7)]), "n")
    degs_m = _ints(_grid(cfg, "m", [str(i) for i in range(7)]), "m")
    a_tokens = _grid(cfg, "a", ["q", "q^2", "0.5"])
    for q in _qs(cfg, ["0.3", "0.6", "0.9"]):
        for mode in ("primal", "dual"):
            for a in a_tokens:
                for n in degs:
                    for m in degs_m:
                        args = _base_args(cfg, q)
                        args.update(mode=mode, a=a, n=n, m=m)
                        key = f"mode={mode};q={q};a={a};n={n};m={m}"
                        cases.append((key, args))
    return cases


def _run_wall_orthogonality(args, ctx):
    av = parse_point(args["a"], ctx)
    res = wall_orthogonality_sum(int(args["n"]), int(args["m"]), av,
                                 args["mode"] == "dual", None, ctx)
    with ctx.working():
        return None, None, abs(res), None, _pass_tol(args, ctx)


def _gen_qbessel_orthogonality(cfg: SuiteConfig):
    cases = []
    lo, hi = cfg.window or (-40, 40)
    pts = _ints(_grid(cfg, "n", [str(i) for i in range(-10, 11)]), "n")
    ells = _ints(_grid(cfg, "l", ["0"]), "l")
    for q in _qs(cfg, ["0.35"]):
        for l in ells:
            for i, n in enumerate(pts):
                for m in pts[i:]:
                    args = _base_args(cfg, q)
                    args.update(n=n, m=m, l=l, kmin=int(lo), kmax=int(hi))
                    if not args["pass_tol"]:
                        args["pass_tol"] = "1e-25"
                    key = f"q={q};l={l};n={n};m={m}"
                    cases.append((key, args))
    return cases


def _run_qbessel_orthogonality(args, ctx):
    # sum_k q^(2k+n+m) J_(k+n)(q^l; q^2) J_(k+m)(q^l; q^2) = delta_nm
    n, m, l = int(args["n"]), int(args["m"]), int(args["l"])
    with ctx.working():
        q = ctx.q
        total = mpmath.mpf(0)
        for k in range(int(args["kmin"]), int(args["kmax"]) + 1):
            total += (q ** (2 * k + n + m)
                      * qbessel_lattice(k + n, l, ctx)
                      * qbessel_lattice(k + m, l, ctx))
        target = 1 if n == m else 0
        return total, mpmath.mpf(target), abs(total - target), None, \
            _pass_tol(args, ctx)


def _gen_hankel_roundtrip(cfg: SuiteConfig):
    cases = []
    lo, hi = cfg.window or (-40, 40)
    orders = _grid(cfg, "nu", ["0.5", "1.5"])
    spots = _ints(_grid(cfg, "r", [str(i) for i in range(-10, 11)]), "r")
    for q in _qs(cfg, ["0.35"]):
        for nu in orders:
            for r in spots:
                args = _base_args(cfg, q)
                args.update(nu=nu, profile=f"delta:{r}",
                            kmin=int(lo), kmax=int(hi))
                if not args["pass_tol"]:
                    args["pass_tol"] = "1e-25"
                cases.append((f"q={q};nu={nu};profile=delta:{r}", args))
            args = _base_args(cfg, q)
            args.update(nu=nu, profile="gaussian",
                        kmin=int(lo), kmax=int(hi))
            if not args["pass_tol"]:
                args["pass_tol"] = "1e-25"
            cases.append((f"q={q};nu={nu};profile=gaussian", args))
    return cases


def _run_hankel_roundtrip(args, ctx):
    nu = parse_point(args["nu"], ctx)
    window = (int(args["kmin"]), int(args["kmax"]))
    with ctx.working():
        profile = args["profile"]
        if profile.startswith("delta:"):
            f = {int(profile.partition(":")[2]): mpmath.mpf(1)}
        else:
            f = {k: ctx.q ** (k * k) for k in range(-6, 7)}
        g = qhankel_transform(f, nu, "forward", window, ctx)
        h = qhankel_transform(g, nu, "inverse", window, ctx)
        worst = mpmath.mpf(0)
        for t in range(-10, 11):
            worst = max(worst, abs(h[t] - f.get(t, mpmath.mpf(0))))
        return None, None, worst, None, _pass_tol(args, ctx)


def _kernel_orth_cases(cfg: SuiteConfig, kind: str):
    cases = []
    hi = int(_grid(cfg, "hi", ["6" if kind == "plus" else "4"])[0])
    ts = _ints(_grid(cfg, "t", ["-2", "0", "2"]), "t")
    lo = 0 if kind == "plus" else -hi
    for q in _qs(cfg, ["0.5"]):
        for v in range(lo, hi + 1):
            for w in range(lo, hi + 1):
                for v2 in range(v, hi + 1):
                    w2 = w + v2 - v
                    if not (lo <= w2 <= hi):
                        continue
                    args = _base_args(cfg, q)
                    args.update(kind=kind, mode="first", i0=v, i1=w,
                                i2=v2, i3=w2)
                    if not args["pass_tol"]:
                        args["pass_tol"] = "1e-25"
                    key = f"mode=first;q={q};v={v};w={w};v2={v2};w2={w2}"
                    cases.append((key, args))
        for p in range(lo, hi + 1):
            for p2 in range(p, hi + 1):
                for t in ts:
                    args = _base_args(cfg, q)
                    args.update(kind=kind, mode="second", i0=p, i1=p2,
                                i2=t, i3=0)
                    if not args["pass_tol"]:
                        args["pass_tol"] = "1e-25"
                    key = f"mode=second;q={q};p={p};p2={p2};t={t}"
                    cases.append((key, args))
    return cases


def _gen_kernel_plus_orth(cfg):
    return _kernel_orth_cases(cfg, "plus")


def _gen_kernel_zero_orth(cfg):
    return _kernel_orth_cases(cfg, "zero")


def _run_kernel_orth(args, ctx):
    if args["mode"] == "first":
        indices = (int(args["i0"]), int(args["i1"]),
                   int(args["i2"]), int(args["i3"]))
    else:
        indices = (int(args["i0"]), int(args["i1"]), int(args["i2"]))
    res = kernel_orthogonality_residual(args["kind"], args["mode"],
                                        indices, None, ctx)
    with ctx.working():
        return None, None, abs(res), None, _pass_tol(args, ctx)


def _gen_kernel_contraction(cfg: SuiteConfig):
    cases = []
    span = _ints(_grid(cfg, "p", ["-3", "-2", "-1", "0", "1", "2", "3"]),
                 "p")
    shift = int(_grid(cfg, "N", ["40"])[0])
    for q in _qs(cfg, ["0.5"]):
        for p in span:
            for v in span:
                for w in span:
                    args = _base_args(cfg, q)
                    args.update(p=p, v=v, w=w, N=shift)
                    if not args["pass_tol"]:
                        args["pass_tol"] = "1e-15"
                    key = f"q={q};N={shift};p={p};v={v};w={w}"
                    cases.append((key, args))
    return cases


def _run_kernel_contraction(args, ctx):
    res = kernel_contraction_residual(int(args["p"]), int(args["v"]),
                                      int(args["w"]), int(args["N"]), ctx)
    with ctx.working():
        return None, None, abs(res), None, _pass_tol(args, ctx)


_SU2_RELATIONS = ("alpha-gamma", "alpha-gammastar", "gamma-normal",
                  "isometry", "coisometry")


def _gen_su2(cfg: SuiteConfig):
    cases = []
    rels = _grid(cfg, "relation", list(_SU2_RELATIONS))
    for q in _qs(cfg, ["0.35"]):
        for rel in rels:
            if rel not in _SU2_RELATIONS:
                raise ConfigError(f"unknown su2 relation {rel!r}")
            args = _base_args(cfg, q)
            args.update(relation=rel)
            cases.append((f"q={q};relation={rel}", args))
    return cases


def _run_su2(args, ctx):
    legs = (LegSpec("N", 0, 14), LegSpec("Z", -12, 12))
    alpha, gamma = ops.build_su2_generators(legs, ctx)
    astar, gstar = alpha.adjoint(), gamma.adjoint()
    cols = list(ops.interior_indices(legs, 2))
    rel = args["relation"]
    with mp.workdps(alpha.dps):
        one = ops.identity_operator(legs, alpha.dps)
        q = ctx.q
        if rel == "alpha-gamma":
            res = alpha.compose(gamma).max_entry_difference(
                gamma.compose(alpha).scale(q), cols)
        elif rel == "alpha-gammastar":
            res = alpha.compose(gstar).max_entry_difference(
                gstar.compose(alpha).scale(q), cols)
        elif rel == "gamma-normal":
            res = gstar.compose(gamma).max_entry_difference(
                gamma.compose(gstar), cols)
        elif rel == "isometry":
            res = astar.compose(alpha).add(gstar.compose(gamma)) \
                .max_entry_difference(one, cols)
        else:
            res = alpha.compose(astar).add(gstar.compose(gamma)
                                           .scale(q * q)) \
                .max_entry_difference(one, cols)
        return None, None, res, None, _pass_tol(args, ctx)


def _gen_comultiplication(cfg: SuiteConfig):
    cases = []
    parts = _grid(cfg, "which", ["alpha", "gamma", "shift"])
    for q in _qs(cfg, ["0.35"]):
        for which in parts:
            if which not in ("alpha", "gamma", "shift"):
                raise ConfigError(f"unknown comultiplication part {which!r}")
            args = _base_args(cfg, q)
            args.update(which=which)
            cases.append((f"q={q};which={which}", args))
    return cases


def _run_comultiplication(args, ctx):
    which = args["which"]
    if which == "shift":
        mid_legs = (LegSpec("Z", -25, 145), LegSpec("Z", -10, 10))
        v_mid, _ = ops.build_e2_generators(mid_legs, ctx)
        dom = tuple(LegSpec("Z", -4, 4) for _ in range(4))
        interior = list(ops.interior_indices(dom, 2))
        dv = ops.comultiply("zero", v_mid, ctx, dom, dom,
                            columns=interior, interior_pad=2)
        v_s, _ = ops.build_e2_generators((dom[0], dom[1]), ctx)
        closed = v_s.tensor(v_s)
        with mp.workdps(dv.dps):
            res = dv.max_entry_difference(closed, interior)
            tol = (_pass_tol(args, ctx)
                   + 10 * (dv.max_column_deficit()
                           + closed.max_column_deficit()))
            return None, None, res, None, tol
    mid_legs = (LegSpec("N", 0, 60), LegSpec("Z", -10, 10))
    alpha_mid, gamma_mid = ops.build_su2_generators(mid_legs, ctx)
    dom = (LegSpec("N", 0, 6), LegSpec("Z", -6, 6),
           LegSpec("N", 0, 6), LegSpec("Z", -6, 6))
    interior = list(ops.interior_indices(dom, 2))
    a_s, g_s = ops.build_su2_generators((dom[0], dom[1]), ctx)
    as_s, gs_s = a_s.adjoint(), g_s.adjoint()
    with mp.workdps(a_s.dps):
        q = ctx.q
        if which == "alpha":
            delta = ops.comultiply("plus", alpha_mid, ctx, dom, dom,
                                   columns=interior, interior_pad=2)
            closed = a_s.tensor(a_s).sub(gs_s.tensor(g_s).scale(q))
        else:
            delta = ops.comultiply("plus", gamma_mid, ctx, dom, dom,
                                   columns=interior, interior_pad=2)
            closed = g_s.tensor(a_s).add(as_s.tensor(g_s))
        res = delta.max_entry_difference(closed, interior)
        tol = (_pass_tol(args, ctx)
               + 10 * (delta.max_column_deficit()
                       + closed.max_column_deficit()))
        return None, None, res, None, tol


_PODLES_CHECKS = ("XZ", "YZ", "XY", "YX", "Xstar", "unitary",
                  "conj-X", "conj-Z", "conj-Y",
                  "coaction-X", "coaction-Y", "coaction-Z",
                  "coaction-midrow")


def _gen_podles(cfg: SuiteConfig):
    cases = []
    checks = _grid(cfg, "check", list(_PODLES_CHECKS))
    for q in _qs(cfg, ["0.35"]):
        for check in checks:
            if check not in _PODLES_CHECKS:
                raise ConfigError(f"unknown sphere check {check!r}")
            args = _base_args(cfg, q)
            args.update(check=check)
            if check.startswith("coaction") and not args["pass_tol"]:
                args["pass_tol"] = "1e-25"
            cases.append((f"q={q};check={check}", args))
    return cases


def _run_podles(args, ctx):
    check = args["check"]
    if check.startswith("coaction"):
        which = check.partition("-")[2]
        res = ops.verify_coaction(which, ctx, point_hi=5, shift_half=5,
                                  fiber_hi=5, interior_pad=2, middle_hi=60)
        with ctx.working():
            return None, None, res, None, _pass_tol(args, ctx)
    if check.startswith("conj") or check == "unitary":
        N = LegSpec("N", 0, 12)
        Zl = LegSpec("Z", -26, 26)
        X, Y, Z, U = ops.build_podles_generators(N, Zl, ctx)
        alpha, gamma = ops.build_su2_generators((N, Zl), ctx)
        astar, gstar = alpha.adjoint(), gamma.adjoint()
        ustar = U.adjoint()
        ident_z = ops.identity_operator((Zl,), U.dps)
        cols = list(product(range(13), range(-12, 13)))
        with mp.workdps(U.dps):
            if check == "unitary":
                ident = ops.identity_operator((N, Zl), U.dps)
                res = max(
                    ustar.compose(U).max_entry_difference(ident, cols),
                    U.compose(ustar).max_entry_difference(ident, cols))
            else:
                image = {
                    "conj-X": gstar.compose(alpha).scale(-1),
                    "conj-Z": gstar.compose(gamma),
                    "conj-Y": astar.compose(gamma).scale(-1),
                }[check]
                xop = {"conj-X": X, "conj-Z": Z, "conj-Y": Y}[check]
                lhs = U.compose(xop.tensor(ident_z)).compose(ustar)
                res = lhs.max_entry_difference(image, cols)
            return None, None, res, None, _pass_tol(args, ctx)
    P = LegSpec("N", 0, 20)
    Zl = LegSpec("Z", -26, 26)
    X, Y, Z, U = ops.build_podles_generators(P, Zl, ctx)
    cols = [(i,) for i in range(17)]
    with mp.workdps(X.dps):
        q = +ctx.q
        Q = q * q
        if check == "XZ":
            res = X.compose(Z).max_entry_difference(
                Z.compose(X).scale(Q), cols)
        elif check == "YZ":
            res = Y.compose(Z).max_entry_difference(
                Z.compose(Y).scale(1 / Q), cols)
        elif check == "XY":
            res = X.compose(Y).max_entry_difference(
                Z.sub(Z.compose(Z).scale(Q)), cols)
        elif check == "YX":
            res = Y.compose(X).max_entry_difference(
                Z.sub(Z.compose(Z)).scale(1 / Q), cols)
        else:
            res = X.adjoint().max_entry_difference(Y, cols)
        return None, None, res, None, _pass_tol(args, ctx)


def _gen_corepresentation(cfg: SuiteConfig):
    count = int(_grid(cfg, "count", ["40"])[0])
    if count < 1:
        raise ConfigError("corepresentation sample count must be positive")
    rng = random.Random(_COREP_SEED)
    cases = []
    windings = (-2, 0, 2)
    for q in _qs(cfg, ["0.35"]):
        for i in range(count):
            l = windings[i % 3]
            a, c, e = (rng.randint(0, 4) for _ in range(3))
            b, d = (rng.randint(-4, 4) for _ in range(2))
            y = rng.randint(0, 4)
            w = rng.randint(-4, 4)
            args = _base_args(cfg, q)
            args.update(l=l, a=a, b=b, c=c, d=d, e=e, y=y, w=w)
            if not args["pass_tol"]:
                args["pass_tol"] = "1e-25"
            key = (f"q={q};i={i:03d};l={l};a={a};b={b};c={c};d={d};"
                   f"e={e};y={y};w={w}")
            cases.append((key, args))
    return cases


def _run_corepresentation(args, ctx):
    l = int(args["l"])
    a, b, c = int(args["a"]), int(args["b"]), int(args["c"])
    d, e = int(args["d"]), int(args["e"])
    y, w = int(args["y"]), int(args["w"])
    u = w + a - c + e - y
    v = b + c - l - y - e - w
    x = u + d + y + e - a + l
    res = ops.verify_corepresentation(l, (a, b, c, d, e), (u, v, w, x, y),
                                      ctx)
    with ctx.working():
        return None, None, abs(res), None, _pass_tol(args, ctx)


_LATTICE_SPOTS = ((1, 1, 2, 1, 0), (2, 1, 3, 2, 1), (0, 2, 2, 0, 0),
                  (1, 0, 1, 1, -2))


def _gen_scalar_identity(cfg: SuiteConfig):
    cases = []
    amax = int(_grid(cfg, "amax", ["3"])[0])
    wspan = int(_grid(cfg, "wspan", ["3"])[0])
    zspan = int(_grid(cfg, "zspan", ["3"])[0])
    for q in _qs(cfg, ["0.5"]):
        for a in range(amax + 1):
            for c in range(amax + 1):
                for e in range(amax + 1):
                    for y in range(amax + 1):
                        for w in range(-wspan, wspan + 1):
                            for l in range(-wspan, wspan + 1):
                                args = _base_args(cfg, q)
                                args.update(kind="scalar", a=a, c=c, e=e,
                                            y=y, w=w, l=l)
                                if not args["pass_tol"]:
                                    args["pass_tol"] = "1e-25"
                                key = (f"kind=scalar;q={q};a={a};c={c};"
                                       f"e={e};y={y};w={w};l={l}")
                                cases.append((key, args))
        for n, m, nu, sigma, l in _LATTICE_SPOTS:
            for zp in range(-zspan, zspan + 1):
                args = _base_args(cfg, q)
                args.update(kind="lattice", n=n, m=m, nu=nu, sigma=sigma,
                            zexp=zp, l=l)
                if not args["pass_tol"]:
                    args["pass_tol"] = "1e-25"
                key = (f"kind=lattice;q={q};n={n};m={m};nu={nu};"
                       f"sigma={sigma};zexp={zp};l={l}")
                cases.append((key, args))
    return cases


def _run_scalar_identity(args, ctx):
    with ctx.working():
        if args["kind"] == "lattice":
            res = lattice_consistency_residual(
                int(args["n"]), int(args["m"]), int(args["nu"]),
                int(args["sigma"]), int(args["zexp"]), int(args["l"]), ctx)
            return None, None, res, None, _pass_tol(args, ctx)
        res = scalar_identity_residual(int(args["a"]), int(args["c"]),
                                       int(args["e"]), int(args["y"]),
                                       int(args["w"]), int(args["l"]), ctx)
        return None, None, abs(res), None, _pass_tol(args, ctx)


def _gen_erdelyi(cfg: SuiteConfig):
    cases = []
    degs_n = _ints(_grid(cfg, "n", [str(i) for i in range(5)]), "n")
    degs_m = _ints(_grid(cfg, "m", [str(i) for i in range(5)]), "m")
    orders = _grid(cfg, "nu", ["-0.5", "0", "1", "2.5"])
    splits = _grid(cfg, "sigma", ["-1", "0.3", "1+0.5j"])
    zs = _grid(cfg, "z", ["0.3", "q^2", "1.7", "0.5@1/3"])
    for q in _qs(cfg, ["0.3", "0.6", "0.9"]):
        for n in degs_n:
            for m in degs_m:
                for nu in orders:
                    for sigma in splits:
                        for z in zs:
                            args = _base_args(cfg, q)
                            args.update(n=n, m=m, nu=nu, sigma=sigma, z=z)
                            key = (f"q={q};n={n};m={m};nu={nu};"
                                   f"sigma={sigma};z={z}")
                            cases.append((key, args))
    return cases


def _run_erdelyi(args, ctx):
    params = ErdelyiParams(int(args["n"]), int(args["m"]),
                           parse_point(args["nu"], ctx),
                           parse_point(args["sigma"], ctx),
                           parse_point(args["z"], ctx))
    lhs = erdelyi_lhs(params, ctx)
    rhs = erdelyi_rhs(params, ctx)
    with ctx.working():
        residual = abs(lhs.value - rhs)
        tol = _pass_tol(args, ctx) * (1 + abs(rhs))
        return lhs.value, rhs, residual, lhs.tail_bound, tol


def _gen_erdelyi_qintegral(cfg: SuiteConfig):
    cases = []
    lo, hi = cfg.window or (-6, 70)
    degs_n = _ints(_grid(cfg, "n", ["0", "1", "2"]), "n")
    degs_m = _ints(_grid(cfg, "m", ["0", "1", "2"]), "m")
    orders = _grid(cfg, "nu", ["0.5", "1.5"])
    splits = _grid(cfg, "sigma", ["0.3"])
    zs = _grid(cfg, "z", ["0.35", "0.8"])
    for q in _qs(cfg, ["0.4", "0.7"]):
        for n in degs_n:
            for m in degs_m:
                for nu in orders:
                    for sigma in splits:
                        for z in zs:
                            args = _base_args(cfg, q)
                            args.update(n=n, m=m, nu=nu, sigma=sigma, z=z,
                                        kmin=int(lo), kmax=int(hi))
                            key = (f"q={q};n={n};m={m};nu={nu};"
                                   f"sigma={sigma};z={z}")
                            cases.append((key, args))
    if cfg.q_values is None and not cfg.grid:
        # complex-split spot exercising the arbitrary-sigma claim
        args = _base_args(cfg, "0.6")
        args.update(n=0, m=1, nu="0.5", sigma="0.4+0.9j", z="0.35",
                    kmin=int(lo), kmax=int(hi))
        cases.append(("q=0.6;n=0;m=1;nu=0.5;sigma=0.4+0.9j;z=0.35", args))
    return cases


def _run_erdelyi_qintegral(args, ctx):
    params = ErdelyiParams(int(args["n"]), int(args["m"]),
                           parse_point(args["nu"], ctx),
                           parse_point(args["sigma"], ctx),
                           parse_point(args["z"], ctx))
    window = (int(args["kmin"]), int(args["kmax"]))
    lhs, rhs = erdelyi_qintegral(params, window, ctx)
    with ctx.working():
        residual = abs(lhs.value - rhs)
        tol = _pass_tol(args, ctx) * (1 + abs(rhs))
        return lhs.value, rhs, residual, lhs.tail_bound, tol


def _gen_classical_limit(cfg: SuiteConfig):
    cases = []
    degs_n = _ints(_grid(cfg, "n", ["0", "1", "2"]), "n")
    degs_m = _ints(_grid(cfg, "m", ["0", "1", "2"]), "m")
    orders = _grid(cfg, "nu", ["0", "1"])
    ys = _grid(cfg, "y", ["0.8"])
    pair = _grid(cfg, "qpair", ["0.99", "0.999"])
    if len(pair) != 2:
        raise ConfigError("classical-limit qpair must list exactly two "
                          "values below 1")
    for n in degs_n:
        for m in degs_m:
            for nu in orders:
                for y in ys:
                    args = _base_args(cfg, pair[1])
                    args.update(n=n, m=m, nu=nu, y=y,
                                q_from=pair[0], q_to=pair[1])
                    if not args["pass_tol"]:
                        args["pass_tol"] = "1e-2"
                    key = f"n={n};m={m};nu={nu};y={y}"
                    cases.append((key, args))
    return cases


def _run_classical_limit(args, ctx):
    """Certificate residual max(gap_to, pt * gap_to / gap_from): below the
    pass tolerance pt iff the gap at the closer q is below pt AND smaller
    than the gap at the farther q (the shrink requirement)."""
    n, m = int(args["n"]), int(args["m"])
    # near q = 1 the memo keys are unique to the case; reuse is nil and
    # the entries are numerous, so drop them instead of accumulating
    clear_caches()
    with ctx.working():
        nu = parse_point(args["nu"], ctx)
        sigma = m - n + nu / 2
        rows = classical_limit_table(n, m, nu, sigma, args["y"],
                                     [args["q_from"], args["q_to"]], ctx)
        gap_from = rows[0][3]
        gap_to = rows[1][3]
        pt = _pass_tol(args, ctx)
        if gap_from == 0:
            residual = gap_to
        else:
            residual = max(gap_to, pt * gap_to / gap_from)
        return gap_from, gap_to, residual, None, pt


_REGISTRY = {
    "wall-orthogonality": (_gen_wall_orthogonality, _run_wall_orthogonality),
    "qbessel-orthogonality": (_gen_qbessel_orthogonality,
                              _run_qbessel_orthogonality),
    "hankel-roundtrip": (_gen_hankel_roundtrip, _run_hankel_roundtrip),
    "kernel-plus-orthogonality": (_gen_kernel_plus_orth, _run_kernel_orth),
    "kernel-zero-orthogonality": (_gen_kernel_zero_orth, _run_kernel_orth),
    "kernel-contraction": (_gen_kernel_contraction, _run_kernel_contraction),
    "su2-relations": (_gen_su2, _run_su2),
    "comultiplication": (_gen_comultiplication, _run_comultiplication),
    "podles-coaction": (_gen_podles, _run_podles),
    "corepresentation": (_gen_corepresentation, _run_corepresentation),
    "scalar-identity": (_gen_scalar_identity, _run_scalar_identity),
    "erdelyi": (_gen_erdelyi, _run_erdelyi),
    "erdelyi-qintegral": (_gen_erdelyi_qintegral, _run_erdelyi_qintegral),
    "classical-limit": (_gen_classical_limit, _run_classical_limit),
}


def build_cases(cfg: SuiteConfig) -> List[Tuple[str, dict]]:
    """Ordered case list; keys unique, prefixed by suite inside 'all'."""
    if cfg.suite == "all":
        out = []
        for name in SUITE_NAMES[:-1]:
            gen, _ = _REGISTRY[name]
            for key, args in gen(cfg):
                args = dict(args)
                args["suite"] = name
                out.append((f"{name}::{key}", args))
        return out
    gen, _ = _REGISTRY[cfg.suite]
    out = []
    for key, args in gen(cfg):
        args = dict(args)
        args["suite"] = cfg.suite
        out.append((key, args))
    if not out:
        raise ConfigError(f"suite {cfg.suite} produced no cases")
    return out


def evaluate_case(payload: Tuple[str, dict]) -> Tuple[str, Dict[str, str]]:
    """Run one case in the current process; returns (key, record).

    Importable at top level so process pools can ship it; everything in
    the record is a plain string.
    """
    key, args = payload
    digits = int(args["precision"])
    _, runner = _REGISTRY[args["suite"]]
    try:
        ctx = _case_ctx(args)
        lhs, rhs, residual, tail, tol = runner(args, ctx)
        with mp.workdps(digits + 10):
            status = "pass" if residual < tol else "fail"
            record = {
                "lhs": _fmt(lhs, digits),
                "rhs": _fmt(rhs, digits),
                "residual": _fmt(residual, digits),
                "tail_bound": _fmt(tail, 10) if tail is not None else "",
                "tolerance": _fmt(tol, 10),
                "status": status,
                "note": "",
            }
    except TruncationInsufficient as exc:
        record = {
            "lhs": "", "rhs": "", "residual": "", "tail_bound": "",
            "tolerance": "", "status": "truncation", "note": str(exc),
        }
    params = {k: str(v) for k, v in sorted(args.items())
              if k not in ("suite", "precision", "tolerance", "pass_tol")}
    record["params"] = params
    return key, record


def run_suite(cfg: SuiteConfig) -> dict:
    """Execute every case of cfg's suite and assemble the report dict.

    jobs > 1 fans cases out over a process pool; results are keyed and
    re-sorted into generation order, so the report is byte-identical
    whatever the worker count.
    """
    cases = build_cases(cfg)
    results: Dict[str, Dict[str, str]] = {}
    if cfg.jobs > 1 and len(cases) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for key, record in pool.map(evaluate_case, cases,
                                        chunksize=max(1, len(cases) // (8 * cfg.jobs))):
                results[key] = record
    else:
        for payload in cases:
            key, record = evaluate_case(payload)
            results[key] = record
    rows = []
    counts = {"pass": 0, "fail": 0, "truncation": 0}
    for key, _ in cases:
        record = dict(results[key])
        record["case"] = key
        rows.append(record)
        counts[record["status"]] += 1
    config_echo = {
        "suite": cfg.suite,
        "precision": int(cfg.precision),
        "tolerance": cfg.tolerance or "",
        "pass_tolerance": cfg.pass_tolerance or "",
        "q_values": list(cfg.q_values) if cfg.q_values is not None else [],
        "grid": {k: list(v) for k, v in sorted(cfg.grid.items())},
        "window": list(cfg.window) if cfg.window is not None else [],
    }
    return {
        "suite": cfg.suite,
        "config": config_echo,
        "counts": counts,
        "cases": rows,
    }


def report_text(report: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, one
    trailing newline.  Identical runs produce identical bytes."""
    import json
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_report(report: dict, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(report_text(report))


def summarize(report: dict) -> str:
    """One stdout line per suite run; wall-clock and worker count are
    deliberately not part of the report file."""
    c = report["counts"]
    total = c["pass"] + c["fail"] + c["truncation"]
    return (f"{report['suite']}: {c['pass']}/{total} passed, "
            f"{c['fail']} failed, {c['truncation']} truncation")
