"""Acceptance gate: every stated criterion, end to end, at its stated
tolerance.  Each test prints one verdict line so a plain pytest run
shows the per-criterion outcome at a glance."""

import time

import mpmath
from mpmath import mp

from qhankel.context import QContext
from qhankel.erdelyi import ErdelyiParams, erdelyi_lhs, erdelyi_rhs
from qhankel.suites import SuiteConfig, run_suite, report_text


def _verdict(capsys, num, name, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {num:02d} {name}: "
              f"{'PASS' if ok else 'FAIL'} ({detail})")


def _clean(report):
    c = report["counts"]
    total = c["pass"] + c["fail"] + c["truncation"]
    return c["pass"] == total and total > 0, c, total


def test_criterion_01_product_formula_grid(capsys):
    t0 = time.time()
    serial = run_suite(SuiteConfig(suite="erdelyi", jobs=1))
    t_serial = time.time() - t0
    t0 = time.time()
    pooled = run_suite(SuiteConfig(suite="erdelyi", jobs=8))
    t_pooled = time.time() - t0
    ok, c, total = _clean(serial)
    ok = ok and total == 3600
    ok = ok and report_text(pooled) == report_text(serial)
    ok = ok and t_serial < 600 and t_pooled < 120

    # complex-order spot checks alongside the real-order grid
    spots_ok = True
    for q, n, m, nu, z in (("0.6", 1, 0, mpmath.mpc("0.5", "0.3"), "0.7"),
                           ("0.4", 0, 2, mpmath.mpc("1", "1"), None)):
        ctx = QContext(q, 50)
        with ctx.working():
            zz = mpmath.mpf(z) if z else \
                mpmath.mpf("0.5") * mpmath.exp(mpmath.mpc(0, 1)
                                               * mpmath.pi / 3)
            params = ErdelyiParams(n, m, nu, mpmath.mpf("0.3"), zz)
            lhs = erdelyi_lhs(params, ctx)
            rhs = erdelyi_rhs(params, ctx)
            spots_ok = spots_ok and (abs(lhs.value - rhs)
                                     < mpmath.mpf("1e-30") * (1 + abs(rhs)))
    ok = ok and spots_ok
    _verdict(capsys, 1, "product formula grid", ok,
             f"{c['pass']}/{total} cases, serial {t_serial:.0f}s, "
             f"8 workers {t_pooled:.0f}s, complex spots "
             f"{'ok' if spots_ok else 'FAIL'}")
    assert ok


def test_criterion_02_degree_zero_closed_form(capsys):
    worst = mpmath.mpf(0)
    cases = 0
    for q in ("0.3", "0.6", "0.9"):
        ctx = QContext(q, 50)
        with mp.workdps(70):
            qv = mpmath.mpf(q)
            zs = (mpmath.mpf("0.3"), qv ** 2, mpmath.mpf("1.7"),
                  mpmath.mpf("0.5") * mpmath.exp(mpmath.mpc(0, 1)
                                                 * mpmath.pi / 3))
            for nu in (mpmath.mpf("-0.5"), mpmath.mpf("0"),
                       mpmath.mpf("1"), mpmath.mpf("2.5")):
                for z in zs:
                    lhs = erdelyi_lhs(
                        ErdelyiParams(0, 0, nu, mpmath.mpf("0.3"), z), ctx)
                    direct = z ** nu * mpmath.qp(z * z * qv * qv, qv * qv)
                    gap = abs(lhs.value - direct) / (1 + abs(direct))
                    worst = max(worst, gap)
                    cases += 1
    ok = cases == 48 and worst < mpmath.mpf("1e-30")
    _verdict(capsys, 2, "degree zero closed form", ok,
             f"{cases} points, worst relative gap "
             f"{mpmath.nstr(worst, 3)}")
    assert ok


def test_criterion_03_wall_orthogonality(capsys):
    report = run_suite(SuiteConfig(suite="wall-orthogonality", jobs=1))
    ok, c, total = _clean(report)
    _verdict(capsys, 3, "Wall orthogonality", ok,
             f"{c['pass']}/{total} primal and dual sums")
    assert ok


def test_criterion_04_qbessel_orthogonality_and_roundtrip(capsys):
    lattice = run_suite(SuiteConfig(suite="qbessel-orthogonality", jobs=1))
    ok1, c1, t1 = _clean(lattice)
    roundtrip = run_suite(SuiteConfig(suite="hankel-roundtrip", jobs=1))
    ok2, c2, t2 = _clean(roundtrip)
    ok = ok1 and ok2
    _verdict(capsys, 4, "lattice orthogonality and transform inversion", ok,
             f"{c1['pass']}/{t1} sums, {c2['pass']}/{t2} roundtrips")
    assert ok


def test_criterion_05_kernel_orthogonality(capsys):
    plus = run_suite(SuiteConfig(suite="kernel-plus-orthogonality", jobs=1))
    ok1, c1, t1 = _clean(plus)
    zero = run_suite(SuiteConfig(suite="kernel-zero-orthogonality", jobs=1))
    ok2, c2, t2 = _clean(zero)
    ok = ok1 and ok2
    _verdict(capsys, 5, "kernel orthogonality", ok,
             f"{c1['pass']}/{t1} nonnegative, {c2['pass']}/{t2} bilateral")
    assert ok


def test_criterion_06_kernel_contraction(capsys):
    report = run_suite(SuiteConfig(suite="kernel-contraction",
                                   q_values=["0.3", "0.6"], jobs=1))
    ok, c, total = _clean(report)
    _verdict(capsys, 6, "kernel contraction", ok,
             f"{c['pass']}/{total} shifted comparisons")
    assert ok


def test_criterion_07_operator_relations(capsys):
    su2 = run_suite(SuiteConfig(suite="su2-relations", jobs=1))
    ok1, c1, t1 = _clean(su2)
    comult = run_suite(SuiteConfig(suite="comultiplication", jobs=1))
    ok2, c2, t2 = _clean(comult)
    sphere = run_suite(SuiteConfig(suite="podles-coaction", jobs=1))
    ok3, c3, t3 = _clean(sphere)
    ok = ok1 and ok2 and ok3
    _verdict(capsys, 7, "operator algebra", ok,
             f"{c1['pass']}/{t1} relations, {c2['pass']}/{t2} "
             f"comultiplications, {c3['pass']}/{t3} sphere checks")
    assert ok


def test_criterion_08_corepresentation_and_scalar_identity(capsys):
    corep = run_suite(SuiteConfig(suite="corepresentation", jobs=1))
    ok1, c1, t1 = _clean(corep)
    scalar = run_suite(SuiteConfig(suite="scalar-identity", jobs=1))
    ok2, c2, t2 = _clean(scalar)
    ok = ok1 and ok2
    _verdict(capsys, 8, "corepresentation and scalar identity", ok,
             f"{c1['pass']}/{t1} sampled entries, {c2['pass']}/{t2} "
             f"grid points")
    assert ok


def test_criterion_09_classical_limit(capsys):
    report = run_suite(SuiteConfig(suite="classical-limit", jobs=1))
    ok, c, total = _clean(report)
    ok = ok and total == 18
    _verdict(capsys, 9, "classical limit", ok,
             f"{c['pass']}/{total} degree/order pairs shrink toward the "
             f"Laguerre form")
    assert ok


def test_criterion_10_deterministic_reports(capsys, tmp_path):
    cfg = dict(suite="kernel-contraction")
    first = report_text(run_suite(SuiteConfig(**cfg, jobs=1)))
    second = report_text(run_suite(SuiteConfig(**cfg, jobs=1)))
    pooled = report_text(run_suite(SuiteConfig(**cfg, jobs=3)))
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(first)
    b.write_text(pooled)
    ok = (first == second == pooled
          and a.read_bytes() == b.read_bytes())
    _verdict(capsys, 10, "deterministic reports", ok,
             f"{len(first)} bytes, stable across reruns and worker counts")
    assert ok
