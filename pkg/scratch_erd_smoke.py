import time

import mpmath
from mpmath import mp

from qhankel.context import QContext
from qhankel.erdelyi import (
    ErdelyiParams,
    classical_limit_table,
    erdelyi_lhs,
    erdelyi_qintegral,
    erdelyi_rhs,
    inverse_hankel_check,
    lattice_consistency_residual,
    power_series_residuals,
    scalar_identity_residual,
)

ctx = QContext("0.6", 50)
t0 = time.time()

with mp.workdps(70):
    # frozen spot 1
    p1 = ErdelyiParams(1, 2, "0.5", "0.3", "0.7")
    l1 = erdelyi_lhs(p1, ctx)
    r1 = erdelyi_rhs(p1, ctx)
    exp1 = mpmath.mpf("-0.0060229494547444395186436746803591525379225742040607270850635023")
    print("spot1 lhs vs frozen:", mpmath.nstr(abs(l1.value - exp1) / abs(exp1), 5))
    print("spot1 lhs vs rhs   :", mpmath.nstr(abs(l1.value - r1) / abs(r1), 5))
    print("spot1 terms, tail  :", l1.terms_used, mpmath.nstr(l1.tail_bound, 5))

    # frozen spot 2 (sigma = -1)
    p2 = ErdelyiParams(2, 1, 1, -1, "0.7")
    l2 = erdelyi_lhs(p2, ctx)
    exp2 = mpmath.mpf("-0.041391528848122742856129249630609575254021082821624506809142487")
    print("spot2 lhs vs frozen:", mpmath.nstr(abs(l2.value - exp2) / abs(exp2), 5))
    print("spot2 lhs vs rhs   :", mpmath.nstr(abs(l2.value - erdelyi_rhs(p2, ctx)) / abs(exp2), 5))

    # frozen spot 3 (z = 0, nu = 0)
    p3 = ErdelyiParams(1, 2, 0, "0.3", 0)
    l3 = erdelyi_lhs(p3, ctx)
    exp3 = mpmath.mpf("-0.028149621892480342276848415192564736900712179662886041682455769")
    print("spot3 lhs vs frozen:", mpmath.nstr(abs(l3.value - exp3) / abs(exp3), 5))
    print("spot3 rhs          :", mpmath.nstr(abs(erdelyi_rhs(p3, ctx) - exp3) / abs(exp3), 5))

    # frozen complex-sigma spot: rhs and q-integral
    sig = mpmath.mpc("0.4", "0.9")
    p4 = ErdelyiParams(0, 1, "0.5", sig, "0.35")
    r4 = erdelyi_rhs(p4, ctx)
    exp4 = mpmath.mpc("0.015950776249650592732238804197553937152387900429546315826229278",
                      "-0.14258313236099381387969294298463601067545198725643909419603261")
    print("spot4 rhs vs frozen:", mpmath.nstr(abs(r4 - exp4) / abs(exp4), 5))
    qlhs, qrhs = erdelyi_qintegral(p4, (-6, 70), ctx)
    expq = mpmath.mpc("0.029604298227139513957494352345968355905548806418268594224364575",
                      "-0.099784830953364166351641792267450738047119564777882439582657046")
    print("spot4 qint lhs     :", mpmath.nstr(abs(qlhs.value - expq) / abs(expq), 5))
    print("spot4 qint lhs=rhs :", mpmath.nstr(abs(qlhs.value - qrhs) / abs(qrhs), 5))
    heads = mpmath.mpc("0.71412631872035088519202625772849708436971215680606778137121947",
                       "0.12773901654181321272629223020324247294280894791570408506372957")
    print("spot4 rhs heads    :", mpmath.nstr(abs(qrhs - heads * exp4) / abs(qrhs), 5))

    # degree symmetry: (n, sigma) <-> (m, nu - sigma)
    pa = ErdelyiParams(1, 2, "0.8", "0.25", "1.3")
    pb = ErdelyiParams(2, 1, "0.8", mpmath.mpf("0.8") - mpmath.mpf("0.25"), "1.3")
    ra, rb = erdelyi_rhs(pa, ctx), erdelyi_rhs(pb, ctx)
    print("degree symmetry    :", mpmath.nstr(abs(ra - rb) / abs(ra), 5))

    # wall fallback canary: a-exponent hits an exact prefix zero
    pc = ErdelyiParams(4, 0, 1, -1, "0.7")
    lc = erdelyi_lhs(pc, ctx)
    rc = erdelyi_rhs(pc, ctx)
    print("prefix-zero canary :", mpmath.nstr(abs(lc.value - rc) / (1 + abs(rc)), 5))

    # scalar identity
    s1 = scalar_identity_residual(3, 2, 2, 1, -1, 0, ctx)
    s2 = scalar_identity_residual(3, 2, 2, 1, 1, 0, ctx)   # mu = -1 branch
    s3 = scalar_identity_residual(0, 0, 0, 0, 0, 0, ctx)
    print("scalar residuals   :", mpmath.nstr(abs(s1), 5), mpmath.nstr(abs(s2), 5),
          mpmath.nstr(abs(s3), 5))

    # lattice consistency
    c1 = lattice_consistency_residual(1, 1, 2, 1, 0, 0, ctx)
    c2 = lattice_consistency_residual(1, 1, 2, 1, -4, 0, ctx)  # degenerate
    c3 = lattice_consistency_residual(2, 1, 3, 2, 2, 1, ctx)
    print("lattice residuals  :", mpmath.nstr(c1, 5), mpmath.nstr(c2, 5), mpmath.nstr(c3, 5))

    # inverse transform reading
    ih = inverse_hankel_check(1, 1, "0.5", "0.3", (-3, 80), ctx)
    print("inverse check      :", mpmath.nstr(ih, 5))

    # power series
    ctx5 = QContext("0.5", 50)
    ps = power_series_residuals(2, "0.7", "0.3", ctx5, max_power=10)
    print("power residual max :", mpmath.nstr(max(ps), 5), "len", len(ps))

    # classical limit
    ctx_cl = QContext("0.5", 30, tolerance="1e-14")
    rows = classical_limit_table(1, 1, 1, "0.5", "0.8", ["0.9", "0.99"], ctx_cl)
    for qv, ls, rc_, gap in rows:
        print("classical q=%s gap=%s lhs=%s rhs=%s" % (
            mpmath.nstr(qv, 5), mpmath.nstr(gap, 5), mpmath.nstr(ls, 8),
            mpmath.nstr(rc_, 8)))

print("elapsed %.1fs" % (time.time() - t0))
