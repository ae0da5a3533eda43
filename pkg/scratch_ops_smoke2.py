import time

import mpmath
from mpmath import mp

from qhankel.context import QContext
from qhankel.kernels import _kplus, kernel_zero
from qhankel import operators as ops

ctx = QContext(q=mpmath.mpf("0.35"), precision_digits=50)

# W0 xi0 = e
t0 = time.time()
xi = ops.xi_zero_vector(1, -1, 0, 1, ctx)
print("xi0 terms:", len(xi))
lo = min(i[0] for i in xi) - 1
hi = max(i[0] for i in xi) + 1
dom = (ops.LegSpec("Z", lo, hi), ops.LegSpec("Z", -200, 200),
       ops.LegSpec("Z", lo - 2, hi + 2), ops.LegSpec("Z", -200, 200))
cod = (ops.LegSpec("Z", -20, 20), ops.LegSpec("Z", -20, 20),
       ops.LegSpec("Z", -20, 20), ops.LegSpec("Z", -20, 20))
w0 = ops.build_w_zero(dom, cod, ctx, columns=list(xi.keys()))
img = w0.apply(xi)
with mp.workdps(w0.dps):
    worst = mpmath.mpf(0)
    for idx, val in img.items():
        want = 1 if idx == (1, -1, 0, 1) else 0
        worst = max(worst, abs(val - want))
    print("W0 xi0 = e residual:", mpmath.nstr(worst, 5), time.time() - t0)

# G eta = e_{t-p, r, p}
t0 = time.time()
eta = ops.eta_vector(2, 1, -1, ctx)
dom3 = (ops.LegSpec("N", 0, 40), ops.LegSpec("Z", -40, 40),
        ops.LegSpec("N", 0, 40))
cod3 = (ops.LegSpec("Z", -15, 15), ops.LegSpec("Z", -15, 15),
        ops.LegSpec("N", 0, 15))
g0 = ops.build_g(0, dom3, cod3, ctx, columns=list(eta.keys()))
img = g0.apply(eta)
with mp.workdps(g0.dps):
    worst = mpmath.mpf(0)
    for idx, val in img.items():
        want = 1 if idx == (-1 - 1, 2, 1) else 0   # (t-p, r, p), l=0
        worst = max(worst, abs(val - want))
    print("G eta = e residual:", mpmath.nstr(worst, 5), time.time() - t0)

# G(l) vs shifted G
t0 = time.time()
g2 = ops.build_g(2, dom3, cod3, ctx, columns=[(1, 0, 1), (2, -1, 0)])
with mp.workdps(g0.dps):
    worst = mpmath.mpf(0)
    g0b = ops.build_g(0, dom3,
                      (ops.LegSpec("Z", -13, 17),) + cod3[1:], ctx,
                      columns=[(1, 0, 1), (2, -1, 0)])
    for colk in [(1, 0, 1), (2, -1, 0)]:
        base = {(o + (-2), b, c): v
                for (o, b, c), v in dict(g0b.entries[colk]).items()}
        got = dict(g2.entries[colk])
        for key in set(base) | set(got):
            z = mpmath.mpf(0)
            worst = max(worst, abs(base.get(key, z) - got.get(key, z)))
    print("G(2) = shift G(0):", mpmath.nstr(worst, 5), time.time() - t0)

# corepresentation residual: constructed probe
t0 = time.time()
worst = mpmath.mpf(0)
for (l, a, b, c, d, e, y, w) in [
        (0, 1, 0, 2, 1, 1, 1, 0),
        (2, 2, 1, 0, -1, 1, 0, -2),
        (-2, 0, -1, 1, 2, 2, 3, 1),
        (1, 3, 2, 1, 0, 0, 2, 2)]:
    u = w + a - c + e - y
    v = b + c - l - y - e - w
    x = u + d + y + e - a + l
    r = ops.verify_corepresentation(l, (a, b, c, d, e), (u, v, w, x, y), ctx)
    with mp.workdps(65):
        worst = max(worst, abs(r))
print("corep residual:", mpmath.nstr(worst, 5), time.time() - t0)
# selection-rule violation gives exactly zero
r = ops.verify_corepresentation(0, (1, 0, 2, 1, 1), (99, 0, 0, 0, 1), ctx)
print("corep off-rule:", r)

# coaction, small windows
for which in ("X", "Y", "Z", "midrow"):
    t0 = time.time()
    d = ops.verify_coaction(which, ctx, point_hi=5, shift_half=5,
                            fiber_hi=5, interior_pad=2, middle_hi=60)
    with mp.workdps(65):
        print("coaction", which, mpmath.nstr(d, 5), time.time() - t0)
