import time

import mpmath
from mpmath import mp

from qhankel.context import QContext
from qhankel.kernels import _kplus, kernel_zero
from qhankel import operators as ops

ctx = QContext(q=mpmath.mpf("0.35"), precision_digits=50)

t0 = time.time()
N = ops.LegSpec("N", 0, 14)
Z = ops.LegSpec("Z", -10, 10)
alpha, gamma = ops.build_su2_generators((N, Z), ctx)
astar = alpha.adjoint()
gstar = gamma.adjoint()
print("su2 built", time.time() - t0)

with mp.workdps(alpha.dps):
    # alpha gamma = q gamma alpha on interior
    lhs = alpha.compose(gamma)
    rhs = gamma.compose(alpha).scale(ctx.q)
    cols = list(ops.interior_indices((N, Z), 2))
    print("ag=qga:", mpmath.nstr(lhs.max_entry_difference(rhs, cols), 5))
    # a*a + g*g = 1
    one = ops.identity_operator((N, Z), alpha.dps)
    lhs2 = astar.compose(alpha).add(gstar.compose(gamma))
    print("a*a+g*g=1:", mpmath.nstr(lhs2.max_entry_difference(one, cols), 5))
    # aa* + q^2 g*g = 1
    lhs3 = alpha.compose(astar).add(gstar.compose(gamma).scale(ctx.q ** 2))
    print("aa*+q2g*g=1:", mpmath.nstr(lhs3.max_entry_difference(one, cols), 5))

# W+ column at (0,0,0,0)
t0 = time.time()
dom = (ops.LegSpec("N", 0, 3), ops.LegSpec("Z", -3, 3),
       ops.LegSpec("N", 0, 3), ops.LegSpec("Z", -3, 3))
cod = (ops.LegSpec("Z", -60, 8), ops.LegSpec("Z", -8, 60),
       ops.LegSpec("N", 0, 60), ops.LegSpec("Z", -8, 8))
w_plus = ops.build_w_plus(dom, cod, ctx, columns=[(0, 0, 0, 0), (1, 1, 0, -1)])
col = dict(w_plus.entries[(0, 0, 0, 0)])
with mp.workdps(w_plus.dps):
    worst = mpmath.mpf(0)
    for p in range(40):
        got = col.get((-p, p, p, 0), mpmath.mpf(0))
        want = _kplus(p, 0, 0, ctx)
        worst = max(worst, abs(got - want))
    print("W+ column (0,0,0,0) vs kernel:", mpmath.nstr(worst, 5),
          "norm def:", mpmath.nstr(w_plus.max_column_deficit(), 5),
          time.time() - t0)

# W+ xi+ = e
t0 = time.time()
xi = ops.xi_plus_vector(1, 0, 2, 1, ctx)
dom_big = (ops.LegSpec("N", 0, 140), ops.LegSpec("Z", -145, 10),
           ops.LegSpec("N", 0, 140), ops.LegSpec("Z", -10, 145))
cod_big = (ops.LegSpec("Z", -20, 20), ops.LegSpec("Z", -20, 20),
           ops.LegSpec("N", 0, 20), ops.LegSpec("Z", -20, 20))
w_cols = ops.build_w_plus(dom_big, cod_big, ctx, columns=list(xi.keys()))
img = w_cols.apply(xi)
with mp.workdps(w_cols.dps):
    worst = mpmath.mpf(0)
    for idx, val in img.items():
        want = 1 if idx == (1, 0, 2, 1) else 0
        worst = max(worst, abs(val - want))
    print("W+ xi = e residual:", mpmath.nstr(worst, 5), " terms:", len(xi),
          time.time() - t0)

# comultiply plus of alpha: small windows
t0 = time.time()
xN = ops.LegSpec("N", 0, 60)
xZ = ops.LegSpec("Z", -14, 14)
ax, gx = ops.build_su2_generators((xN, xZ), ctx)
dom4 = (ops.LegSpec("N", 0, 6), ops.LegSpec("Z", -6, 6),
        ops.LegSpec("N", 0, 6), ops.LegSpec("Z", -6, 6))
interior = list(ops.interior_indices(dom4, 2))
delta_a = ops.comultiply("plus", ax, ctx, dom4, dom4, columns=interior,
                         interior_pad=2)
print("comultiply built", time.time() - t0, "cols:", len(delta_a.entries))

t0 = time.time()
a_s, g_s = ops.build_su2_generators((dom4[0], dom4[1]), ctx)
gs_s = g_s.adjoint()
closed = a_s.tensor(a_s).sub(gs_s.tensor(g_s).scale(ctx.q))
diff = delta_a.max_entry_difference(closed, interior)
with mp.workdps(delta_a.dps):
    print("Delta+(alpha) vs closed:", mpmath.nstr(diff, 5),
          "max def:", mpmath.nstr(delta_a.max_column_deficit(interior), 5),
          time.time() - t0)
