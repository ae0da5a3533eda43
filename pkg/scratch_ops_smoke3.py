import time
from itertools import product

import mpmath
from mpmath import mp

from qhankel.context import QContext
from qhankel.kernels import _kplus, _kplus_safe
from qhankel import operators as ops

ctx = QContext(q=mpmath.mpf("0.35"), precision_digits=50)

# Delta_0(v) = v (x) v
t0 = time.time()
vleg = (ops.LegSpec("Z", -25, 140), ops.LegSpec("Z", -10, 10))
v, _nop = ops.build_e2_generators(vleg, ctx)
dom4 = tuple(ops.LegSpec("Z", -4, 4) for _ in range(4))
interior = list(ops.interior_indices(dom4, 2))
dv = ops.comultiply("zero", v, ctx, dom4, dom4, columns=interior,
                    interior_pad=2)
vs, _ = ops.build_e2_generators((dom4[0], dom4[1]), ctx)
closed = vs.tensor(vs)
diff = dv.max_entry_difference(closed, interior)
with mp.workdps(dv.dps):
    print("Delta0(v) vs v x v:", mpmath.nstr(diff, 5),
          "def:", mpmath.nstr(dv.max_column_deficit(interior), 5),
          time.time() - t0)

# Delta_0+(G_rf) vs the ladder closed form, l=1, r=1, f=0
t0 = time.time()
l, r, f = 1, 1, 0
xN = ops.LegSpec("N", 0, 60)
xZ = ops.LegSpec("Z", -14, 14)
xcodZ1 = ops.LegSpec("Z", -80, 80)
xcodZ2 = ops.LegSpec("Z", -80, 80)


def g_entry_action(col):
    a, b = col
    amp = _kplus(r, a, f, ctx)
    return [((a - l - f - r, b + f - r), amp)]


g_rf = ops._materialize((xN, xZ), (xcodZ1, xcodZ2), ctx, g_entry_action)
dom = (ops.LegSpec("N", 0, 5), ops.LegSpec("Z", -5, 5),
       ops.LegSpec("N", 0, 5), ops.LegSpec("Z", -5, 5))
cod = tuple(ops.LegSpec("Z", -70, 70) for _ in range(4))
interior = list(ops.interior_indices(dom, 2))
dg = ops.comultiply("link", g_rf, ctx, dom, cod, columns=interior,
                    interior_pad=2)
with mp.workdps(dg.dps):
    worst = mpmath.mpf(0)
    noise = mpmath.mpf(10) ** (-55)
    for col in interior:
        a, b, c, d = col
        want = {}
        m = 0
        while True:
            amp = _kplus_safe(m, c, f, ctx) * _kplus_safe(r, a, m, ctx)
            out = (a - l - r - m, b + m - r, c - l - f - m, d + f - m)
            if abs(amp) > noise:
                want[out] = amp
            if m > max(a, c, f, r) + 6 and abs(amp) < noise:
                break
            m += 1
        got = dict(dg.entries[col])
        for key in set(want) | set(got):
            zv = mpmath.mpf(0)
            worst = max(worst, abs(want.get(key, zv) - got.get(key, zv)))
    print("Delta0+(G_rf) vs closed ladder:", mpmath.nstr(worst, 5),
          time.time() - t0)

# U (x tensor 1) U* = phi(x)
t0 = time.time()
N = ops.LegSpec("N", 0, 12)
Z = ops.LegSpec("Z", -26, 26)
X, Y, Zop, U = ops.build_podles_generators(N, Z, ctx)
alpha, gamma = ops.build_su2_generators((N, Z), ctx)
astar, gstar = alpha.adjoint(), gamma.adjoint()
ident_z = ops.identity_operator((Z,), U.dps)
ustar = U.adjoint()
phi = {
    "X": gstar.compose(alpha).scale(-1),
    "Z": gstar.compose(gamma),
    "Y": astar.compose(gamma).scale(-1),
}
cols = list(product(range(0, 13), range(-12, 13)))
with mp.workdps(U.dps):
    for name, xop in (("X", X), ("Y", Y), ("Z", Zop)):
        lhs = U.compose(xop.tensor(ident_z)).compose(ustar)
        d = lhs.max_entry_difference(phi[name], cols)
        print("U(%s x 1)U* = phi:" % name, mpmath.nstr(d, 5))
    d = ustar.compose(U).max_entry_difference(
        ops.identity_operator((N, Z), U.dps), cols)
    print("U*U = 1:", mpmath.nstr(d, 5), time.time() - t0)

# Podles relations on a single leg
t0 = time.time()
P = ops.LegSpec("N", 0, 20)
X, Y, Zp, _ = ops.build_podles_generators(P, Z, ctx)
cols1 = [(i,) for i in range(0, 17)]
with mp.workdps(X.dps):
    q2 = ctx.q ** 2
    checks = [
        ("XZ=q2ZX", X.compose(Zp), Zp.compose(X).scale(q2)),
        ("YZ=q-2ZY", Y.compose(Zp), Zp.compose(Y).scale(1 / q2)),
        ("XY=Z-q2Z2", X.compose(Y),
         Zp.sub(Zp.compose(Zp).scale(q2))),
        ("YX=q-2(Z-Z2)", Y.compose(X),
         Zp.sub(Zp.compose(Zp)).scale(1 / q2)),
        ("X*=Y", X.adjoint(), Y),
    ]
    for name, lhs, rhs in checks:
        print(name, mpmath.nstr(lhs.max_entry_difference(rhs, cols1), 5))
print("podles", time.time() - t0)
