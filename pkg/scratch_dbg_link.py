import mpmath
from mpmath import mp

from qhankel.context import QContext
from qhankel.kernels import _kplus, _kplus_safe
from qhankel import operators as ops

ctx = QContext(q=mpmath.mpf("0.35"), precision_digits=50)
l, r, f = 1, 1, 0
xN = ops.LegSpec("N", 0, 60)
xZ = ops.LegSpec("Z", -14, 14)
xcodZ1 = ops.LegSpec("Z", -80, 80)
xcodZ2 = ops.LegSpec("Z", -80, 80)


def g_entry_action(col):
    a, b = col
    return [((a - l - f - r, b + f - r), _kplus(r, a, f, ctx))]


g_rf = ops._materialize((xN, xZ), (xcodZ1, xcodZ2), ctx, g_entry_action)
dom = (ops.LegSpec("N", 0, 5), ops.LegSpec("Z", -5, 5),
       ops.LegSpec("N", 0, 5), ops.LegSpec("Z", -5, 5))
cod = tuple(ops.LegSpec("Z", -70, 70) for _ in range(4))
interior = list(ops.interior_indices(dom, 2))
dg = ops.comultiply("link", g_rf, ctx, dom, cod, columns=interior,
                    interior_pad=2)
with mp.workdps(dg.dps):
    noise = mpmath.mpf(10) ** (-55)
    rows = []
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
            dv = abs(want.get(key, zv) - got.get(key, zv))
            rows.append((dv, col, key, want.get(key, zv), got.get(key, zv)))
    rows.sort(reverse=True)
    for dv, col, key, wv, gv in rows[:8]:
        print(col, key, "diff", mpmath.nstr(dv, 6), "want",
              mpmath.nstr(wv, 6), "got", mpmath.nstr(gv, 6))
