"""Throwaway oracle: brute-force kernel values from the raw defining series.

P+(p,v,w) = (-q)^(p-w) q^((p-w)(v-w))
            * sqrt( (Q^(p+1);Q)_inf (Q^(w+1);Q)_inf / (Q^(v+1);Q)_inf )
            * [ sum_k (Q^-w;Q)_k (Q^(v-w+k+1);Q)_inf (Q^(p+1))^k / (Q;Q)_k ]
            / (Q;Q)_inf

P0(p,v,w) = (-q)^(p-w) J_{v-w}(q^(p-w); q^2)

Run: python3 scratch_oracle_kernels.py
"""
import mpmath
from mpmath import mp


def poch_inf(a, b):
    total = mp.one
    f = a
    for _ in range(200000):
        if abs(f) < mp.mpf(10) ** (-(mp.dps + 10)):
            break
        total *= (1 - f)
        f *= b
    return total


def poch_fin(a, b, k):
    total = mp.one
    f = a
    for _ in range(k):
        total *= (1 - f)
        f *= b
    return total


def kplus_raw(p, v, w, q):
    Q = q * q
    s = mp.zero
    for k in range(w + 1):
        t = (poch_fin(Q ** (-w), Q, k) * poch_inf(Q ** (v - w + k + 1), Q)
             * (Q ** (p + 1)) ** k / poch_fin(Q, Q, k))
        s += t
    pref = (-q) ** (p - w) * q ** ((p - w) * (v - w))
    root = mpmath.sqrt(poch_inf(Q ** (p + 1), Q) * poch_inf(Q ** (w + 1), Q)
                       / poch_inf(Q ** (v + 1), Q))
    return pref * root * s / poch_inf(Q, Q)


def jnu_brute(nu, x, q):
    # Hahn-Exton via the direct 1phi1 sum in base Q = q^2.
    Q = q * q
    s = mp.zero
    for j in range(400):
        t = ((-1) ** j * Q ** (j * (j - 1) / mp.mpf(2)) * (Q * x * x) ** j
             * poch_inf(Q ** (nu + 1 + j), Q) / poch_fin(Q, Q, j))
        s += t
        if abs(t) < mp.mpf(10) ** (-(mp.dps + 10)) and j > 8:
            break
    return x ** nu * s / poch_inf(Q, Q)


mp.dps = 90
q = mpmath.mpf("0.6")
Q = q * q

print("sqrt((Q;Q)_inf) at q=0.6 :", mpmath.nstr(mpmath.sqrt(poch_inf(Q, Q)), 55))
for (p, v, w) in [(0, 0, 0), (1, 2, 1), (3, 1, 2), (2, 2, 2), (5, 0, 3), (2, 3, 1)]:
    val = kplus_raw(p, v, w, q)
    print(f"P+({p},{v},{w}) q=0.6 :", mpmath.nstr(val, 55))

# symmetry spot check of (-q)^(-p) P+ under permutations
base = kplus_raw(3, 1, 2, q) * (-q) ** (-3)
for (p, v, w) in [(1, 3, 2), (2, 1, 3), (3, 2, 1), (1, 2, 3), (2, 3, 1)]:
    other = kplus_raw(p, v, w, q) * (-q) ** (-p)
    print(f"sym ({p},{v},{w}) rel gap:", mpmath.nstr(abs(other - base) / abs(base), 5))

# P0 values
for (p, v, w) in [(2, 1, -1), (0, 0, 0), (-3, -1, 2)]:
    val = (-q) ** (p - w) * jnu_brute(v - w, q ** (p - w), q)
    print(f"P0({p},{v},{w}) q=0.6 :", mpmath.nstr(val, 55))

# orthogonality brute: sum_p P+(p,1,1) P+(p,2,2)  (t=0, differing pairs -> 0)
tot = mp.zero
for p in range(0, 120):
    tot += kplus_raw(p, 1, 1, q) * kplus_raw(p, 2, 2, q)
print("first-mode cross (1,1)x(2,2):", mpmath.nstr(tot, 8))
tot = mp.zero
for p in range(0, 120):
    tot += kplus_raw(p, 2, 1, q) * kplus_raw(p, 2, 1, q)
print("first-mode diag (2,1):", mpmath.nstr(tot, 35))
# second mode: sum_w P+(1, w, w) P+(2, w, w)  (t=0, p != p2 -> 0)
# stable orientation: degree slot (last) must carry the smallest index,
# else the raw series cancels catastrophically at large w


def kplus_sorted(p, v, w, q):
    hi, mid, lo = sorted((p, v, w), reverse=True)
    return (-q) ** (p - hi) * kplus_raw(hi, mid, lo, q)


tot = mp.zero
for w in range(0, 120):
    tot += kplus_sorted(1, w, w, q) * kplus_sorted(2, w, w, q)
print("second-mode cross p=1,p2=2, t=0:", mpmath.nstr(tot, 8))
tot = mp.zero
for w in range(0, 120):
    tot += kplus_sorted(2, w + 1, w, q) * kplus_sorted(2, w + 1, w, q)
print("second-mode diag p=2, t=1:", mpmath.nstr(tot, 35))

# contraction: P+(1+N, 0+N, -1+N) vs P0(1, 0, -1) at N=40
mp.dps = 140
q = mpmath.mpf("0.6")
N = 40
a = kplus_raw(1 + N, 0 + N, -1 + N, q)
b = (-q) ** (1 - (-1)) * jnu_brute(0 - (-1), q ** (1 - (-1)), q)
print("contraction gap N=40 (1,0,-1):", mpmath.nstr(abs(a - b), 8))
