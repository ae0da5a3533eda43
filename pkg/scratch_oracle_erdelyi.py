"""Brute-force oracles for the product-formula (erdelyi) module.

Independent code path: every q-shifted factorial goes through mpmath.qp,
series are summed naively term by term, and no package module is imported.
Values printed here get frozen into tests/test_erdelyi.py as string
literals.
"""

import time

import mpmath
from mpmath import mp


def wall_tilde(n, a, x, Q):
    """Entire-normalized Wall polynomial, naive finite sum."""
    tot = mp.mpf(0)
    for k in range(n + 1):
        tot += (mpmath.qp(Q ** (-n), Q, k) * mpmath.qp(a * Q ** (k + 1), Q, n - k)
                * (Q * x) ** k / mpmath.qp(Q, Q, k))
    return tot


def jnu(nu, w, Q):
    """Second-lattice q-Bessel J_nu(w; Q), naive series."""
    if w == 0:
        return mp.mpf(1) if nu == 0 else mp.mpf(0)
    head = mpmath.exp(nu * mpmath.log(w)) * mpmath.qp(Q ** (nu + 1), Q) / mpmath.qp(Q, Q)
    tot = mp.mpf(0)
    j = 0
    while True:
        t = ((-1) ** j * Q ** (j * (j - 1) // 2) * (Q * w * w) ** j
             / (mpmath.qp(Q, Q, j) * mpmath.qp(Q ** (nu + 1), Q, j)))
        tot += t
        if j > 8 and abs(t) < mp.mpf(10) ** (-(mp.dps + 5)) * (1 + abs(tot)):
            break
        j += 1
    return head * tot


def lhs(n, m, nu, sigma, z, q, pmax):
    Q = q * q
    tot = mp.mpf(0)
    for p in range(pmax + 1):
        tot += (q ** (2 * p) * q ** (p * nu) * mpmath.qp(Q ** (1 + p), Q)
                * wall_tilde(n, Q ** sigma, Q ** p, Q)
                * wall_tilde(m, Q ** (nu - sigma), Q ** p, Q)
                * jnu(nu, z * q ** p, Q))
    return tot


def rhs(n, m, nu, sigma, z, q):
    Q = q * q
    if z == 0:
        znu = mp.mpf(1) if nu == 0 else mp.mpf(0)
        zz = mp.mpf(0)
    else:
        znu = mpmath.exp(nu * mpmath.log(z))
        zz = z * z
    return ((-q) ** (n + m) * znu * q ** ((m - n) ** 2)
            * Q ** (n * sigma + m * (nu - sigma))
            * mpmath.qp(zz * Q ** (1 + n + m), Q)
            * wall_tilde(n, Q ** (nu - sigma + m - n), zz * Q ** (n + m), Q)
            * wall_tilde(m, Q ** (sigma + n - m), zz * Q ** (n + m), Q))


def lhs_qintegral(n, m, nu, sigma, z, q, kmax):
    """Jackson-integral form with check-normalized Wall polynomials,
    already divided by (1-q); the lattice weight kills k < 0 exactly."""
    Q = q * q
    tot = mp.mpf(0)
    for k in range(kmax + 1):
        x = q ** k
        pcn = wall_tilde(n, Q ** sigma, x * x, Q) * mpmath.qp(Q ** (sigma + n + 1), Q)
        pcm = (wall_tilde(m, Q ** (nu - sigma), x * x, Q)
               * mpmath.qp(Q ** (nu - sigma + m + 1), Q))
        tot += (x * x * q ** (k * nu) * mpmath.qp(Q ** (1 + k), Q)
                * pcn * pcm * jnu(nu, z * x, Q))
    return tot


def rel(a, b):
    return abs(a - b) / (1 + abs(b))


def show(tag, v, digits=62):
    if isinstance(v, mpmath.mpc):
        print(f"{tag} re = {mpmath.nstr(v.real, digits)}")
        print(f"{tag} im = {mpmath.nstr(v.imag, digits)}")
    else:
        print(f"{tag} = {mpmath.nstr(v, digits)}")


t0 = time.time()
mp.dps = 130

# --- main frozen spot -------------------------------------------------------
q = mp.mpf("0.6")
nu = mp.mpf("0.5")
sigma = mp.mpf("0.3")
z = mp.mpf("0.7")
VL = lhs(1, 2, nu, sigma, z, q, 300)
VR = rhs(1, 2, nu, sigma, z, q)
show("V(1,2,0.5,0.3,0.7,q=0.6) lhs", VL)
print("lhs-vs-rhs rel:", mpmath.nstr(rel(VL, VR), 5))

# --- closed form n=m=0 ------------------------------------------------------
R0 = rhs(0, 0, nu, sigma, z, q)
C0 = mpmath.exp(nu * mpmath.log(z)) * mpmath.qp(z * z * q * q, q * q)
print("n=m=0 closed-form rel:", mpmath.nstr(rel(R0, C0), 5))
L0 = lhs(0, 0, nu, sigma, z, q, 300)
print("n=m=0 lhs rel:", mpmath.nstr(rel(L0, C0), 5))

# --- degree symmetry --------------------------------------------------------
S1 = rhs(2, 1, mp.mpf("1.5"), mp.mpf("0.4"), z, q)
S2 = rhs(1, 2, mp.mpf("1.5"), mp.mpf("1.1"), z, q)
print("degree symmetry rel:", mpmath.nstr(rel(S1, S2), 5))

# --- sigma = -1 (tilde fallback path, plain normalization would pole) -------
VN_L = lhs(2, 1, mp.mpf(1), mp.mpf(-1), z, q, 300)
VN_R = rhs(2, 1, mp.mpf(1), mp.mpf(-1), z, q)
show("V(2,1,1,-1,0.7,q=0.6)", VN_R)
print("sigma=-1 rel:", mpmath.nstr(rel(VN_L, VN_R), 5))

# --- z=0, nu=0 --------------------------------------------------------------
VZ_L = lhs(1, 2, mp.mpf(0), sigma, mp.mpf(0), q, 300)
VZ_R = rhs(1, 2, mp.mpf(0), sigma, mp.mpf(0), q)
show("V(1,2,0,0.3,z=0,q=0.6)", VZ_R)
print("z=0 rel:", mpmath.nstr(rel(VZ_L, VZ_R), 5))

# --- complex sigma spot + q-integral reduction ------------------------------
sig_c = mpmath.mpc("0.4", "0.9")
zc = mp.mpf("0.35")
CL = lhs(0, 1, nu, sig_c, zc, q, 300)
CR = rhs(0, 1, nu, sig_c, zc, q)
show("Vc(0,1,0.5,0.4+0.9i,0.35,q=0.6) rhs", CR)
print("complex-sigma rel:", mpmath.nstr(rel(CL, CR), 5))
Q = q * q
hn = mpmath.qp(Q ** (sig_c + 0 + 1), Q)
hm = mpmath.qp(Q ** (nu - sig_c + 1 + 1), Q)
QL = lhs_qintegral(0, 1, nu, sig_c, zc, q, 300)
show("Vc qint lhs", QL)
show("Vc heads hn*hm", hn * hm)
print("qint reduction rel:", mpmath.nstr(rel(QL, hn * hm * CL), 5))
print("qint rhs rel:", mpmath.nstr(rel(QL, hn * hm * CR), 5))
print("elapsed", round(time.time() - t0, 1), "s")

# --- power-series coefficients at m=0 (lattice vs closed side) --------------
mp.dps = 60
q = mp.mpf("0.5")
Q = q * q
n = 2
nu = mp.mpf("0.7")
sigma = mp.mpf("0.3")
jh = mpmath.qp(Q ** (nu + 1), Q) / mpmath.qp(Q, Q)


def S_j(j):
    tot = mp.mpf(0)
    p = 0
    while True:
        t = Q ** (p * (1 + nu + j)) * mpmath.qp(Q ** (p + 1), Q) * wall_tilde(
            n, Q ** sigma, Q ** p, Q)
        tot += t
        if p > 10 and abs(t) < mp.mpf(10) ** (-(mp.dps + 5)) * (1 + abs(tot)):
            break
        p += 1
    return tot


A = Q ** (nu - sigma - n)
pref = (-q) ** n * q ** (n * n) * Q ** (n * sigma)
maxrel = mp.mpf(0)
for j in range(7):
    cL = jh * (-1) ** j * Q ** (j * (j + 1) // 2) / (
        mpmath.qp(Q, Q, j) * mpmath.qp(Q ** (nu + 1), Q, j)) * S_j(j)
    cR = mp.mpf(0)
    for k in range(0, min(j, n) + 1):
        wallc = (mpmath.qp(Q ** (-n), Q, k) * mpmath.qp(A * Q ** (k + 1), Q, n - k)
                 * Q ** ((1 + n) * k) / mpmath.qp(Q, Q, k))
        i = j - k
        pochc = (-1) ** i * Q ** (i * (i - 1) // 2) * Q ** ((1 + n) * i) / mpmath.qp(Q, Q, i)
        cR += wallc * pochc
    cR *= pref
    r = rel(cL, cR)
    maxrel = max(maxrel, r)
print("power-series coeff max rel (j<=6):", mpmath.nstr(maxrel, 5))

# reconstruction sanity: sum of coefficients reproduces lhs at small z
zs = mp.mpf("0.05")
rec = mp.mpf(0)
for j in range(9):
    cL = jh * (-1) ** j * Q ** (j * (j + 1) // 2) / (
        mpmath.qp(Q, Q, j) * mpmath.qp(Q ** (nu + 1), Q, j)) * S_j(j)
    rec += cL * zs ** (2 * j)
rec *= mpmath.exp(nu * mpmath.log(zs))
direct = lhs(n, 0, nu, sigma, zs, q, 200)
print("reconstruction rel:", mpmath.nstr(rel(rec, direct), 5))

# --- classical limit spot (ladder form, sanity for the frozen scale) --------
mp.dps = 35


def pinf(a, Q):
    tot = mp.mpf(1)
    f = a
    floor = mp.mpf(10) ** (-(mp.dps + 5))
    while abs(f) > floor:
        tot *= (1 - f)
        f *= Q
    return tot


def lhs_ladder(n, m, nu, sigma, z, q, pmax):
    """Fixed-length brute-force ladder; no adaptive stop (the lattice weight
    suppresses small p at q near 1, so the mass sits at large p)."""
    Q = q * q
    G = pinf(Q, Q)
    an = Q ** sigma
    am = Q ** (nu - sigma)
    jh = pinf(Q ** (nu + 1), Q) / pinf(Q, Q)
    znu = mpmath.exp(nu * mpmath.log(z))
    qnu = q ** nu
    tot = mp.mpf(0)
    q2p = mp.mpf(1)
    qpnu = mp.mpf(1)
    w2 = z * z
    peak_p = 0
    peak = mp.mpf(0)
    for p in range(pmax + 1):
        wn = wall_tilde(n, an, Q ** p, Q)
        wm = wall_tilde(m, am, Q ** p, Q)
        s = mp.mpf(1)
        t = mp.mpf(1)
        jj = 0
        qw = Q * w2
        while True:
            t *= -Q ** jj * qw / ((1 - Q ** (jj + 1)) * (1 - Q ** (nu + 1 + jj)))
            s += t
            jj += 1
            if abs(t) < mp.mpf(10) ** (-(mp.dps + 5)) * (1 + abs(s)):
                break
        term = q2p * qpnu * G * wn * wm * s
        tot += term
        if abs(term) > peak:
            peak, peak_p = abs(term), p
        q2p *= Q
        qpnu *= qnu * qnu  # q^{p nu} (theorem) * (q^p)^{nu} (from J)
        w2 *= Q
        G = G / (1 - Q ** (p + 1))  # -> (Q^{p+2};Q)_inf
    print(f"  peak term at p={peak_p}, last/peak="
          f"{mpmath.nstr(abs(term) / peak, 3)}")
    return znu * jh * tot


y = mp.mpf("0.8")
nu = mp.mpf(1)
n = m = 1
sigma = nu / 2
rhs_cl = (mp.mpf(1) / 2 * y ** nu * mpmath.exp(-y * y)
          * mpmath.laguerre(m, sigma + n - m, y * y)
          * mpmath.laguerre(n, nu - sigma + m - n, y * y))
for qq, pmax in ((mp.mpf("0.99"), 4000), (mp.mpf("0.999"), 35000)):
    c = mpmath.sqrt(2 * (1 - qq))
    L = lhs_ladder(n, m, nu, sigma, c * y, qq, pmax)
    scale = c ** (-nu) * (1 - qq * qq) ** (-(n + m)) / (2 * mpmath.factorial(n) * mpmath.factorial(m))
    gap = abs(scale * L - rhs_cl) / (1 + abs(rhs_cl))
    print(f"classical q={qq}: gap={mpmath.nstr(gap, 4)}")
print("rhs_cl:", mpmath.nstr(rhs_cl, 10))
print("total elapsed", round(time.time() - t0, 1), "s")
