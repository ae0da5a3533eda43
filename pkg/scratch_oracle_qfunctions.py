"""Throwaway oracle: brute-force reference values for test_qfunctions."""
import mpmath
from mpmath import mp

mp.dps = 90


def poch_fin(a, q, k):
    p = mpmath.mpf(1)
    f = a
    for _ in range(k):
        p *= (1 - f)
        f *= q
    return p


def poch_inf(a, q):
    p = mpmath.mpf(1)
    f = a
    while abs(f) > mpmath.mpf(10) ** (-95):
        p *= (1 - f)
        f *= q
    return p


def wall_plain(n, a, x, q):
    tot = mpmath.mpf(0)
    for k in range(n + 1):
        tot += poch_fin(q ** (-n), q, k) * (q * x) ** k / (
            poch_fin(a * q, q, k) * poch_fin(q, q, k))
    return tot


def qbessel_direct(nu, x, q):
    Q = q * q
    b = Q ** (nu + 1) if nu == int(nu) else mpmath.exp((nu + 1) * mpmath.log(Q))
    tot = mpmath.mpf(0)
    k = 0
    term = mpmath.mpf(1)
    while True:
        t = (-1) ** k * Q ** (mpmath.mpf(k * (k - 1)) / 2) * (Q * x * x) ** k / (
            poch_fin(b, Q, k) * poch_fin(Q, Q, k))
        tot += t
        if abs(t) < mpmath.mpf(10) ** (-95) and k > 5:
            break
        k += 1
    xnu = x ** int(nu) if nu == int(nu) else mpmath.exp(nu * mpmath.log(x))
    return xnu * poch_inf(b, Q) / poch_inf(Q, Q) * tot


q = mpmath.mpf("0.6")
n, a, x = 2, q * q, q
plain = wall_plain(n, a, x, q)
print("wall plain :", mpmath.nstr(plain, 50))
print("wall tilde :", mpmath.nstr(plain * poch_fin(a * q, q, n), 50))
print("wall check :", mpmath.nstr(plain * poch_inf(a * q, q), 50))

# degree 5, negative x, a = 0.25
p5 = wall_plain(5, mpmath.mpf("0.25"), mpmath.mpf("-0.8"), q)
print("wall deg5  :", mpmath.nstr(p5, 50))

nu = mpmath.mpf("0.5")
print("J_0.5(0.3;q^2) q=0.6 :", mpmath.nstr(qbessel_direct(nu, mpmath.mpf("0.3"), q), 50))
print("J_2(q^3;q^2)  q=0.6 :", mpmath.nstr(qbessel_direct(mpmath.mpf(2), q ** 3, q), 50))
print("J_-3(q^2;q^2) via identity q=0.6 :",
      mpmath.nstr((-q) ** 3 * qbessel_direct(mpmath.mpf(3), q ** 2 * q ** 3, q), 50))

# classical Laguerre via gamma-based binomial sum
def lag(nn, al, xx):
    tot = mpmath.mpf(0)
    for k in range(nn + 1):
        tot += (-1) ** k * mpmath.gamma(nn + al + 1) / (
            mpmath.gamma(nn - k + 1) * mpmath.gamma(al + k + 1)) * xx ** k / mpmath.factorial(k)
    return tot

print("L_3^(0.5)(1.25) :", mpmath.nstr(lag(3, mpmath.mpf("0.5"), mpmath.mpf("1.25")), 50))
# half-integer Bessel closed form: J_1/2(x) = sqrt(2/(pi x)) sin x
x0 = mpmath.mpf(2)
print("J_1/2(2) closed :", mpmath.nstr(mpmath.sqrt(2 / (mpmath.pi * x0)) * mpmath.sin(x0), 50))
print("J_0 first zero  : 2.4048255576957727686216318793264546431242449091460")
