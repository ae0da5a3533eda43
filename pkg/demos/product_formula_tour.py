"""Walk through the product formula at a handful of parameter points.

The lattice side sums weighted products of two Wall polynomials and a
q-Bessel value over the q^2-lattice; the closed side is a single
product of a power, a q-shifted factorial, and two Wall polynomials at
shifted arguments.  The script prints both sides and the certified
residual at each point, ending with the degree-zero case where the
closed side collapses to z^nu (z^2 q^2; q^2)_inf.
"""

import mpmath
from mpmath import mp

from qhankel import ErdelyiParams, QContext, erdelyi_lhs, erdelyi_rhs

POINTS = [
    ("0.6", 1, 2, "0.5", "0.3", mpmath.mpf("0.7")),
    ("0.9", 3, 1, "2.5", "1", mpmath.mpf("1.7")),
    ("0.5", 2, 2, "0", "-1", mpmath.mpf("0.35")),
]


def show(q, n, m, nu, sigma, z):
    ctx = QContext(q, 50)
    with ctx.working():
        params = ErdelyiParams(n, m, mpmath.mpf(nu), mpmath.mpf(sigma), z)
        lhs = erdelyi_lhs(params, ctx)
        rhs = erdelyi_rhs(params, ctx)
        residual = abs(lhs.value - rhs) / (1 + abs(rhs))
        print(f"q={q} n={n} m={m} nu={nu} sigma={sigma} z={mpmath.nstr(z, 6)}")
        print(f"  lattice sum  {mpmath.nstr(lhs.value, 30)}")
        print(f"  closed form  {mpmath.nstr(rhs, 30)}")
        print(f"  residual     {mpmath.nstr(residual, 3)}  "
              f"({lhs.terms_used} lattice terms, tail bound "
              f"{mpmath.nstr(lhs.tail_bound, 3)})")


def degree_zero():
    ctx = QContext("0.6", 50)
    with ctx.working():
        q = ctx.q
        nu = mpmath.mpf("1.5")
        z = mpmath.mpf("0.8")
        lhs = erdelyi_lhs(ErdelyiParams(0, 0, nu, mpmath.mpf("0.2"), z), ctx)
        direct = z ** nu * mpmath.qp(z * z * q * q, q * q)
        print("degree zero against the bare infinite product:")
        print(f"  lattice sum  {mpmath.nstr(lhs.value, 30)}")
        print(f"  z^nu poch    {mpmath.nstr(direct, 30)}")
        print(f"  difference   {mpmath.nstr(abs(lhs.value - direct), 3)}")


def complex_point():
    ctx = QContext("0.6", 50)
    with ctx.working():
        z = mpmath.mpf("0.5") * mpmath.exp(mpmath.mpc(0, 1) * mpmath.pi / 3)
        sigma = mpmath.mpc("1", "0.5")
        params = ErdelyiParams(1, 1, mpmath.mpf("0.5"), sigma, z)
        lhs = erdelyi_lhs(params, ctx)
        rhs = erdelyi_rhs(params, ctx)
        print("complex z and sigma:")
        print(f"  residual     {mpmath.nstr(abs(lhs.value - rhs), 3)}")


if __name__ == "__main__":
    for point in POINTS:
        show(*point)
    print()
    degree_zero()
    print()
    complex_point()
