"""The product formula as a Jackson q-integral pairing.

Multiplying both sides by two infinite q-shifted factorials turns the
lattice sum into (1-q)^-1 times a Jackson integral of
x^nu (q^2 x^2; q^2)_inf times two normalized Wall polynomials times a
q-Bessel factor.  The integrand vanishes identically on the lattice
points above x = 1, so a window reaching modestly past the origin
already captures everything; the script also shows the truncation
guard rejecting a window that stops too early.
"""

import mpmath

from qhankel import ErdelyiParams, QContext, TruncationInsufficient, erdelyi_qintegral


def main():
    ctx = QContext("0.5", 50)
    params = ErdelyiParams(1, 1, mpmath.mpf("1.5"), mpmath.mpf("0.4"),
                           mpmath.mpf("0.8"))
    lhs, rhs = erdelyi_qintegral(params, (-6, 70), ctx)
    print("window (-6, 70):")
    print(f"  q-integral   {mpmath.nstr(lhs.value, 30)}")
    print(f"  closed form  {mpmath.nstr(rhs, 30)}")
    print(f"  difference   {mpmath.nstr(abs(lhs.value - rhs), 3)}")
    print(f"  tail bound   {mpmath.nstr(lhs.tail_bound, 3)} over "
          f"{lhs.terms_used} lattice points")
    try:
        erdelyi_qintegral(params, (-6, 8), ctx)
    except TruncationInsufficient as exc:
        print(f"window (-6, 8) is rejected: {exc}")


if __name__ == "__main__":
    main()
