"""The scalar pairing identity and its two consistency readings.

First a corner of the integer grid: the residual of the single-entry
pairing identity, evaluated through kernel ladder sums, printed for a
block of sample and probe offsets.  Then the lattice reading: the same
identity specialized to the product-formula data must agree with the
closed side up to one shared constant across all lattice offsets, and
the script prints that agreement for a few offsets.
"""

import mpmath
from mpmath import mp

from qhankel import QContext, lattice_consistency_residual, scalar_identity_residual

CTX = QContext("0.5", 50)


def corner():
    print("scalar identity residuals on a grid corner:")
    with mp.workdps(60):
        worst = mpmath.mpf(0)
        count = 0
        for a in range(3):
            for c in range(3):
                for e in range(3):
                    for y in range(3):
                        for w in (-2, 0, 2):
                            for l in (-2, 0, 2):
                                r = abs(scalar_identity_residual(
                                    a, c, e, y, w, l, CTX))
                                worst = max(worst, r)
                                count += 1
        print(f"  {count} points, worst residual {mpmath.nstr(worst, 3)}")


def lattice():
    print("lattice consistency across offsets:")
    for n, m, nu, sigma, l in ((1, 1, 2, 1, 0), (2, 1, 3, 2, 1)):
        for zexp in (-2, 0, 2):
            r = lattice_consistency_residual(n, m, nu, sigma, zexp, l, CTX)
            print(f"  n={n} m={m} nu={nu} sigma={sigma} l={l} "
                  f"z-offset {zexp:+d}: {mpmath.nstr(r, 3)}")


if __name__ == "__main__":
    corner()
    lattice()
