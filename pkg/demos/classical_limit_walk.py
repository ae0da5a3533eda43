"""Watch the product formula collapse onto the classical Laguerre form.

With z = y sqrt(2(1-q)) and the stated normalization, the lattice side
approaches (-1)^(n+m)/2 y^nu e^(-y^2) L_m^(s+n-m)(y^2) L_n^(v-s+m-n)(y^2)
as q goes to 1.  The table prints the scaled lattice value, the target,
and their gap for a walk of q values; each step of 10x closer to 1
shrinks the gap roughly 5x on this grid.
"""

import mpmath

from qhankel import QContext, classical_limit_table

CASES = [
    (0, 0, "0", "0", ["0.9", "0.99", "0.999"]),
    (1, 1, "1", "0.5", ["0.9", "0.99"]),
    (2, 1, "1", "0", ["0.9", "0.99"]),
]


def main():
    ctx = QContext("0.5", 30, "1e-14")
    for n, m, nu, sigma, walk in CASES:
        rows = classical_limit_table(n, m, mpmath.mpf(nu),
                                     mpmath.mpf(sigma), mpmath.mpf("0.8"),
                                     walk, ctx)
        print(f"n={n} m={m} nu={nu} sigma={sigma}  (y = 0.8)")
        for q, scaled, target, gap in rows:
            print(f"  q={mpmath.nstr(q, 5):8}  scaled "
                  f"{mpmath.nstr(scaled, 12):16}  target "
                  f"{mpmath.nstr(target, 12):16}  gap "
                  f"{mpmath.nstr(gap, 3)}")
        print()


if __name__ == "__main__":
    main()
