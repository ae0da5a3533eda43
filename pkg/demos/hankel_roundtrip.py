"""q-Hankel transform on the power lattice: orthogonality and inversion.

The transform sends a profile on lattice points q^k to another lattice
profile by pairing against q-Bessel values; applying it twice returns
the original profile because the kernel is self-dual.  The script
round-trips a delta profile and a gaussian-like bump, then spells out
one orthogonality sum that the inversion rests on.
"""

import mpmath
from mpmath import mp

from qhankel import QContext, qbessel_lattice, qhankel_transform

CTX = QContext("0.35", 50)
WINDOW = (-40, 40)


def roundtrip(profile, label):
    nu = mpmath.mpf("0.5")
    forward = qhankel_transform(profile, nu, "forward", WINDOW, CTX)
    back = qhankel_transform(forward, nu, "inverse", WINDOW, CTX)
    with mp.workdps(60):
        worst = mpmath.mpf(0)
        for t in range(-10, 11):
            ref = profile.get(t, mpmath.mpf(0))
            worst = max(worst, abs(back[t] - ref))
    print(f"  {label:24} worst interior error {mpmath.nstr(worst, 3)}")


def orthogonality(n, m):
    with mp.workdps(60):
        q = CTX.q
        total = mpmath.mpf(0)
        for k in range(*WINDOW):
            total += (q ** (2 * k + n + m)
                      * qbessel_lattice(k + n, 0, CTX)
                      * qbessel_lattice(k + m, 0, CTX))
        target = 1 if n == m else 0
        print(f"  sum_k q^(2k+{n}+{m}) J_(k+{n}) J_(k+{m}) = "
              f"{mpmath.nstr(total, 8)}  (target {target})")


if __name__ == "__main__":
    print("round trips through the transform:")
    roundtrip({2: mpmath.mpf(1)}, "delta at k = 2")
    roundtrip({k: CTX.q ** (k * k) for k in range(-6, 7)}, "gaussian bump")
    print("lattice orthogonality behind the inversion:")
    orthogonality(0, 0)
    orthogonality(0, 3)
    orthogonality(-2, -2)
