"""Windowed operator realizations and their defining relations.

Builds the ladder generators on a truncated (N, Z) window, checks the
five defining relations on interior columns, then does the same for
the quantum-sphere generators and one coaction row.  Residuals here
are exact zeros or rounding-level numbers because the generators are
sparse with closed-form entries; the truncation only shows up near the
window edges, which interior columns avoid.
"""

import mpmath
from mpmath import mp

from qhankel import LegSpec, QContext, build_podles_generators, build_su2_generators, identity_operator, interior_indices, verify_coaction

CTX = QContext("0.35", 50)


def ladder_relations():
    legs = (LegSpec("N", 0, 14), LegSpec("Z", -10, 10))
    alpha, gamma = build_su2_generators(legs, CTX)
    astar, gstar = alpha.adjoint(), gamma.adjoint()
    cols = list(interior_indices(legs, 2))
    with mp.workdps(alpha.dps):
        q = CTX.q
        one = identity_operator(legs, alpha.dps)
        checks = [
            ("alpha gamma = q gamma alpha",
             alpha.compose(gamma).max_entry_difference(
                 gamma.compose(alpha).scale(q), cols)),
            ("alpha gamma* = q gamma* alpha",
             alpha.compose(gstar).max_entry_difference(
                 gstar.compose(alpha).scale(q), cols)),
            ("gamma normal",
             gstar.compose(gamma).max_entry_difference(
                 gamma.compose(gstar), cols)),
            ("isometry",
             astar.compose(alpha).add(gstar.compose(gamma))
             .max_entry_difference(one, cols)),
            ("coisometry",
             alpha.compose(astar).add(gstar.compose(gamma).scale(q * q))
             .max_entry_difference(one, cols)),
        ]
        for name, res in checks:
            print(f"  {name:32} {mpmath.nstr(res, 3)}")


def sphere_relations():
    P = LegSpec("N", 0, 20)
    Zl = LegSpec("Z", -26, 26)
    X, Y, Z, _ = build_podles_generators(P, Zl, CTX)
    cols = [(i,) for i in range(17)]
    with mp.workdps(X.dps):
        Q = CTX.q ** 2
        checks = [
            ("XZ = q^2 ZX",
             X.compose(Z).max_entry_difference(Z.compose(X).scale(Q), cols)),
            ("XY = Z - q^2 Z^2",
             X.compose(Y).max_entry_difference(
                 Z.sub(Z.compose(Z).scale(Q)), cols)),
            ("YX = q^-2 (Z - Z^2)",
             Y.compose(X).max_entry_difference(
                 Z.sub(Z.compose(Z)).scale(1 / Q), cols)),
            ("X* = Y", X.adjoint().max_entry_difference(Y, cols)),
        ]
        for name, res in checks:
            print(f"  {name:32} {mpmath.nstr(res, 3)}")


def coaction_row():
    for which in ("X", "midrow"):
        res = verify_coaction(which, CTX, point_hi=5, shift_half=5,
                              fiber_hi=5, interior_pad=2, middle_hi=60)
        print(f"  coaction row {which:8} {mpmath.nstr(res, 3)}")


if __name__ == "__main__":
    print("ladder generator relations (interior columns):")
    ladder_relations()
    print("sphere generator relations:")
    sphere_relations()
    print("coaction rows against the closed matrix:")
    coaction_row()
