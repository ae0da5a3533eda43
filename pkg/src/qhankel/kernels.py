"""Lattice kernels built from Wall polynomials and q-Bessel functions.

Two families of real coefficients drive every operator in this package.

``kernel_plus(p, v, w)`` is defined for nonnegative integers by

    P+(p,v,w) = (-q)^(p-w) q^((p-w)(v-w))
                * sqrt( (Q^(p+1);Q)oo (Q^(w+1);Q)oo / (Q^(v+1);Q)oo )
                * [ sum_k (Q^-w;Q)_k (Q^(v-w+k+1);Q)oo (Q^(p+1))^k / (Q;Q)_k ]
                / (Q;Q)oo,           Q = q^2,

and ``kernel_zero(p, v, w)`` for arbitrary integers by

    P0(p,v,w) = (-q)^(p-w) J_(v-w)(q^(p-w); q^2),

with J the Hahn-Exton q-Bessel function.  (-q)^(-p) P+(p,v,w) is fully
symmetric in (p,v,w), and P0 is invariant under a common shift of all
three indices.  Both families form orthonormal systems in two dual ways,
and P+ contracts to P0 when all indices are translated to infinity
together.

Evaluation strategy.  The defining sum is a Wall polynomial in disguise:
splitting (Q^(v-w+k+1);Q)oo = (Q^(v-w+k+1);Q)_(w-k) (Q^(v+1);Q)oo turns it
into the entire form of the degree-w Wall polynomial at x = Q^p with
parameter a = Q^(v-w).  Evaluated at sorted indices (degree = smallest,
argument exponent = largest) every term of that series is bounded by the
first, so the sum never cancels catastrophically; the symmetry of
(-q)^(-p) P+ then transports the value to the requested orientation.
Evaluating the raw sum in an unsorted orientation instead loses
~ w(w+1) log10(1/q) digits and is never done here.
"""

from __future__ import annotations

from typing import Optional, Tuple

import mpmath
from mpmath import mp

from .context import (
    ConfigError,
    HPComplex,
    QContext,
    SharedCache,
    TruncationInsufficient,
    context_key,
)
from .qfunctions import _family, _wall_tilde, qbessel_lattice

__all__ = [
    "kernel_plus",
    "kernel_zero",
    "kernel_orthogonality_residual",
    "kernel_contraction_residual",
    "clear_caches",
]


_kernel_memo = SharedCache()


def clear_caches() -> None:
    _kernel_memo.clear()


def _memo(ctx: QContext) -> dict:
    return _kernel_memo.setdefault_compute(("kernels",) + context_key(ctx), dict)


def kernel_plus(p: int, v: int, w: int, ctx: QContext) -> HPComplex:
    """P+(p, v, w) for nonnegative integer indices."""
    p, v, w = int(p), int(v), int(w)
    if min(p, v, w) < 0:
        raise ConfigError("kernel_plus indices must be nonnegative")
    return _kplus(p, v, w, ctx)


def _kplus(p: int, v: int, w: int, ctx: QContext) -> HPComplex:
    memo = _memo(ctx)
    key = ("plus", p, v, w)
    hit = memo.get(key)
    if hit is not None:
        return hit
    fam = _family(ctx)
    hi, mid, lo = sorted((p, v, w), reverse=True)
    with mp.workdps(fam.dps):
        # degree lo, parameter exponent mid-lo >= 0, argument exponent hi:
        # the stable orientation described in the module docstring
        tilde = _wall_tilde(lo, None, None, fam.Q, ctx.precision_digits,
                            x_exponent=hi, a_exponent=mid - lo)
        under = (fam.pochQ_inf(hi + 1) * fam.pochQ_inf(mid + 1)
                 * fam.pochQ_inf(lo + 1))
        if not under > 0:
            raise ConfigError(
                "kernel prefactor lost positivity; the Euler products "
                f"degenerated at q={mpmath.nstr(fam.q, 8)}")
        root = mpmath.sqrt(under)
        val = ((-fam.q) ** (p - lo) * fam.q ** ((hi - lo) * (mid - lo))
               * root * tilde / fam.pochQ_all)
        val = +val
    memo[key] = val
    return val


def _kplus_safe(p: int, v: int, w: int, ctx: QContext) -> HPComplex:
    # operator sums overshoot their index ranges; outside N^3 the
    # coefficient multiplies a vanishing basis vector
    if min(p, v, w) < 0:
        return mp.zero
    return _kplus(p, v, w, ctx)


def kernel_zero(p: int, v: int, w: int, ctx: QContext) -> HPComplex:
    """P0(p, v, w) for arbitrary integer indices."""
    p, v, w = int(p), int(v), int(w)
    fam = _family(ctx)
    jval = qbessel_lattice(v - w, p - w, ctx)
    with mp.workdps(fam.dps):
        val = +((-fam.q) ** (p - w) * jval)
    return val


def _delta(a, b) -> int:
    return 1 if a == b else 0


def kernel_orthogonality_residual(kind: str, mode: str,
                                  indices: Tuple[int, ...],
                                  truncation: Optional[int],
                                  ctx: QContext) -> HPComplex:
    """Residual of one orthonormality relation, sum minus its Kronecker target.

    kind "plus" or "zero" selects the kernel family; mode selects the
    summation variable:

    * "first":  indices = (v, w, v2, w2) with v - w == v2 - w2, summing
      sum_p P(p,v,w) P(p,v2,w2) = delta_{(v,w),(v2,w2)}; p runs over N
      for "plus" and over Z for "zero".
    * "second": indices = (p, p2, t), summing over the lattice diagonal
      sum_w P(p,w+t,w) P(p2,w+t,w) = delta_{p,p2}; w over N (shifted so
      w+t stays nonnegative) for "plus" and over Z for "zero".
    """
    if kind not in ("plus", "zero"):
        raise ConfigError(f"unknown kernel kind {kind!r}")
    if mode not in ("first", "second"):
        raise ConfigError(f"unknown orthogonality mode {mode!r}")
    indices = tuple(int(i) for i in indices)
    if mode == "first":
        if len(indices) != 4:
            raise ConfigError("first mode needs indices (v, w, v2, w2)")
        v, w, v2, w2 = indices
        if v - w != v2 - w2:
            raise ConfigError("first-mode orthogonality requires v - w == v2 - w2")
        target = _delta((v, w), (v2, w2))
    else:
        if len(indices) != 3:
            raise ConfigError("second mode needs indices (p, p2, t)")
        p, p2, t = indices
        target = _delta(p, p2)
    # t in second mode is a difference, not an index; it may be negative
    if kind == "plus":
        checked = indices[:4] if mode == "first" else indices[:2]
        if min(checked) < 0:
            raise ConfigError("kernel_plus indices must be nonnegative")

    fam = _family(ctx)
    cap = truncation if truncation is not None else 2000

    if kind == "plus":
        if mode == "first":
            def term(n):  # n = p
                return _kplus(n, v, w, ctx) * _kplus(n, v2, w2, ctx)
            start = 0
            settle = max(v, w, v2, w2) + 4
        else:
            base = max(0, -t)

            def term(n):  # n = base + offset, w-lattice
                return (_kplus(p, n + t, n, ctx) * _kplus(p2, n + t, n, ctx))
            start = base
            settle = base + max(p, p2) + 4
        total = mp.zero
        with mp.workdps(fam.dps):
            small = 0
            n = start
            while n <= start + cap:
                tval = term(n)
                total += tval
                if n > settle and abs(tval) < ctx.eps * (1 + abs(total)):
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
                n += 1
            else:
                raise TruncationInsufficient(
                    f"kernel orthogonality sum did not settle within {cap} terms")
            return +(total - target)

    # kind == "zero": two-sided sums over Z
    if mode == "first":
        v, w, v2, w2 = indices

        def term(n):
            return kernel_zero(n, v, w, ctx) * kernel_zero(n, v2, w2, ctx)
        center = min(v, w, v2, w2)
    else:
        def term(n):
            return kernel_zero(p, n + t, n, ctx) * kernel_zero(p2, n + t, n, ctx)
        center = min(p, p2) - abs(t)
    with mp.workdps(fam.dps):
        total = term(center)
        for direction in (1, -1):
            small = 0
            steps = 0
            n = center + direction
            while True:
                tval = term(n)
                total += tval
                steps += 1
                if steps > 4 and abs(tval) < ctx.eps * (1 + abs(total)):
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
                if steps > cap:
                    raise TruncationInsufficient(
                        f"kernel orthogonality sum did not settle within {cap} terms")
                n += direction
        return +(total - target)


def kernel_contraction_residual(p: int, v: int, w: int, N: int,
                                ctx: QContext) -> HPComplex:
    """P+(p+N, v+N, w+N) - P0(p, v, w), the flat-limit defect at shift N."""
    p, v, w, N = int(p), int(v), int(w), int(N)
    if min(p + N, v + N, w + N) < 0:
        raise ConfigError("shifted indices must be nonnegative; increase N")
    fam = _family(ctx)
    a = _kplus(p + N, v + N, w + N, ctx)
    b = kernel_zero(p, v, w, ctx)
    with mp.workdps(fam.dps):
        return +(a - b)
