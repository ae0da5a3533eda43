"""q-analogue of Erdelyi's product formula, in every checkable form.

The central identity equates an infinite lattice sum against a closed-form
product: summing q^(2p) q^(p*nu) (q^(2+2p);q^2)_inf times two
tilde-normalized Wall polynomials at x = q^(2p) times J_nu(z q^p; q^2)
over p >= 0 yields

    (-q)^(n+m) z^nu q^((m-n)^2) q^(2n*sigma + 2m*(nu-sigma))
        (z^2 q^(2(1+n+m)); q^2)_inf
        ptilde_n(z^2 q^(2(n+m)); q^(2(nu-sigma+m-n)); q^2)
        ptilde_m(z^2 q^(2(n+m)); q^(2(sigma+n-m)); q^2)

for Re nu > -1, |arg z| < pi, degrees n, m and arbitrary complex sigma.
It deforms Erdelyi's 1938 Hankel-transform evaluation of a product of two
Laguerre polynomials, which is recovered in the q -> 1 limit implemented
by classical_limit_table.

This module evaluates both sides, the Jackson-integral form with
check-normalized Wall polynomials, the scalar kernel identity that the
operator picture reduces to, the inverse-transform reading, the m = 0
power-series form, and the classical limit.  All comparisons are relative:
residuals are measured against tolerance * (1 + |reference|), which
protects both tiny and order-one magnitudes.

Truncation policy for the lattice sums: the summand eventually decays with
step ratio r = q^(2+2 Re nu) (the weight and Wall factors tend to constants
and the q-Bessel series head carries q^(p*nu) * (q^p)^nu).  For q near 1
the weight (q^(2+2p);q^2)_inf suppresses the *early* terms by hundreds of
orders, and the term magnitudes rise over thousands of indices before the
geometric decay takes over, so smallness alone must never stop the sum.
A term contributes to the stopping streak only when it is relatively small
AND not larger than its predecessor; after ten such terms the conservative
geometric bound |term| * r2/(1-r2) with r2 = (1+r)/2 must also confirm.
The term cap scales with the geometric estimate instead of being fixed,
since q -> 1 pushes the required length into the tens of thousands.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Tuple

import mpmath
from mpmath import mp

from .context import (
    BranchCut,
    ConfigError,
    DivergentParameters,
    HPComplex,
    QContext,
    SeriesValue,
    SharedCache,
    TruncationInsufficient,
    _to_mp,
    context_key,
)
from .kernels import kernel_plus
from .operators import verify_corepresentation
from .qfunctions import _family, _wall_tilde, laguerre, qhankel_transform
from .qseries import jackson_q_integral

__all__ = [
    "ErdelyiParams",
    "erdelyi_lhs",
    "erdelyi_rhs",
    "erdelyi_qintegral",
    "scalar_identity_residual",
    "lattice_consistency_residual",
    "inverse_hankel_check",
    "power_series_residuals",
    "classical_limit_table",
    "clear_caches",
]

_memo = SharedCache()

_CAP_FLOOR = 1000


@dataclass(frozen=True)
class ErdelyiParams:
    """Parameters of the product formula.

    n, m are the Wall degrees, nu the q-Bessel order (Re nu > -1), sigma
    the free complex split of nu between the two Wall parameters, z the
    transform variable (|arg z| < pi, principal branch).  l is the
    proof-level winding freedom of the kernel identity; the two closed
    forms do not depend on it and ignore it, the lattice cross-checks
    expose it explicitly.
    """

    n: int
    m: int
    nu: object
    sigma: object
    z: object
    l: int = 0


def clear_caches() -> None:
    _memo.clear()


def _coerced(params: ErdelyiParams, ctx: QContext):
    n, m = params.n, params.m
    if int(n) != n or n < 0 or int(m) != m or m < 0:
        raise ConfigError(f"degrees must be naturals, got n={n!r}, m={m!r}")
    if int(params.l) != params.l:
        raise ConfigError(f"l must be an integer, got {params.l!r}")
    dps = ctx.precision_digits + 10
    with mp.workdps(dps):
        nu = _to_mp(params.nu, dps)
        sigma = _to_mp(params.sigma, dps)
        z = _to_mp(params.z, dps)
        if not mpmath.re(nu) > -1 + ctx.tolerance:
            raise DivergentParameters(
                f"Re nu = {mpmath.nstr(mpmath.re(nu), 8)} <= -1: the lattice "
                f"sum has no decay")
        if z != 0 and mpmath.pi - abs(mpmath.arg(z)) <= ctx.tolerance:
            raise BranchCut(
                f"z = {mpmath.nstr(z, 8)} sits on the principal-branch cut")
        if z == 0 and nu != 0 and not mpmath.re(nu) > 0:
            raise BranchCut("z = 0 needs nu = 0 or Re nu > 0")
    return int(n), int(m), nu, sigma, z


def _akey(a_exponent, fam) -> str:
    with mp.workdps(fam.dps):
        return mpmath.nstr(mpmath.mpc(a_exponent), fam.dps - 5)


def _wall_lattice(deg: int, a_exponent, akey: str, p: int, ckey,
                  ctx: QContext):
    """Memoized tilde Wall value at x = Q^p with parameter Q^a_exponent."""
    fam = _family(ctx)
    return _memo.setdefault_compute(
        ("wall", ckey, deg, akey, p),
        lambda: _wall_tilde(deg, None, None, fam.Q, ctx.precision_digits,
                            x_exponent=p, a_exponent=a_exponent))


def _pinf_value(a, fam) -> HPComplex:
    """(a; Q)_inf by direct product; handles |a| > 1 and exact zeros."""
    with mp.workdps(fam.dps):
        total = mpmath.mpf(1)
        f = a
        floor = mpmath.mpf(10) ** (-(fam.dps + 5))
        while abs(f) > floor:
            total *= (1 - f)
            f *= fam.Q
        return total


def _jhead(nu, nukey, ckey, ctx: QContext) -> HPComplex:
    """(Q^(nu+1); Q)_inf / (Q; Q)_inf, the z-independent q-Bessel head."""
    fam = _family(ctx)
    return _memo.setdefault_compute(
        ("jhead", ckey, nukey),
        lambda: _pinf_value(fam.Q ** (nu + 1), fam) / fam.pochQ_inf(1))


def _jseries(w2, qnu1, fam) -> HPComplex:
    """sum_j (-1)^j Q^(j(j-1)/2) (Q w2)^j / ((Q;Q)_j (Q^(nu+1);Q)_j).

    qnu1 = Q^(nu+1); together with the head and the w^nu power this is
    J_nu(w; Q) for w2 = w^2.  Superexponential decay, no restart needed.
    """
    Q = fam.Q
    s = mpmath.mpf(1)
    t = mpmath.mpf(1)
    qw = Q * w2
    qj = mpmath.mpf(1)
    qn = qnu1
    floor = mpmath.mpf(10) ** (-(fam.dps + 5))
    while True:
        t = t * (-qj) * qw / ((1 - qj * Q) * (1 - qn))
        s += t
        if abs(t) < floor * (1 + abs(s)):
            return s
        qj *= Q
        qn *= Q


def _sum_cap(ratio, tol) -> int:
    """Term cap from the geometric decay estimate, floored."""
    est = mpmath.log(tol) / mpmath.log(ratio)
    return max(_CAP_FLOOR, int(mpmath.mpf("1.5") * est) + 40)


def _sum_with_bound(terms: Iterable, ratio, tol, settle: int, cap: int,
                    label: str):
    """Sum a decaying term stream; returns (total, tail_bound, used).

    Stops once ten consecutive terms are relatively small and decay at
    least as fast as the mid ratio r2 = (1+ratio)/2 that the geometric
    tail bound extrapolates with, so the bound only fires when the
    observed decay supports it.  The ratio guard blocks two impostors:
    the weight's switch-on plateau near q = 1, where magnitudes grow
    slowly for thousands of terms, and dips toward a sign change of the
    oscillating factor, where magnitudes shrink for a dozen steps and
    then rebound by orders of magnitude.
    """
    r2 = (1 + ratio) / 2
    gfac = r2 / (1 - r2)
    total = mpmath.mpf(0)
    streak = 0
    prev = None
    used = 0
    for term in terms:
        total += term
        used += 1
        mag = abs(term)
        if (prev is not None and mag <= prev * r2
                and mag < tol * (1 + abs(total))):
            streak += 1
        else:
            streak = 0
        prev = mag
        if streak >= 10 and used > settle:
            tail = mag * gfac
            if tail < tol * (1 + abs(total)):
                return total, tail, used
        if used > cap:
            break
    raise TruncationInsufficient(
        f"{label}: sum did not settle within {cap} terms")


def erdelyi_lhs(params: ErdelyiParams, ctx: QContext) -> SeriesValue:
    """Lattice-sum side of the product formula.

    The common factor z^nu * (Q^(nu+1);Q)_inf/(Q;Q)_inf is pulled out of
    the loop, so each term is Q^(p(1+nu)) (Q^(1+p);Q)_inf times the two
    Wall values at x = Q^p times the reduced q-Bessel series at
    w^2 = z^2 Q^p; every p-dependent power is updated multiplicatively.
    tail_bound is relative: below tolerance * (1 + |value|) on success.
    """
    n, m, nu, sigma, z = _coerced(params, ctx)
    fam = _family(ctx)
    ckey = context_key(ctx)
    with mp.workdps(fam.dps):
        Q = fam.Q
        if z == 0 and nu != 0:
            return SeriesValue(mpmath.mpf(0), mpmath.mpf(0), 0)
        znu = mpmath.mpf(1) if z == 0 else mpmath.exp(nu * mpmath.log(z))
        nukey = _akey(nu, fam)
        skey = _akey(sigma, fam)
        dkey = _akey(nu - sigma, fam)
        head = znu * _jhead(nu, nukey, ckey, ctx)
        qnu1 = Q ** (nu + 1)
        step = Q * (Q ** nu)  # Q^(1+nu): q^(2p) and q^(2p nu) per index
        ratio = fam.q ** (2 + 2 * mpmath.re(nu))
        tol = ctx.tolerance

        def terms():
            u = mpmath.mpf(1)
            w2 = z * z
            p = 0
            while True:
                g = fam.pochQ_inf(p + 1)
                wn = _wall_lattice(n, sigma, skey, p, ckey, ctx)
                wm = _wall_lattice(m, nu - sigma, dkey, p, ckey, ctx)
                yield u * g * wn * wm * _jseries(w2, qnu1, fam)
                u *= step
                w2 *= Q
                p += 1

        total, tail, used = _sum_with_bound(
            terms(), ratio, tol, n + m + 10, _sum_cap(ratio, tol),
            "product-formula lattice sum")
        return SeriesValue(head * total, abs(head) * tail, used)


def erdelyi_rhs(params: ErdelyiParams, ctx: QContext) -> HPComplex:
    """Closed-form side of the product formula; z^nu on the principal
    branch.  Symmetric under (n, sigma) <-> (m, nu - sigma) by inspection
    of the two Wall factors and the exponents."""
    n, m, nu, sigma, z = _coerced(params, ctx)
    fam = _family(ctx)
    with mp.workdps(fam.dps):
        Q = fam.Q
        q = fam.q
        if z == 0 and nu != 0:
            return mpmath.mpf(0)
        znu = mpmath.mpf(1) if z == 0 else mpmath.exp(nu * mpmath.log(z))
        zz = z * z
        x = zz * Q ** (n + m)
        wn = _wall_tilde(n, None, x, Q, ctx.precision_digits,
                         a_exponent=nu - sigma + m - n)
        wm = _wall_tilde(m, None, x, Q, ctx.precision_digits,
                         a_exponent=sigma + n - m)
        return ((-q) ** (n + m) * znu * q ** ((m - n) ** 2)
                * Q ** (n * sigma + m * (nu - sigma))
                * _pinf_value(zz * Q ** (1 + n + m), fam) * wn * wm)


def erdelyi_qintegral(params: ErdelyiParams, window: tuple,
                      ctx: QContext) -> Tuple[SeriesValue, HPComplex]:
    """Jackson-integral form with check-normalized Wall polynomials.

    LHS = 1/(1-q) times the Jackson integral over [0, inf) of
    x^nu E_{q^2}(-q^2 x^2) pcheck_n(x^2) pcheck_m(x^2) J_nu(zx; q^2) x.
    The weight vanishes identically at x = q^k for k < 0, so the integral
    is the lattice sum in disguise: substituting x = q^p multiplies
    erdelyi_lhs by the two check heads (Q^(sigma+n+1);Q)_inf and
    (Q^(nu-sigma+m+1);Q)_inf.  That reduction is asserted numerically
    before returning.  The RHS equals the same two heads times
    erdelyi_rhs, because check normalization swaps them between the Wall
    parameters (nu-sigma+m-n)+n+1 = nu-sigma+m+1 and (sigma+n-m)+m+1 =
    sigma+n+1.
    """
    n, m, nu, sigma, z = _coerced(params, ctx)
    fam = _family(ctx)
    ckey = context_key(ctx)
    with mp.workdps(fam.dps):
        Q = fam.Q
        q = fam.q
        hn = _pinf_value(Q ** (sigma + n + 1), fam)
        hm = _pinf_value(Q ** (nu - sigma + m + 1), fam)
        skey = _akey(sigma, fam)
        dkey = _akey(nu - sigma, fam)
        jh = _jhead(nu, _akey(nu, fam), ckey, ctx)
        qnu1 = Q ** (nu + 1)
        zz = z * z
        znu = mpmath.mpf(1) if z == 0 else mpmath.exp(nu * mpmath.log(z))
        logq = mpmath.log(q)
        eps_det = mpmath.mpf(10) ** (-(fam.dps - 8))

        def integrand(xv):
            # lattice samples are recognized and finished in exponent
            # space: the weight (q^2 x^2; q^2)_inf vanishes identically at
            # x = q^k for k <= -1, and a value-mode product blurs those
            # zeros into residues that the |1 - q^(-2j)| factors amplify
            k = None
            if not isinstance(xv, mpmath.mpc) and xv > 0:
                kk = int(mpmath.nint(mpmath.log(xv) / logq))
                if abs(xv - q ** kk) <= eps_det * xv:
                    k = kk
            if k is not None:
                if k + 1 <= 0:
                    return mpmath.mpf(0)
                weight = fam.pochQ_inf(k + 1)
                wn = _wall_lattice(n, sigma, skey, k, ckey, ctx)
                wm = _wall_lattice(m, nu - sigma, dkey, k, ckey, ctx)
                if z == 0:
                    jv = jh if nu == 0 else mpmath.mpf(0)
                    return (mpmath.exp(nu * k * logq) * weight
                            * hn * wn * hm * wm * jv * xv)
                # x^nu from the display and (z x)^nu from the kernel fold
                # into znu * q^(2 k nu)
                jv = (znu * mpmath.exp(2 * nu * k * logq) * jh
                      * _jseries(zz * Q ** k, qnu1, fam))
                return weight * hn * wn * hm * wm * jv * xv
            x2 = xv * xv
            wn = _wall_tilde(n, None, x2, Q, ctx.precision_digits,
                             a_exponent=sigma)
            wm = _wall_tilde(m, None, x2, Q, ctx.precision_digits,
                             a_exponent=nu - sigma)
            w = z * xv
            if w == 0:
                jv = mpmath.mpf(1) if nu == 0 else mpmath.mpf(0)
            else:
                jv = (mpmath.exp(nu * mpmath.log(w)) * jh
                      * _jseries(w * w, qnu1, fam))
            weight = _pinf_value(q * q * x2, fam)
            return (mpmath.exp(nu * mpmath.log(xv)) * weight
                    * hn * wn * hm * wm * jv) * xv

        sv = jackson_q_integral(integrand, window, ctx)
        one_minus_q = 1 - q
        lhs = SeriesValue(sv.value / one_minus_q,
                          sv.tail_bound / one_minus_q, sv.terms_used)
        if not lhs.tail_bound < ctx.tolerance * (1 + abs(lhs.value)):
            raise TruncationInsufficient(
                f"q-integral window {window} does not contain the "
                f"integrand support down to tolerance")
        red = hn * hm * erdelyi_lhs(params, ctx).value
        if abs(lhs.value - red) > 10 * ctx.tolerance * (1 + abs(red)):
            raise TruncationInsufficient(
                f"q-integral window {window} fails to reproduce the "
                f"lattice sum: gap {mpmath.nstr(abs(lhs.value - red), 8)}")
        rhs = hn * hm * erdelyi_rhs(params, ctx)
        return lhs, rhs


def scalar_identity_residual(a: int, c: int, e: int, y: int, w: int, l: int,
                             ctx: QContext) -> HPComplex:
    """Signed residual of the scalar kernel identity.

    LHS: sum over p >= 0 of P+(p,a,c) P+(y,p,e) P0(p-l-y-e, a-c+e-y+w, w).
    RHS: P+(c-l-e-w, c, e) P+(y, a, c-l-e-w) when c-l-e-w >= 0, else 0.
    Evaluated through the corepresentation residual with the two shift
    legs grounded (b = d = 0) and the probe solved from the selection
    rules; the probe's last output index then lands exactly on c-l-e-w.
    """
    a, c, e, y, w, l = (int(v) for v in (a, c, e, y, w, l))
    u = w + a - c + e - y
    v = c - l - y - e - w
    x = w - c + 2 * e + l
    return verify_corepresentation(l, (a, 0, c, 0, e), (u, v, w, x, y), ctx)


def lattice_consistency_residual(n: int, m: int, nu: int, sigma: int,
                                 z_exponent: int, l: int,
                                 ctx: QContext):
    """Cross-check the product formula against the scalar kernel identity.

    At z = q^(z') with integer nu and sigma the formula is the kernel
    identity read through the substitution (c, a-c, y, e-y, -l-y-e-w) ->
    (n, sigma, m, nu-sigma, z'); the two sides differ by one constant.
    The constant is taken from the closed forms (RHS_kernel / RHS_formula),
    and the residual is |LHS_kernel - const * LHS_formula| relative to
    LHS_kernel.  When both closed forms vanish (z' <= -1-n-m) the
    residual is the larger of the two lattice sums, which must both be
    zero.  The two code paths share no series code, so agreement checks
    the kernel conventions against the formula conventions.
    """
    for name, val in (("n", n), ("m", m), ("nu", nu), ("sigma", sigma),
                      ("z_exponent", z_exponent), ("l", l)):
        if int(val) != val:
            raise ConfigError(f"{name} must be an integer for the lattice "
                              f"cross-check, got {val!r}")
    n, m, nu, sigma, z_exponent, l = (
        int(v) for v in (n, m, nu, sigma, z_exponent, l))
    a = n + sigma
    e = m + nu - sigma
    if n < 0 or m < 0 or a < 0 or e < 0:
        raise ConfigError(
            f"need n, m, n+sigma, m+nu-sigma >= 0; got n={n}, m={m}, "
            f"n+sigma={a}, m+nu-sigma={e}")
    w = -l - m - e - z_exponent
    mu = n + m + z_exponent
    fam = _family(ctx)
    with mp.workdps(fam.dps):
        resid = scalar_identity_residual(a, n, e, m, w, l, ctx)
        if mu >= 0:
            rhs_k = kernel_plus(mu, n, e, ctx) * kernel_plus(m, a, mu, ctx)
        else:
            rhs_k = mpmath.mpf(0)
        lhs_k = resid + rhs_k
        params = ErdelyiParams(n, m, nu, sigma, ctx.q ** z_exponent, l)
        lhs_f = erdelyi_lhs(params, ctx).value
        rhs_f = erdelyi_rhs(params, ctx)
        noise = mpmath.mpf(10) ** (-(ctx.precision_digits + 5))
        if mu >= 0 and abs(rhs_f) > noise:
            const = rhs_k / rhs_f
            return abs(lhs_k - const * lhs_f) / (1 + abs(lhs_k))
        return max(abs(lhs_k), abs(lhs_f))


def _rhs_lattice(n: int, m: int, nu, sigma, r: int, ctx: QContext):
    """Closed form at z = q^r through exponent-passing ladders.

    The infinite factor is (Q^(r+1+n+m);Q)_inf, identically zero for
    r <= -1-n-m, which is what truncates the inverse transform's input."""
    fam = _family(ctx)
    ckey = context_key(ctx)
    with mp.workdps(fam.dps):
        Q = fam.Q
        q = fam.q
        headp = fam.pochQ_inf(r + 1 + n + m)
        if headp == 0:
            return mpmath.mpf(0)
        xexp = r + n + m
        k1 = _akey(nu - sigma + m - n, fam)
        k2 = _akey(sigma + n - m, fam)
        wn = _wall_lattice(n, nu - sigma + m - n, k1, xexp, ckey, ctx)
        wm = _wall_lattice(m, sigma + n - m, k2, xexp, ckey, ctx)
        znu = mpmath.exp(nu * r * mpmath.log(q))
        return ((-q) ** (n + m) * znu * q ** ((m - n) ** 2)
                * Q ** (n * sigma + m * (nu - sigma)) * headp * wn * wm)


def inverse_hankel_check(n: int, m: int, nu, sigma, window: tuple,
                         ctx: QContext):
    """Inverse-transform reading: the closed form is the lattice Hankel
    transform of the summand profile, so transforming closed-form samples
    g(r) at z = q^r back must reproduce the profile

        f(t) = q^(t nu) (Q^(1+t);Q)_inf ptilde_n(Q^t) ptilde_m(Q^t),

    including f(t) = 0 exactly for t < 0.  Returns the max relative
    residual over the interior of the window (two samples trimmed per
    edge); the transform itself raises TruncationInsufficient when the
    window cuts off undecayed samples.
    """
    if int(n) != n or n < 0 or int(m) != m or m < 0:
        raise ConfigError(f"degrees must be naturals, got n={n!r}, m={m!r}")
    n, m = int(n), int(m)
    fam = _family(ctx)
    ckey = context_key(ctx)
    with mp.workdps(fam.dps):
        nu = _to_mp(nu, fam.dps)
        sigma = _to_mp(sigma, fam.dps)
        if not isinstance(nu, mpmath.mpf):
            raise ConfigError("the inverse check needs real nu")
        if not nu > -1:
            raise DivergentParameters(
                f"nu = {mpmath.nstr(nu, 8)} <= -1")
        rmin, rmax = int(window[0]), int(window[1])
        if rmin > rmax:
            raise ConfigError(f"window {window} has rmin > rmax")
        g = {}
        for r in range(rmin, rmax + 1):
            if r + 1 + n + m <= 0:
                g[r] = mpmath.mpf(0)
            else:
                g[r] = _rhs_lattice(n, m, nu, sigma, r, ctx)
        fhat = qhankel_transform(g, nu, "inverse", (rmin, rmax), ctx)
        q = fam.q
        skey = _akey(sigma, fam)
        dkey = _akey(nu - sigma, fam)
        worst = mpmath.mpf(0)
        for t in range(rmin + 2, rmax - 1):
            headp = fam.pochQ_inf(t + 1)
            if headp == 0:
                ft = mpmath.mpf(0)
            else:
                ft = (q ** (t * nu) * headp
                      * _wall_lattice(n, sigma, skey, t, ckey, ctx)
                      * _wall_lattice(m, nu - sigma, dkey, t, ckey, ctx))
            res = abs(fhat[t] - ft) / (1 + abs(ft))
            worst = max(worst, res)
        return worst


def power_series_residuals(n: int, nu, sigma, ctx: QContext,
                           max_power: int = 10) -> List:
    """Coefficient-wise m = 0 form: expand both sides in powers of z.

    With the common z^nu removed, both sides are power series in z^2.
    Lattice side: the coefficient of z^(2j) is the q-Bessel head times
    (-1)^j Q^(j(j+1)/2) / ((Q;Q)_j (Q^(nu+1);Q)_j) times
    S_j = sum_p Q^(p(1+nu+j)) (Q^(1+p);Q)_inf ptilde_n(Q^p), a geometric-
    rate lattice sum.  Closed side: the Cauchy product of the expansions
    of (z^2 Q^(1+n);Q)_inf and ptilde_n(z^2 Q^n; Q^(nu-sigma-n); Q) under
    the prefactor (-q)^n q^(n^2) Q^(n sigma).  Their equality encodes the
    q-Chu-Vandermonde evaluation.  Returns the relative gap per power
    z^(2j), j = 0 .. max_power // 2.
    """
    if int(n) != n or n < 0:
        raise ConfigError(f"degree must be a natural, got {n!r}")
    n = int(n)
    fam = _family(ctx)
    ckey = context_key(ctx)
    with mp.workdps(fam.dps):
        Q = fam.Q
        q = fam.q
        nu = _to_mp(nu, fam.dps)
        sigma = _to_mp(sigma, fam.dps)
        if not mpmath.re(nu) > -1 + ctx.tolerance:
            raise DivergentParameters(
                f"Re nu = {mpmath.nstr(mpmath.re(nu), 8)} <= -1")
        nukey = _akey(nu, fam)
        skey = _akey(sigma, fam)
        jh = _jhead(nu, nukey, ckey, ctx)
        tol = ctx.tolerance
        jtop = max_power // 2
        # lattice-side coefficients
        lat = []
        qfin = mpmath.mpf(1)      # (Q;Q)_j
        qnu = mpmath.mpf(1)       # (Q^(nu+1);Q)_j
        sgn_pow = mpmath.mpf(1)   # (-1)^j Q^(j(j+1)/2)
        for j in range(jtop + 1):
            step = Q ** (1 + nu + j)
            ratio = abs(step)

            def terms():
                u = mpmath.mpf(1)
                p = 0
                while True:
                    yield (u * fam.pochQ_inf(p + 1)
                           * _wall_lattice(n, sigma, skey, p, ckey, ctx))
                    u *= step
                    p += 1

            s_j, _, _ = _sum_with_bound(
                terms(), ratio, tol, n + 10, _sum_cap(ratio, tol),
                f"power-series lattice sum at z^{2 * j}")
            lat.append(jh * sgn_pow / (qfin * qnu) * s_j)
            qfin *= (1 - Q ** (j + 1))
            qnu *= (1 - Q ** (nu + 1 + j))
            sgn_pow *= -Q ** (j + 1)
        # closed-side coefficients by convolution
        pref = (-q) ** n * q ** (n * n) * Q ** (n * sigma)
        A = Q ** (nu - sigma - n)
        wallc = []
        for k in range(n + 1):
            num = mpmath.mpf(1)
            f = Q ** (-n)
            for _ in range(k):
                num *= (1 - f)
                f *= Q
            tailf = mpmath.mpf(1)
            g = A * Q ** (k + 1)
            for _ in range(n - k):
                tailf *= (1 - g)
                g *= Q
            den = mpmath.mpf(1)
            for i in range(1, k + 1):
                den *= (1 - Q ** i)
            wallc.append(num * tailf * Q ** ((1 + n) * k) / den)
        out = []
        for j in range(jtop + 1):
            cr = mpmath.mpf(0)
            for k in range(0, min(j, n) + 1):
                i = j - k
                den = mpmath.mpf(1)
                for v in range(1, i + 1):
                    den *= (1 - Q ** v)
                pochc = ((-1) ** i * Q ** (i * (i - 1) // 2)
                         * Q ** ((1 + n) * i) / den)
                cr += wallc[k] * pochc
            cr *= pref
            out.append(abs(lat[j] - cr) / (1 + abs(cr)))
        return out


def classical_limit_table(n: int, m: int, nu, sigma, y, q_values,
                          ctx: QContext) -> List[Tuple]:
    """Degeneration to the classical Hankel-transform formula as q -> 1.

    Substituting z = c*y with c = sqrt(2(1-q)) turns the closed form into
    the classical right-hand side: the infinite product becomes exp(-y^2),
    each tilde Wall polynomial becomes (1-q^2)^deg deg! L_deg(y^2), and the
    q-Gamma head of the q-Bessel factor supplies c^nu.  The check
    normalization heads of the Jackson-integral form cancel between its
    two sides, leaving the scale

        c^(-nu) (1-q^2)^(-(n+m)) / (2 n! m!),

    so lhs_scaled = scale * erdelyi_lhs(z = c*y) and the classical value is

        ((-1)^(n+m)/2) y^nu exp(-y^2) L_m^(sigma+n-m)(y^2)
                                       L_n^(nu-sigma+m-n)(y^2).

    Returns [(q, lhs_scaled, rhs_classical, gap)] with the relative gap;
    the gap is expected to shrink as q -> 1 (no rate asserted).
    """
    if int(n) != n or n < 0 or int(m) != m or m < 0:
        raise ConfigError(f"degrees must be naturals, got n={n!r}, m={m!r}")
    n, m = int(n), int(m)
    dps = ctx.precision_digits + 10
    with mp.workdps(dps):
        nu = _to_mp(nu, dps)
        sigma = _to_mp(sigma, dps)
        y = _to_mp(y, dps)
        if not (isinstance(nu, mpmath.mpf) and isinstance(sigma, mpmath.mpf)
                and isinstance(y, mpmath.mpf)):
            raise ConfigError("the classical limit is checked on real "
                              "nu, sigma and y")
        if not y > 0:
            raise ConfigError(f"need y > 0, got {mpmath.nstr(y, 8)}")
        y2 = y * y
        rhs_cl = (mpmath.mpf(-1) ** (n + m) / 2 * y ** nu * mpmath.exp(-y2)
                  * laguerre(m, sigma + n - m, y2, ctx)
                  * laguerre(n, nu - sigma + m - n, y2, ctx))
        rows = []
        for qv in q_values:
            qm = _to_mp(qv, dps)
            if not (isinstance(qm, mpmath.mpf) and 0 < qm < 1):
                raise ConfigError(f"q values must lie in (0, 1), got {qv!r}")
            cq = ctx.with_q(qm)
            c = mpmath.sqrt(2 * (1 - qm))
            lhs = erdelyi_lhs(ErdelyiParams(n, m, nu, sigma, c * y), cq)
            scale = (c ** (-nu) * (1 - qm * qm) ** (-(n + m))
                     / (2 * mpmath.factorial(n) * mpmath.factorial(m)))
            lhs_scaled = scale * lhs.value
            gap = abs(lhs_scaled - rhs_cl) / (1 + abs(rhs_cl))
            rows.append((qm, lhs_scaled, rhs_cl, gap))
        return rows
