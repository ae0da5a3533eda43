"""Wall polynomials, the 1phi1 q-Bessel function, and the q-Hankel transform.

Wall polynomials on the q-lattice, three normalizations:

    plain  p_n(x; a; q)  = 2phi1(q^-n, 0; aq; q, qx),     p_n(0) = 1
    tilde  (aq;q)_n p_n, entire in the parameter a:
               sum_k (q^-n;q)_k (a q^(k+1);q)_(n-k) (qx)^k / (q;q)_k
    check  (aq;q)_inf p_n = (a q^(n+1);q)_inf * tilde

The q-Bessel function used everywhere downstream lives in base q^2:

    J_nu(x; q^2) = x^nu ((q^2)^(nu+1); q^2)_inf / (q^2;q^2)_inf
                   * 1phi1(0; (q^2)^(nu+1); q^2, q^2 x^2)

and satisfies the self-duality J_nu(q^alpha; q^2) = J_alpha(q^nu; q^2) on
real exponents.  On the lattice x = q^s the series is evaluated after
swapping order and argument exponent so that order = min, exponent = max;
in that orientation the terms decrease monotonically and no precision is
lost (the naive orientation can lose thousands of digits).

The q-Hankel transform pairs samples on the lattice q^k:

    g(q^n) = sum_k q^(2k) J_nu(q^(k+n); q^2) f(q^k)

and is its own inverse on square-summable lattice functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Union

import mpmath
from mpmath import mp

from .context import (
    BranchCut,
    ConfigError,
    HPComplex,
    NearPoleDenominator,
    QContext,
    SharedCache,
    TruncationInsufficient,
    _to_mp,
    context_key,
)
from .qseries import PhiParams, basic_hypergeometric, qpochhammer

__all__ = [
    "WallParams",
    "QBesselParams",
    "wall_polynomial",
    "wall_via_2phi1",
    "wall_via_3phi2",
    "wall_orthogonality_sum",
    "qbessel",
    "qbessel_lattice",
    "qhankel_transform",
    "laguerre",
    "bessel_j",
    "clear_caches",
]

_families = SharedCache()


class _Family:
    """Per-(q, precision) ladder cache for base Q = q^2 quantities."""

    def __init__(self, ctx: QContext):
        self.dps = ctx.precision_digits + 15
        with mp.workdps(self.dps):
            self.q = +ctx.q
            self.Q = self.q * self.q
            prod = mpmath.mpf(1)
            f = self.Q
            thresh = mpmath.mpf(10) ** (-(self.dps + 5))
            while abs(f) >= thresh:
                prod *= (1 - f)
                f *= self.Q
            self.pochQ_all = prod          # (Q;Q)_inf
        self.pochQ_up = [None, prod]       # index j -> (Q^j;Q)_inf, j >= 1
        self.pochQ_fin = [mpmath.mpf(1)]   # (Q;Q)_k
        self.ladders = {}                  # t_key -> [(Q^(t+1+j);Q)_inf]
        self.jlat = {}                     # (t_key, s) -> J_t(q^s;Q)

    def pochQ_inf(self, j: int) -> mpmath.mpf:
        """(Q^j;Q)_inf for integer j; identically zero for j <= 0."""
        if j <= 0:
            return mpmath.mpf(0)
        with mp.workdps(self.dps):
            while len(self.pochQ_up) <= j:
                i = len(self.pochQ_up) - 1
                self.pochQ_up.append(self.pochQ_up[i] / (1 - self.Q ** i))
        return self.pochQ_up[j]

    def pochQ_k(self, k: int) -> mpmath.mpf:
        with mp.workdps(self.dps):
            while len(self.pochQ_fin) <= k:
                i = len(self.pochQ_fin)
                self.pochQ_fin.append(self.pochQ_fin[i - 1] * (1 - self.Q ** i))
        return self.pochQ_fin[k]

    def shifted_inf(self, t, j: int):
        """(Q^(t+1+j);Q)_inf for possibly non-integer t, ladder-cached."""
        if isinstance(t, (int,)) or (isinstance(t, mpmath.mpf) and t == int(t)):
            return self.pochQ_inf(int(t) + 1 + j)
        key = mpmath.nstr(mpmath.mpf(t), self.dps - 5)
        with mp.workdps(self.dps):
            lad = self.ladders.get(key)
            if lad is None:
                base = mpmath.exp((t + 1) * mpmath.log(self.Q))
                prod = mpmath.mpf(1)
                f = base
                thresh = mpmath.mpf(10) ** (-(self.dps + 5))
                while abs(f) >= thresh:
                    prod *= (1 - f)
                    f *= self.Q
                lad = [prod]
                self.ladders[key] = lad
            while len(lad) <= j:
                i = len(lad) - 1
                step = mpmath.exp((t + 1 + i) * mpmath.log(self.Q))
                lad.append(lad[i] / (1 - step))
        return lad[j]


def _family(ctx: QContext) -> _Family:
    key = ("family",) + context_key(ctx)
    return _families.setdefault_compute(key, lambda: _Family(ctx))


def clear_caches() -> None:
    """Drop every ladder/kernel memo (they regrow on demand)."""
    _families.clear()


# ---------------------------------------------------------------------------
# Wall polynomials


@dataclass(frozen=True)
class WallParams:
    """Degree n, lattice parameter a, evaluation point x, normalization."""

    n: int
    a: object
    x: object
    normalization: str = "plain"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ConfigError("degree n must be a natural number")
        if self.normalization not in ("plain", "tilde", "check"):
            raise ConfigError(
                f"unknown normalization {self.normalization!r}; "
                "expected plain, tilde, or check")


def _wall_tilde(n: int, a, x, q, target_dps: int,
                x_exponent: Optional[int] = None,
                a_exponent: Optional[int] = None) -> HPComplex:
    """Entire-form series, restarted at higher precision under cancellation.

    The series coefficients alternate with magnitudes up to ~q^(-n(n+1)/2),
    so the value is conditioned that badly in x.  Lattice callers pass
    x_exponent (and a_exponent) so each restart recomputes x = q^k from the
    stored q at the restart's own precision; a caller-supplied value is
    treated as exact.
    """
    extra = 10
    for _ in range(8):
        dps = target_dps + extra
        with mp.workdps(dps):
            if x_exponent is not None:
                x = q ** x_exponent
            if a_exponent is not None:
                a = q ** a_exponent
            # prefix ladder for the tail factors: (a q^(k+1);q)_(n-k) =
            # prefix[n]/prefix[k] with prefix[j] = (aq;q)_j, valid only when
            # no prefix vanishes (a at or near q^-j falls back to products)
            prefix = [mpmath.mpf(1)] * (n + 1)
            f = a * q
            ok = True
            floor_pref = mpmath.mpf(10) ** (-(dps // 2))
            for j in range(1, n + 1):
                prefix[j] = prefix[j - 1] * (1 - f)
                if abs(prefix[j]) < floor_pref:
                    ok = False
                    break
                f *= q
            qinv_run = mpmath.mpf(1)   # (q^-n;q)_k running
            qfin_run = mpmath.mpf(1)   # (q;q)_k running
            qx_pow = mpmath.mpf(1)     # (qx)^k
            qx = q * x
            qn = q ** (-n)
            total = mpmath.mpf(0)
            max_term = mpmath.mpf(0)
            stop_floor = mpmath.mpf(10) ** (-(dps + 5))
            small = 0
            prev_at = mpmath.mpf(0)
            for k in range(n + 1):
                if ok:
                    tailp = prefix[n] / prefix[k]
                else:
                    tailp = mpmath.mpf(1)
                    f = a * q ** (k + 1)
                    for _i in range(n - k):
                        tailp *= (1 - f)
                        f *= q
                term = qinv_run * tailp * qx_pow / qfin_run
                total += term
                at = abs(term)
                if at > max_term:
                    max_term = at
                # terms decay monotonically once (qx)^k dominates; cutting
                # inside a decreasing run makes lattice evaluations cost
                # O(effective support) instead of O(degree)
                if k > 0 and at < prev_at and at < stop_floor * (1 + max_term):
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
                prev_at = at
                qinv_run *= (1 - qn * q ** k)
                qfin_run *= (1 - q ** (k + 1))
                qx_pow *= qx
            floor = mpmath.mpf(10) ** (-dps)
            cancel = max_term / max(abs(total), floor)
            if floor * cancel <= mpmath.mpf(10) ** (-(target_dps + 3)):
                return total
            extra += int(mpmath.ceil(mpmath.log10(cancel))) + 5
    raise TruncationInsufficient(
        "Wall series cancellation not controlled by precision restarts")


def wall_polynomial(params: WallParams, ctx: QContext) -> HPComplex:
    """Evaluate a Wall polynomial in the requested normalization.

    All three normalizations route through the entire tilde series, which
    has no poles in a; plain then divides by (aq;q)_n and raises
    NearPoleDenominator when a is within tolerance of q^-1 ... q^-n.
    """
    with ctx.working():
        a = _to_mp(params.a, ctx.precision_digits + 10)
        x = _to_mp(params.x, ctx.precision_digits + 10)
        q = ctx.q
        tilde = _wall_tilde(params.n, a, x, q, ctx.precision_digits)
        if params.normalization == "tilde":
            return tilde
        if params.normalization == "check":
            head = qpochhammer(a * q ** (params.n + 1), "inf", ctx).value
            return tilde * head
        j = ctx.negative_q_exponent(a, limit=max(200, params.n))
        if j is not None and 1 <= j <= params.n:
            raise NearPoleDenominator(
                f"plain normalization has a pole at a = q^-{j}")
        den = mpmath.mpf(1)
        f = a * q
        for _ in range(params.n):
            den *= (1 - f)
            f *= q
        # a small product of many factors (q near 1) is fine: tilde carries
        # full relative precision, only a-near-q^(-j) is an actual pole
        if den == 0:
            raise NearPoleDenominator("(aq;q)_n vanished exactly")
        return tilde / den


def wall_via_2phi1(n: int, a, x, ctx: QContext) -> HPComplex:
    """Plain Wall polynomial through 2phi1(q^-n, 0; aq; q, qx)."""
    with ctx.working():
        av = _to_mp(a, ctx.precision_digits + 10)
        xv = _to_mp(x, ctx.precision_digits + 10)
        sv = basic_hypergeometric(
            PhiParams([ctx.q ** (-n), 0], [av * ctx.q], ctx.q * xv), ctx)
        return sv.value


def wall_via_3phi2(n: int, a, x, ctx: QContext) -> HPComplex:
    """Plain Wall polynomial through the reversed-series 3phi2 form.

    (-1)^n q^(n(n+1)/2) (ax)^n / (aq;q)_n
        * 3phi2(q^-n, q^-n/a, 1/x; 0, 0; q, q)
    Requires a != 0 and x != 0.
    """
    with ctx.working():
        av = _to_mp(a, ctx.precision_digits + 10)
        xv = _to_mp(x, ctx.precision_digits + 10)
        if av == 0 or xv == 0:
            raise ConfigError("reversed form needs a != 0 and x != 0")
        q = ctx.q
        sv = basic_hypergeometric(
            PhiParams([q ** (-n), q ** (-n) / av, 1 / xv], [0, 0], q), ctx)
        den = mpmath.mpf(1)
        f = av * q
        for _ in range(n):
            den *= (1 - f)
            f *= q
        sign = -1 if n % 2 else 1
        return sign * q ** (n * (n + 1) // 2) * (av * xv) ** n / den * sv.value


def wall_orthogonality_sum(n: int, m: int, a, dual: bool,
                           truncation: Optional[int], ctx: QContext) -> HPComplex:
    """Residual (sum minus closed form) of a Wall orthogonality relation.

    dual=False:  sum_k (aq)^k/(q;q)_k p_n(q^k) p_m(q^k)
                   - delta_nm (aq)^n (q;q)_n / ((aq;q)_n (aq;q)_inf)
    dual=True:   indices (n, m) name lattice points (k, l):
                 sum_j (aq;q)_j/((aq)^j (q;q)_j) p_j(q^k) p_j(q^l)
                   - delta_kl (aq)^-k (q;q)_k / (aq;q)_inf

    Requires 0 < a < 1/q.  truncation caps the summation index; None picks
    it adaptively.  Raises TruncationInsufficient when the cap cannot
    certify the tail below tolerance.
    """
    with ctx.working():
        av = _to_mp(a, ctx.precision_digits + 10)
        if not (isinstance(av, mpmath.mpf) and 0 < av < 1 / ctx.q):
            raise ConfigError("orthogonality requires real 0 < a < 1/q")
        if not dual:
            return _wall_primal(n, m, av, truncation, ctx)
        return _wall_dual(n, m, av, truncation, ctx)


def _plain_wall_at(j: int, a, k_exponent: int, ctx: QContext) -> HPComplex:
    """Plain Wall value at the lattice point q^k, exponent passed through."""
    tilde = _wall_tilde(j, a, None, ctx.q, ctx.precision_digits,
                        x_exponent=k_exponent)
    den = mpmath.mpf(1)
    f = a * ctx.q
    for _ in range(j):
        den *= (1 - f)
        f *= ctx.q
    return tilde / den


def _wall_primal(n, m, a, truncation, ctx) -> HPComplex:
    q = ctx.q
    aq = a * q
    cap = truncation if truncation is not None else 100000
    total = mpmath.mpf(0)
    weight = mpmath.mpf(1)   # (aq)^k / (q;q)_k
    stop_eps = ctx.eps
    k = 0
    certified = False
    while k <= cap:
        t = weight * _plain_wall_at(n, a, k, ctx) \
                   * _plain_wall_at(m, a, k, ctx)
        total += t
        weight *= aq / (1 - q ** (k + 1))
        k += 1
        if k > max(n, m) + 4 and abs(t) < stop_eps * (1 + abs(total)):
            rho = aq / (1 - q ** (k + 1)) * mpmath.mpf("1.01")
            if rho < 1 and abs(t) * rho / (1 - rho) < ctx.tolerance:
                certified = True
                break
    if not certified:
        raise TruncationInsufficient(
            f"primal orthogonality tail not certified within cap {cap}")
    if n == m:
        qqn = mpmath.mpf(1)
        aqn = mpmath.mpf(1)
        f = aq
        for i in range(n):
            qqn *= (1 - q ** (i + 1))
            aqn *= (1 - f)
            f *= q
        closed = aq ** n * qqn / (aqn * qpochhammer(aq, "inf", ctx).value)
        return total - closed
    return total


def _wall_dual(k, l, a, truncation, ctx) -> HPComplex:
    q = ctx.q
    aq = a * q
    cap = truncation if truncation is not None else 100000
    total = mpmath.mpf(0)
    stop_eps = ctx.eps
    weight = mpmath.mpf(1)   # (aq;q)_j / ((aq)^j (q;q)_j)
    j = 0
    small = 0
    last = None
    certified = False
    while j <= cap:
        t = weight * _plain_wall_at(j, a, k, ctx) \
                   * _plain_wall_at(j, a, l, ctx)
        total += t
        weight *= (1 - aq * q ** j) / (aq * (1 - q ** (j + 1)))
        j += 1
        at = abs(t)
        if j > max(k, l) + 4 and at < stop_eps * (1 + abs(total)) \
                and last is not None and at <= last:
            small += 1
            # superexponential decay: observed ratio certifies the tail
            if small >= 3 and last > 0 and at / last < 1:
                rho = at / last
                if at * rho / (1 - rho) < ctx.tolerance:
                    certified = True
                    break
        else:
            small = 0
        last = at
    if not certified:
        raise TruncationInsufficient(
            f"dual orthogonality tail not certified within cap {cap}")
    if k == l:
        qqk = mpmath.mpf(1)
        for i in range(k):
            qqk *= (1 - q ** (i + 1))
        closed = aq ** (-k) * qqk / qpochhammer(aq, "inf", ctx).value
        return total - closed
    return total


# ---------------------------------------------------------------------------
# q-Bessel


@dataclass(frozen=True)
class QBesselParams:
    """Order nu and argument x; the series base is the context's q squared."""

    order: object
    argument: object


def qbessel(params: QBesselParams, ctx: QContext) -> HPComplex:
    """J_nu(x; q^2) on the principal branch.

    Raises BranchCut for x on the negative real axis (arg x = +-pi) and for
    x = 0 with Re(nu) < 0; J_0(0) = 1 and J_nu(0) = 0 for Re(nu) > 0.
    Negative integer orders go through the reflection
    J_(-n)(x; q^2) = (-q)^n J_n(x q^n; q^2), which keeps the vanishing head
    of the series exact (summing the head numerically loses all precision).
    """
    with ctx.working():
        nu = _to_mp(params.order, ctx.precision_digits + 10)
        x = _to_mp(params.argument, ctx.precision_digits + 10)
        if x == 0:
            renu = mpmath.re(nu)
            if nu == 0:
                return mpmath.mpf(1)
            if renu > 0:
                return mpmath.mpf(0)
            raise BranchCut("x = 0 with Re(nu) <= 0 is singular")
        if mpmath.re(x) < 0 and abs(mpmath.im(x)) <= ctx.tolerance * abs(x):
            raise BranchCut("argument on the negative real axis (arg = +-pi)")
        if isinstance(nu, mpmath.mpf) and nu == int(nu) and nu < 0:
            n = -int(nu)
            sub = qbessel(QBesselParams(n, x * ctx.q ** n), ctx)
            return (-ctx.q) ** n * sub
        Q = ctx.q ** 2
        ctx2 = ctx.with_q(Q)
        reg = basic_hypergeometric(
            PhiParams([0], [ctx2.q_power(nu + 1)], Q * x * x,
                      regularize_first_denominator=True), ctx2)
        if isinstance(nu, mpmath.mpf) and nu == int(nu):
            xnu = x ** int(nu)
        else:
            xnu = mpmath.exp(nu * mpmath.log(x))
        head = qpochhammer(Q, "inf", ctx2).value
        return xnu * reg.value / head


def qbessel_lattice(order_exponent, argument_exponent: int,
                    ctx: QContext) -> HPComplex:
    """J_t(q^s; q^2) for real t and integer s, in the stable orientation.

    Uses the self-duality J_t(q^s) = J_s(q^t) to evaluate with
    order = min(t, s) and argument exponent = max(t, s); the series is then
    monotone and safe.  Residual cancellation (both exponents very
    negative) is caught by the monitor and re-run at higher precision.
    """
    fam = _family(ctx)
    t, s = order_exponent, int(argument_exponent)
    if not isinstance(t, int):
        t = _to_mp(t, fam.dps)
        if not isinstance(t, mpmath.mpf):
            raise ConfigError("lattice order exponent must be real")
        if t == int(t):
            t = int(t)
    if isinstance(t, (int,)):
        key = (t, s)
    else:
        key = (mpmath.nstr(mpmath.mpf(t), fam.dps - 5), s)
    cached = fam.jlat.get(key)
    if cached is not None:
        return cached
    if isinstance(t, (int,)) and t > s:
        t2, s2 = s, t
    elif not isinstance(t, (int,)) and t > s:
        t2, s2 = mpmath.mpf(s), t
    else:
        t2, s2 = t, s
    val = _jlat_series(t2, s2, fam, ctx)
    fam.jlat[key] = val
    return val


def _jlat_series(t, s, fam: _Family, ctx: QContext) -> HPComplex:
    """Series for J_t(q^s; Q) with t <= s; t integer or mpf, s numeric."""
    extra = 0
    for _ in range(8):
        dps = fam.dps + extra
        with mp.workdps(dps):
            Q = fam.Q if extra == 0 else (+ctx.q) ** 2
            q = fam.q if extra == 0 else +ctx.q
            # argument q^s gives z = Q x^2 = Q^(1+s) since x^2 = Q^s
            arg_pow = mpmath.exp((1 + mpmath.mpf(s)) * mpmath.log(Q)) \
                if not isinstance(s, int) else Q ** (1 + s)
            total = mpmath.mpf(0)
            max_term = mpmath.mpf(0)
            zj = mpmath.mpf(1)       # arg_pow^j
            tri = mpmath.mpf(1)      # Q^(j(j-1)/2)
            Qj = mpmath.mpf(1)       # Q^j
            qq = mpmath.mpf(1)       # (Q;Q)_j
            j = 0
            small = 0
            while True:
                if extra == 0:
                    shifted = fam.shifted_inf(t, j)
                else:
                    shifted = _fresh_shifted_inf(t, j, Q, dps)
                if shifted != 0:
                    sign = -1 if j % 2 else 1
                    term = sign * tri * zj * shifted / qq
                    total += term
                    at = abs(term)
                    if at > max_term:
                        max_term = at
                    if j > 2 and at < mpmath.mpf(10) ** (-(dps - 2)) \
                            * (1 + abs(total)):
                        small += 1
                        if small >= 3:
                            break
                    else:
                        small = 0
                tri *= Qj
                Qj *= Q
                zj *= arg_pow
                qq *= (1 - Qj)
                j += 1
                if j > 200000:
                    raise TruncationInsufficient("lattice series ran away")
            floor = mpmath.mpf(10) ** (-dps)
            cancel = max_term / max(abs(total), floor)
            if floor * cancel <= mpmath.mpf(10) ** (-(fam.dps - 5)):
                ts = mpmath.mpf(t) * mpmath.mpf(s)
                prefactor = mpmath.exp(ts * mpmath.log(q)) \
                    if not (isinstance(t, int) and isinstance(s, int)) \
                    else q ** (t * s)
                return prefactor * total / fam.pochQ_all
            extra += int(mpmath.ceil(mpmath.log10(cancel))) + 10
    raise TruncationInsufficient(
        "lattice q-Bessel cancellation not controlled by restarts")


def _fresh_shifted_inf(t, j, Q, dps):
    e = (mpmath.mpf(t) + 1 + j)
    if isinstance(t, int):
        if t + 1 + j <= 0:
            return mpmath.mpf(0)
        base = Q ** (t + 1 + j)
    else:
        base = mpmath.exp(e * mpmath.log(Q))
    prod = mpmath.mpf(1)
    f = base
    thresh = mpmath.mpf(10) ** (-(dps + 5))
    while abs(f) >= thresh:
        prod *= (1 - f)
        f *= Q
    return prod


# ---------------------------------------------------------------------------
# q-Hankel transform on the lattice


def qhankel_transform(f: Union[Mapping[int, object], Sequence, Callable],
                      nu, direction: str, window: tuple,
                      ctx: QContext) -> dict:
    """Transform lattice samples: g[n] = sum_k q^(2k) J_nu(q^(k+n);q^2) f[k].

    f may be a dict {k: value}, a sequence aligned with range(kmin, kmax+1),
    or a callable k -> value.  The kernel is self-reciprocal, so forward and
    inverse use the same sum; the direction token is validated only.
    Raises TruncationInsufficient when the boundary samples times kernel
    values are not below tolerance for some requested output (the given
    samples do not decay inside the window).
    """
    if direction not in ("forward", "inverse"):
        raise ConfigError(f"direction must be forward or inverse, got "
                          f"{direction!r}")
    kmin, kmax = int(window[0]), int(window[1])
    if kmin > kmax:
        raise ConfigError(f"window {window} has kmin > kmax")
    ks = range(kmin, kmax + 1)
    with ctx.working():
        if isinstance(f, Mapping):
            samples = {k: _to_mp(f.get(k, 0), ctx.precision_digits + 10)
                       for k in ks}
        elif callable(f):
            samples = {k: _to_mp(f(k), ctx.precision_digits + 10) for k in ks}
        else:
            if len(f) != len(ks):
                raise ConfigError(
                    f"sample sequence length {len(f)} != window size {len(ks)}")
            samples = {k: _to_mp(v, ctx.precision_digits + 10)
                       for k, v in zip(ks, f)}
        q = ctx.q
        out = {}
        contaminated = []
        for n in ks:
            total = mpmath.mpf(0)
            for k in ks:
                fk = samples[k]
                if fk == 0:
                    continue
                total += q ** (2 * k) * qbessel_lattice(nu, k + n, ctx) * fk
            out[n] = total
            est = mpmath.mpf(0)
            if samples[kmin] != 0:
                est += abs(q ** (2 * kmin) * qbessel_lattice(nu, kmin + n, ctx)
                           * samples[kmin])
            if samples[kmax] != 0:
                est += abs(q ** (2 * kmax) * qbessel_lattice(nu, kmax + n, ctx)
                           * samples[kmax])
            if est > ctx.tolerance * (1 + abs(total)):
                contaminated.append(n)
        if contaminated:
            raise TruncationInsufficient(
                f"boundary samples not below tolerance for outputs "
                f"{contaminated[0]}..{contaminated[-1]}; enlarge the window")
        return out


# ---------------------------------------------------------------------------
# classical evaluators for the q -> 1 limit checks


def laguerre(n: int, alpha, x, ctx: Optional[QContext] = None) -> HPComplex:
    """Generalized Laguerre polynomial L_n^(alpha)(x), direct finite sum.

    Minimal in-house evaluator (no special-function dependency); runs at the
    context precision when given, else at the ambient mpmath precision.
    Orthogonality on (0, inf) needs alpha > -1, but the polynomial itself is
    evaluated for any alpha that avoids the degenerate alpha = -1, ..., -n.
    """
    if int(n) != n or n < 0:
        raise ConfigError("degree n must be a natural number")
    dps = ctx.precision_digits + 10 if ctx is not None else mp.dps
    with mp.workdps(dps):
        a = _to_mp(alpha, dps)
        xv = _to_mp(x, dps)
        t = mpmath.mpf(1)
        for j in range(1, n + 1):
            t *= (a + j) / j          # binom(n+alpha, n)
        total = t
        for k in range(n):
            denom = (a + k + 1) * (k + 1)
            if denom == 0:
                raise ConfigError(
                    f"degenerate parameter alpha = {mpmath.nstr(a, 8)}")
            t *= -xv * (n - k) / denom
            total += t
        return total


def bessel_j(nu, x, ctx: Optional[QContext] = None) -> HPComplex:
    """Bessel function of the first kind J_nu(x), direct power series.

    Minimal in-house evaluator; the single Gamma(nu+1) seed uses mpmath's
    gamma, every later coefficient follows by the ratio recurrence.
    """
    dps = ctx.precision_digits + 10 if ctx is not None else mp.dps
    with mp.workdps(dps + 10):
        nuv = _to_mp(nu, dps + 10)
        xv = _to_mp(x, dps + 10)
        if xv == 0:
            if nuv == 0:
                return mpmath.mpf(1)
            if mpmath.re(nuv) > 0:
                return mpmath.mpf(0)
            raise ConfigError("x = 0 with Re(nu) < 0 is singular")
        half = xv / 2
        if isinstance(nuv, mpmath.mpf) and nuv == int(nuv) and nuv >= 0:
            head = half ** int(nuv) / mpmath.factorial(int(nuv))
        else:
            head = mpmath.exp(nuv * mpmath.log(half)) / mpmath.gamma(nuv + 1)
        t = head
        total = t
        h2 = half * half
        k = 0
        small = 0
        while True:
            k += 1
            t *= -h2 / (k * (nuv + k))
            total += t
            if abs(t) < mpmath.mpf(10) ** (-(dps + 5)) * (1 + abs(total)):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            if k > 100000:
                raise TruncationInsufficient("Bessel series ran away")
        return total
