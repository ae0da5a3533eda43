"""q-shifted factorials, basic hypergeometric series, and Jackson sums.

Conventions, for base 0 < q < 1:

    (a;q)_k   = prod_{i=0}^{k-1} (1 - a q^i),      (a;q)_0 = 1
    (a;q)_inf = prod_{i>=0} (1 - a q^i)
    (a1,...,ar;q)_k = (a1;q)_k ... (ar;q)_k

    r_phi_s(a1..ar; b1..bs; q, z)
        = sum_k [(a1..ar;q)_k / (b1..bs;q)_k] z^k/(q;q)_k
          * ((-1)^k q^(k(k-1)/2))^(1+s-r)

The series terminates when some numerator is q^(-n); it converges for all z
when 1+s > r, inside |z| < 1 when r = s+1, and only when terminating for
r > s+1.  Division by a denominator factor passing within tolerance of zero
raises NearPoleDenominator; the regularized variant multiplies the series
by (b1;q)_inf, giving a function that stays finite as b1 crosses q^(-N)
(the lower summation limit then jumps, automatically: the per-term factor
(b1 q^k;q)_inf vanishes identically for b1 = q^(-n), k < n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import mpmath
from mpmath import mp

from .context import (
    ConfigError,
    DivergentSeries,
    HPComplex,
    NearPoleDenominator,
    QContext,
    SeriesValue,
    TruncationInsufficient,
    _to_mp,
)

__all__ = [
    "PhiParams",
    "qpochhammer",
    "qpochhammer_multi",
    "basic_hypergeometric",
    "big_q_exponential",
    "jackson_q_integral",
    "q_gamma",
]

_INF_TOKENS = {"inf", "infinity", "oo"}


def _is_infinite_order(k) -> bool:
    if isinstance(k, str):
        return k.lower() in _INF_TOKENS
    if k is mpmath.inf:
        return True
    if isinstance(k, float) and mpmath.isinf(k):
        return True
    return False


def _finite_poch(a: HPComplex, base: HPComplex, k: int) -> HPComplex:
    """(a;base)_k as an exact finite product at ambient precision."""
    prod = mpmath.mpf(1)
    f = a
    for _ in range(k):
        prod *= (1 - f)
        f *= base
    return prod


def _infinite_poch(a: HPComplex, base, dps: int):
    """(a;base)_inf truncated at factor resolution; returns (value, tail, n).

    Stops once |a base^i| < 10^-(dps+5).  Remainder bound: the omitted log
    factors satisfy |log prod_{i>=N}(1 - a base^i)| <= r/(1-r) summed
    geometrically with r = |a base^N|, so |P_inf - P_N| <= |P_N| (e^B - 1)
    with B = r / ((1-base)(1-r)).
    """
    thresh = mpmath.mpf(10) ** (-(dps + 5))
    prod = mpmath.mpf(1)
    f = a
    n = 0
    cap = 100000
    while abs(f) >= thresh:
        prod *= (1 - f)
        f *= base
        n += 1
        if n > cap:
            raise TruncationInsufficient(
                "infinite q-shifted factorial did not reach factor resolution")
    r = abs(f)
    bound = r / ((1 - base) * (1 - r))
    tail = abs(prod) * (mpmath.exp(bound) - 1)
    return prod, tail, n


def qpochhammer(a, k, ctx: QContext) -> SeriesValue:
    """(a;q)_k for natural k or k = infinity ("inf" / mpmath.inf).

    Finite products are exact (tail_bound 0).  The infinite product is
    truncated once the factor deviation |a q^i| drops below the working
    resolution, with the geometric log-remainder as tail_bound.
    """
    with ctx.working():
        av = _to_mp(a, ctx.precision_digits + 10)
        if _is_infinite_order(k):
            value, tail, n = _infinite_poch(av, ctx.q, ctx.precision_digits)
            return SeriesValue(value=value, tail_bound=tail, terms_used=n)
        kk = int(k)
        if kk < 0 or kk != k:
            raise ConfigError(f"order k must be a natural number or inf, got {k!r}")
        value = _finite_poch(av, ctx.q, kk)
        return SeriesValue(value=value, tail_bound=mpmath.mpf(0), terms_used=kk)


def qpochhammer_multi(factors: Sequence, k, ctx: QContext) -> SeriesValue:
    """(a1,...,ar;q)_k, the product of the individual symbols.

    tail_bound combines the factor bounds to first order plus the
    second-order cross terms, so it stays an upper bound.
    """
    if len(factors) == 0:
        return SeriesValue(value=mpmath.mpf(1), tail_bound=mpmath.mpf(0),
                           terms_used=0)
    with ctx.working():
        value = mpmath.mpf(1)
        tail = mpmath.mpf(0)
        terms = 0
        for a in factors:
            sv = qpochhammer(a, k, ctx)
            # |x y - x' y'| <= |x| ty + |y'| tx  with |y'| <= |y| + ty
            tail = abs(value) * sv.tail_bound + (abs(sv.value) + sv.tail_bound) * tail
            value = value * sv.value
            terms += sv.terms_used
        return SeriesValue(value=value, tail_bound=tail, terms_used=terms)


@dataclass(frozen=True)
class PhiParams:
    """Parameters of r_phi_s(numerators; denominators; q, argument)."""

    numerators: tuple
    denominators: tuple
    argument: object
    regularize_first_denominator: bool = False

    def __init__(self, numerators, denominators, argument,
                 regularize_first_denominator: bool = False):
        object.__setattr__(self, "numerators", tuple(numerators))
        object.__setattr__(self, "denominators", tuple(denominators))
        object.__setattr__(self, "argument", argument)
        object.__setattr__(self, "regularize_first_denominator",
                           bool(regularize_first_denominator))
        if regularize_first_denominator and len(self.denominators) == 0:
            raise ConfigError("regularization requires a first denominator")


def _termination_order(numerators, ctx: QContext) -> Optional[int]:
    orders = [n for n in (ctx.negative_q_exponent(a) for a in numerators)
              if n is not None]
    return min(orders) if orders else None


def basic_hypergeometric(params: PhiParams, ctx: QContext) -> SeriesValue:
    """Evaluate r_phi_s, certified.

    Raises DivergentSeries for r > s+1 without a terminating numerator and
    for r = s+1 with |z| >= 1 (non-terminating); NearPoleDenominator when a
    denominator symbol passes within tolerance of zero and regularization
    is off.  With regularize_first_denominator the result is
    (b1;q)_inf * r_phi_s, entire in b1.

    The sum runs at adaptive precision: if max|term| / |sum| reveals
    cancellation eating the guard digits, the evaluation restarts with the
    working precision raised accordingly.  tail_bound is first omitted term
    times rho/(1-rho) from the observed-and-analytic term ratio rho.
    """
    with ctx.working():
        numerators = tuple(_to_mp(a, ctx.precision_digits + 10)
                           for a in params.numerators)
        denominators = tuple(_to_mp(b, ctx.precision_digits + 10)
                             for b in params.denominators)
        z = _to_mp(params.argument, ctx.precision_digits + 10)
        r, s = len(numerators), len(denominators)
        n_term = _termination_order(numerators, ctx)
        if n_term is None:
            if r > s + 1:
                raise DivergentSeries(
                    f"{r}_phi_{s} has radius of convergence 0 without a "
                    "terminating numerator")
            if r == s + 1 and abs(z) >= 1:
                raise DivergentSeries(
                    f"{r}_phi_{s} requires |z| < 1, got |z| = "
                    f"{mpmath.nstr(abs(z), 8)}")
        if not params.regularize_first_denominator:
            for b in denominators:
                if ctx.negative_q_exponent(b) is not None:
                    raise NearPoleDenominator(
                        "denominator parameter within tolerance of q^(-N); "
                        "use regularize_first_denominator")

    extra = 10
    for _attempt in range(6):
        try:
            return _phi_sum(numerators, denominators, z, n_term, params,
                            ctx, extra)
        except _NeedMorePrecision as bump:
            extra = bump.extra
    raise TruncationInsufficient(
        "cancellation in the hypergeometric sum was not controlled by "
        "precision restarts")


class _NeedMorePrecision(Exception):
    def __init__(self, extra: int):
        self.extra = extra


def _phi_sum(numerators, denominators, z, n_term, params: PhiParams,
             ctx: QContext, extra: int) -> SeriesValue:
    q = ctx.q
    r, s = len(numerators), len(denominators)
    phase_power = 1 + s - r
    regularize = params.regularize_first_denominator
    with mp.workdps(ctx.precision_digits + extra):
        work_eps = mpmath.mpf(10) ** (-(ctx.precision_digits + extra - 3))
        total = mpmath.mpf(0)
        max_term = mpmath.mpf(0)
        # running factors, updated per k
        num_prod = mpmath.mpf(1)
        den_prod = mpmath.mpf(1)          # excludes b1 when regularizing
        qq_prod = mpmath.mpf(1)           # (q;q)_k
        num_shift = list(numerators)
        den_shift = list(denominators[1:] if regularize else denominators)
        b1 = denominators[0] if regularize else None
        kfloor = 4
        if regularize:
            reg_val, _, _ = _infinite_poch(b1, q, ctx.precision_digits + extra)
            b1_shift = b1
            # at b1 = q^(-N) the first N terms vanish; do not let their
            # numerically-tiny residue trigger the convergence stop
            n_pole = ctx.negative_q_exponent(b1)
            if n_pole is not None:
                kfloor = n_pole + 4
        zk = mpmath.mpf(1)
        qk = mpmath.mpf(1)                # q^k
        tri = mpmath.mpf(1)               # q^(k(k-1)/2)
        k = 0
        last = None
        small_run = 0
        kmax = (n_term if n_term is not None else 100000)
        while k <= kmax:
            term = num_prod / (den_prod * qq_prod) * zk
            if phase_power != 0:
                sign = -1 if (k % 2) else 1
                term *= (sign * tri) ** phase_power
            if regularize:
                term *= reg_val
            total += term
            at = abs(term)
            if at > max_term:
                max_term = at
            # advance all running products to k+1
            for i, ai in enumerate(num_shift):
                num_prod *= (1 - ai)
                num_shift[i] = ai * q
            for i, bi in enumerate(den_shift):
                f = 1 - bi
                if abs(f) <= ctx.tolerance:
                    raise NearPoleDenominator(
                        "denominator factor within tolerance of zero at "
                        f"term {k}")
                den_prod *= f
                den_shift[i] = bi * q
            if regularize:
                f = 1 - b1_shift
                if abs(f) < mpmath.mpf("0.1"):
                    # near a zero crossing: refresh the infinite product
                    b1_next = b1_shift * q
                    reg_val, _, _ = _infinite_poch(
                        b1_next, q, ctx.precision_digits + extra)
                    b1_shift = b1_next
                else:
                    reg_val /= f
                    b1_shift *= q
            qq_prod *= (1 - q * qk)
            tri *= qk
            qk *= q
            zk *= z
            k += 1
            if n_term is None and k > kfloor:
                # three consecutive small, decreasing terms guard against an
                # accidental near-zero term triggering a premature stop
                if last is not None and at <= work_eps * (1 + abs(total)) \
                        and at <= abs(last):
                    small_run += 1
                    if small_run >= 3:
                        break
                else:
                    small_run = 0
            last = term
        else:
            if n_term is None:
                raise TruncationInsufficient(
                    "hypergeometric sum did not converge within 100000 terms")
        # cancellation check
        floor = mpmath.mpf(10) ** (-(ctx.precision_digits + extra))
        scale = max(abs(total), floor)
        cancel = max_term / scale
        achieved = floor * cancel
        target = ctx.eps
        if achieved > target:
            need = extra + int(mpmath.ceil(mpmath.log10(achieved / target))) + 5
            raise _NeedMorePrecision(need)
        if n_term is not None:
            return SeriesValue(value=total, tail_bound=mpmath.mpf(0),
                               terms_used=k)
        # tail: next term times rho/(1-rho); rho from the analytic ratio limit
        rho_analytic = abs(z) if r == s + 1 else (abs(z) * q ** max(k - 1, 0)
                                                  if 1 + s > r else mpmath.mpf(1))
        rho_obs = abs(term / last) if last and abs(last) > 0 else rho_analytic
        rho = max(rho_analytic, min(rho_obs, mpmath.mpf("0.99")))
        if rho >= 1:
            raise TruncationInsufficient(
                f"term ratio bound {mpmath.nstr(rho, 6)} >= 1, cannot "
                "certify the tail")
        tail = abs(term) * rho / (1 - rho)
        if tail > ctx.tolerance:
            raise TruncationInsufficient(
                "tail bound exceeds tolerance after convergence stop")
        return SeriesValue(value=total, tail_bound=tail, terms_used=k)


def big_q_exponential(z, ctx: QContext) -> SeriesValue:
    """E_{q^2}(z) = (-z; q^2)_inf, the entire big q-exponential in base q^2.

    Takes the context's q and squares it internally, matching the package
    convention that transform-facing functions live in base q^2.
    """
    with ctx.working():
        zv = _to_mp(z, ctx.precision_digits + 10)
        value, tail, n = _infinite_poch(-zv, ctx.q ** 2, ctx.precision_digits)
        return SeriesValue(value=value, tail_bound=tail, terms_used=n)


def jackson_q_integral(f: Callable, window: tuple, ctx: QContext) -> SeriesValue:
    """Jackson integral of f over (0, inf): (1-q) sum_k f(q^k) q^k.

    window = (kmin, kmax) selects the lattice exponents summed, kmin <= kmax
    (negative k means large x).  The caller asserts decay of f(x) x outside
    the window; tail_bound extrapolates the boundary terms geometrically and
    is an honest heuristic, mp.inf when a boundary fails to decay.
    """
    kmin, kmax = int(window[0]), int(window[1])
    if kmin > kmax:
        raise ConfigError(f"window {window} has kmin > kmax")
    with ctx.working():
        q = ctx.q
        total = mpmath.mpf(0)
        terms = []
        for k in range(kmin, kmax + 1):
            x = q ** k
            t = _to_mp(f(x), ctx.precision_digits + 10) * x
            terms.append(abs(t))
            total += t
        tail = mpmath.mpf(0)
        # geometric extrapolation at each boundary from the last two samples
        if len(terms) >= 2:
            hi_ratio = (terms[-1] / terms[-2] if terms[-2] > 0
                        else (mpmath.mpf(0) if terms[-1] == 0 else mpmath.inf))
            lo_ratio = (terms[0] / terms[1] if terms[1] > 0
                        else (mpmath.mpf(0) if terms[0] == 0 else mpmath.inf))
            for boundary, ratio in ((terms[-1], hi_ratio), (terms[0], lo_ratio)):
                if boundary == 0:
                    continue
                if ratio < 1:
                    tail += boundary * ratio / (1 - ratio)
                else:
                    tail = mpmath.inf
                    break
        return SeriesValue(value=(1 - q) * total, tail_bound=(1 - q) * tail
                           if tail != mpmath.inf else tail,
                           terms_used=len(terms))


def q_gamma(x, ctx: QContext) -> HPComplex:
    """Gamma_q(x) = (q;q)_inf (1-q)^(1-x) / (q^x;q)_inf, principal branch."""
    with ctx.working():
        xv = _to_mp(x, ctx.precision_digits + 10)
        head, _, _ = _infinite_poch(ctx.q, ctx.q, ctx.precision_digits)
        qx = ctx.q_power(xv)
        den, _, _ = _infinite_poch(qx, ctx.q, ctx.precision_digits)
        if abs(den) == 0:
            raise NearPoleDenominator("Gamma_q pole: q^x hits q^(-N)")
        one_minus = (1 - ctx.q) ** (1 - xv) if (
            isinstance(xv, mpmath.mpf) and xv == int(xv)) else mpmath.exp(
                (1 - xv) * mpmath.log(1 - ctx.q))
        return head * one_minus / den
