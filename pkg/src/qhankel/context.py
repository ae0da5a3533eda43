"""Evaluation context, result carrier, and error taxonomy.

Every public operation in this package takes a QContext fixing the base
0 < q < 1, the working precision in decimal digits, and the certification
tolerance.  Numbers are mpmath mpf/mpc values created at the context's
precision; the type alias HPComplex covers both (mpf exposes .real/.imag
like mpc, so real results are returned un-complexified).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Union

import mpmath
from mpmath import mp

HPComplex = Union[mpmath.mpf, mpmath.mpc]

__all__ = [
    "HPComplex",
    "QContext",
    "SeriesValue",
    "QHankelError",
    "DivergentSeries",
    "DivergentParameters",
    "NearPoleDenominator",
    "TruncationInsufficient",
    "BranchCut",
    "WindowTooSmall",
    "ConfigError",
]


class QHankelError(Exception):
    """Base class for all domain errors raised by this package."""


class ConfigError(QHankelError):
    """Invalid context, parameter combination, or suite configuration."""


class DivergentSeries(QHankelError):
    """A series was requested outside its region of convergence."""


class DivergentParameters(QHankelError):
    """Parameters violate a convergence precondition (e.g. Re(nu) <= -1)."""


class NearPoleDenominator(QHankelError):
    """A denominator q-shifted factorial passes within tolerance of zero."""


class TruncationInsufficient(QHankelError):
    """The requested truncation cannot certify the result to tolerance."""


class BranchCut(QHankelError):
    """The argument sits on the principal-branch cut (arg = +-pi)."""


class WindowTooSmall(QHankelError):
    """Requested interior entries are contaminated by window truncation."""


def _to_mp(x, dps: int) -> HPComplex:
    """Convert x to mpf/mpc at dps digits; str/int inputs stay exact."""
    with mp.workdps(dps):
        if isinstance(x, (mpmath.mpf, mpmath.mpc, int, str)):
            v = mpmath.mpmathify(x)
        elif isinstance(x, float):
            v = mpmath.mpf(x)
        elif isinstance(x, complex):
            v = mpmath.mpc(x.real, x.imag)
        else:
            v = mpmath.mpmathify(x)
        if isinstance(v, mpmath.mpc) and v.imag == 0:
            return v.real
        return v


@dataclass(frozen=True)
class QContext:
    """Base, precision, and tolerance shared by every evaluation.

    tolerance must stay at least ten orders of magnitude above the raw
    working resolution 10**(-precision_digits); certification at the
    resolution itself would have no guard digits behind it.
    """

    q: mpmath.mpf
    precision_digits: int = 50
    tolerance: mpmath.mpf = None  # type: ignore[assignment]

    def __init__(self, q, precision_digits: int = 50, tolerance=None):
        if precision_digits < 15:
            raise ConfigError("precision_digits must be at least 15")
        with mp.workdps(precision_digits + 10):
            qv = _to_mp(q, precision_digits + 10)
            if isinstance(qv, mpmath.mpc):
                raise ConfigError("q must be real")
            if not (0 < qv < 1):
                raise ConfigError(f"q must lie strictly in (0, 1), got {qv}")
            if tolerance is None:
                tol = mpmath.mpf(10) ** (-(precision_digits - 20))
            else:
                tol = mpmath.mpf(tolerance if not isinstance(tolerance, float)
                                 else repr(tolerance))
            floor = mpmath.mpf(10) ** (-(precision_digits - 10))
            if tol < floor:
                raise ConfigError(
                    f"tolerance {mpmath.nstr(tol, 5)} is below the certifiable "
                    f"floor 10^({10 - precision_digits}) at "
                    f"{precision_digits} digits")
        object.__setattr__(self, "q", qv)
        object.__setattr__(self, "precision_digits", int(precision_digits))
        object.__setattr__(self, "tolerance", tol)

    # -- working precision -------------------------------------------------

    def working(self, extra: int = 10):
        """mp.workdps context manager with guard digits on top."""
        return mp.workdps(self.precision_digits + extra)

    @property
    def eps(self) -> mpmath.mpf:
        """Raw resolution at the working precision (with guard digits)."""
        return mpmath.mpf(10) ** (-(self.precision_digits + 5))

    def with_q(self, q) -> "QContext":
        return QContext(q, self.precision_digits, self.tolerance)

    def with_precision(self, precision_digits: int, tolerance=None) -> "QContext":
        return QContext(self.q, precision_digits,
                        self.tolerance if tolerance is None else tolerance)

    # -- q-power helpers ----------------------------------------------------

    def q_power(self, exponent) -> HPComplex:
        """q**exponent on the principal branch, exp(exponent * log q)."""
        with self.working():
            e = _to_mp(exponent, self.precision_digits + 10)
            if isinstance(e, mpmath.mpf) and e == int(e):
                return self.q ** int(e)
            return mpmath.exp(e * mpmath.log(self.q))

    def negative_q_exponent(self, a, limit: int = 200):
        """Return n if a == q**(-n) for a natural n <= limit, else None.

        Membership is decided within tolerance; used to detect terminating
        numerator parameters and denominator poles.
        """
        with self.working():
            av = _to_mp(a, self.precision_digits + 10)
            if av == 0:
                return None
            if abs(mpmath.im(av)) > self.tolerance:
                return None
            ar = mpmath.re(av)
            if ar <= 0:
                return None
            # n estimated from logs, then confirmed within tolerance
            n_est = -mpmath.log(ar) / mpmath.log(self.q)
            n = int(mpmath.nint(n_est))
            if n < 0 or n > limit:
                return None
            if abs(av - self.q ** (-n)) <= self.tolerance * (1 + abs(av)):
                return n
            return None


@dataclass(frozen=True)
class SeriesValue:
    """A certified numerical value.

    value      evaluated sum/product
    tail_bound rigorous-or-documented bound on the omitted remainder
    terms_used number of terms/factors actually evaluated
    On successful return from operations that declare TruncationInsufficient,
    tail_bound <= ctx.tolerance; jackson_q_integral is the documented
    exception (its heuristic bound may be infinite for non-decaying
    integrands and is returned honestly).
    """

    value: HPComplex
    tail_bound: mpmath.mpf
    terms_used: int

    def __post_init__(self):
        if self.terms_used < 0:
            raise ConfigError("terms_used must be non-negative")


class SharedCache:
    """Process-local synchronized memo, keyed per (q, precision) family.

    The only shared mutable state in the package; guarded by one lock so
    suite workers can share kernels and ladders safely.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}

    def get(self, key):
        with self._lock:
            return self._data.get(key)

    def setdefault_compute(self, key, compute):
        with self._lock:
            if key in self._data:
                return self._data[key]
        val = compute()
        with self._lock:
            return self._data.setdefault(key, val)

    def clear(self):
        with self._lock:
            self._data.clear()


def context_key(ctx: QContext) -> tuple:
    """Cache key identifying the (q, precision) family of a context."""
    with ctx.working():
        return (mpmath.nstr(ctx.q, ctx.precision_digits + 5), ctx.precision_digits)
