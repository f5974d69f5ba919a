"""Series machinery for the biconfluent-Heun-type radial factor.

After peeling off the Gaussian and power-law behaviour the radial profile is
``f(r) = exp(-r**2/2) * r**gamma * H(r)`` where ``H`` solves a biconfluent
Heun equation.  Expanding ``H(r) = sum_k a_k r**k`` with a_0 = 1 gives the
three-term recurrence

    a_1 = -theta / (1 + 2*gamma)
    (k+2)*(k+2+2*gamma) * a_{k+2} = -theta*a_{k+1} - (nu - 2*k)*a_k

with ``nu = beta/(m*varpi) - 2 - 2*gamma``.  The series terminates in a
degree-n polynomial exactly when nu = 2*n and a_{n+1} = 0; the recurrence
then forces every later coefficient to vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CoefficientOverflowError, SeriesConvergenceError

#: hard cap on series extension; a partial sum that has not settled by
#: this many terms is treated as non-convergent at the requested radius
MAX_TERMS = 500


@dataclass(frozen=True)
class HeunParams:
    """Parameters (gamma, theta, nu) of the series recurrence.

    gamma must be non-negative so the indicial factor 1 + 2*gamma never
    vanishes; theta and nu are unconstrained reals.
    """

    gamma: float
    theta: float
    nu: float

    def __post_init__(self):
        for name in ("gamma", "theta", "nu"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValueError(f"{name}: expected a number, got {value!r}")
            if not math.isfinite(float(value)):
                raise ValueError(f"{name}: must be finite, got {value!r}")
        if self.gamma < 0:
            raise ValueError(f"gamma: must be non-negative, got {self.gamma!r}")


@dataclass(frozen=True)
class HeunSeries:
    """Coefficients a_0..a_K of the series, a_0 = 1 by normalization."""

    params: HeunParams
    coeffs: tuple[float, ...]

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1


def _next_coefficient(params: HeunParams, k: int, a_k: float, a_k1: float) -> float:
    # recurrence step producing a_{k+2} from (a_k, a_{k+1})
    denom = (k + 2.0) * (k + 2.0 + 2.0 * params.gamma)
    return -(params.theta * a_k1 + (params.nu - 2.0 * k) * a_k) / denom


def generate_coefficients(params: HeunParams, K: int) -> HeunSeries:
    """Generate coefficients a_0..a_K by forward recurrence.

    Args:
        params: series parameters (gamma, theta, nu).
        K: highest index to generate, K >= 1.

    Raises:
        CoefficientOverflowError: if a coefficient leaves the double range;
            the failing index is recorded on the exception.
    """
    K = int(K)
    if K < 1:
        raise ValueError(f"K: must be >= 1, got {K!r}")
    if K > MAX_TERMS:
        raise ValueError(f"K: must be <= {MAX_TERMS}, got {K!r}")
    a = [1.0, -params.theta / (1.0 + 2.0 * params.gamma)]
    for k in range(K - 1):
        nxt = _next_coefficient(params, k, a[k], a[k + 1])
        if not math.isfinite(nxt):
            raise CoefficientOverflowError(k + 2)
        a.append(nxt)
    return HeunSeries(params=params, coeffs=tuple(a[: K + 1]))


def closed_form_low_coefficients(params: HeunParams) -> tuple[float, float, float]:
    """Closed forms for (a_1, a_2, a_3) as explicit rational expressions.

    These are the recurrence solved by hand to third order; they exist as an
    independent cross-check on :func:`generate_coefficients`.
    """
    g, th, nu = params.gamma, params.theta, params.nu
    a1 = -th / (1.0 + 2.0 * g)
    a2 = th * th / (2.0 * (2.0 + 2.0 * g) * (1.0 + 2.0 * g)) - nu / (2.0 * (2.0 + 2.0 * g))
    a3 = (
        -(th**3) / (6.0 * (3.0 + 2.0 * g) * (2.0 + 2.0 * g) * (1.0 + 2.0 * g))
        + nu * th / (6.0 * (3.0 + 2.0 * g) * (2.0 + 2.0 * g))
        + (nu - 2.0) * th / (3.0 * (3.0 + 2.0 * g) * (1.0 + 2.0 * g))
    )
    return (a1, a2, a3)


def evaluate_H(series: HeunSeries, r: float, tol: float = 1e-12) -> float:
    """Evaluate the partial sum H(r) = sum_k a_k r**k with a tail check.

    The next two coefficients beyond the stored range are computed from the
    recurrence and used as a tail estimate.  For a terminated series both
    vanish and the evaluation is exact polynomial arithmetic; otherwise the
    estimate must sit below ``tol`` relative to max(1, |H(r)|) and must not
    still be growing term over term.

    Raises:
        SeriesConvergenceError: if the tail estimate exceeds tolerance at
            this radius, i.e. the series was generated to insufficient K.
    """
    r = float(r)
    if not math.isfinite(r) or r < 0:
        raise ValueError(f"r: must be finite and non-negative, got {r!r}")
    c = series.coeffs
    total = 0.0
    for a_k in reversed(c):
        total = total * r + a_k
    K = series.K
    if K >= 1:
        a_K1 = _next_coefficient(series.params, K - 1, c[K - 1], c[K])
        a_K2 = _next_coefficient(series.params, K, c[K], a_K1)
    else:  # K = 0 stores only a_0; rebuild a_1 from the indicial relation
        a_K1 = -series.params.theta / (1.0 + 2.0 * series.params.gamma)
        a_K2 = _next_coefficient(series.params, 0, c[0], a_K1)
    t1 = abs(a_K1) * r ** (K + 1)
    t2 = abs(a_K2) * r ** (K + 2)
    scale = max(1.0, abs(total))
    converged = (t1 + t2) <= tol * scale and (t2 <= t1 or t2 <= tol * scale)
    if not converged:
        raise SeriesConvergenceError(
            f"partial sum not converged at r={r!r}: tail estimate {t1 + t2:.3e} "
            f"exceeds {tol:.1e} * {scale:.3e}; generate more coefficients",
            estimate=t1 + t2,
        )
    return total


def termination_check(series: HeunSeries, n: int, tol: float = 1e-10) -> bool:
    """Decide whether the series terminates as a degree-n polynomial.

    True when |a_{n+1}| and |a_{n+2}| both sit below ``tol`` relative to the
    largest generated coefficient and nu = 2*n within ``tol``.  Checking two
    consecutive coefficients is what makes the verdict stable: the recurrence
    then pins every higher coefficient to the same relative size.

    The series must have been generated to at least K = n + 2.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n: must be >= 1, got {n!r}")
    if series.K < n + 2:
        raise ValueError(f"series too short: need K >= {n + 2}, have K = {series.K}")
    scale = max(1.0, max(abs(a) for a in series.coeffs))
    if abs(series.params.nu - 2.0 * n) > tol:
        return False
    return bool(
        abs(series.coeffs[n + 1]) <= tol * scale and abs(series.coeffs[n + 2]) <= tol * scale
    )
