"""Radial profiles of the terminated bound states and their norms.

In the dimensionless radius r = sqrt(m*varpi)*rho the profile attached to a
spectrum line is ``f(r) = exp(-r**2/2) * r**gamma * H_n(r)`` with H_n the
terminated degree-n polynomial.  The full stationary state also carries the
phase factors exp(i*l*phi) and exp(-i*E*t); they are pure phases, so only the
radial profile is materialized here.  Profiles are kept with the series
normalization a_0 = 1; :func:`norm_squared` supplies the weighted norm
integral for callers that want unit normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npoly
from scipy.integrate import simpson

from .errors import NonTerminatedSeriesError, SeriesConvergenceError
from .heun import HeunParams, HeunSeries, generate_coefficients, termination_check
from .model import PhysicalConfig
from .spectrum import SpectrumLine


@dataclass(frozen=True)
class RadialFunction:
    """A terminated radial profile f(r) = exp(-r**2/2) * r**gamma * H(r)."""

    n: int
    l: int
    gamma: float
    theta: float
    poly: HeunSeries

    def polynomial_values(self, r):
        return npoly.polyval(np.asarray(r, dtype=float), self.poly.coeffs)

    def value(self, r):
        """Evaluate f at a scalar or array of non-negative radii."""
        r = np.asarray(r, dtype=float)
        if np.any(r < 0) or not np.all(np.isfinite(r)):
            raise ValueError("r: radii must be finite and non-negative")
        out = np.exp(-0.5 * r * r) * r**self.gamma * self.polynomial_values(r)
        return float(out) if out.ndim == 0 else out

    def sample(self, r_max: float, num: int) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate on ``num`` equally spaced radii from 0 to ``r_max`` inclusive."""
        if not (math.isfinite(r_max) and r_max > 0):
            raise ValueError(f"r_max: must be finite and positive, got {r_max!r}")
        if int(num) < 1:
            raise ValueError(f"num: must be >= 1, got {num!r}")
        r = np.linspace(0.0, r_max, int(num))
        return r, self.value(r)


def radial_wavefunction(line: SpectrumLine, config: PhysicalConfig) -> RadialFunction:
    """Materialize the radial profile for a spectrum line.

    Regenerates the series at the line's root, re-checks termination, and
    stores the exact degree-n polynomial (coefficients beyond degree n are
    residuals below the termination tolerance and are dropped).

    Raises:
        NonTerminatedSeriesError: if the line is marked non-terminated or the
            regenerated series fails the termination check.
    """
    if not line.terminated:
        raise NonTerminatedSeriesError(
            f"line (n={line.n}, l={line.l}, theta={line.theta_root!r}) is not terminated"
        )
    params = HeunParams(gamma=line.gamma, theta=line.theta_root, nu=2.0 * line.n)
    series = generate_coefficients(params, line.n + 2)
    if not termination_check(series, line.n):
        raise NonTerminatedSeriesError(
            f"series at theta={line.theta_root!r} fails the termination check"
        )
    poly = HeunSeries(params=params, coeffs=series.coeffs[: line.n + 1])
    return RadialFunction(
        n=line.n, l=line.l, gamma=line.gamma, theta=line.theta_root, poly=poly
    )


def count_nodes(rf: RadialFunction) -> int:
    """Number of strictly positive zeros of the polynomial factor, no multiplicity.

    Zeros of f in (0, inf) are exactly the positive zeros of H; the Gaussian
    and r**gamma factors never vanish there.
    """
    coeffs = np.array(rf.poly.coeffs, dtype=float)
    scale = np.max(np.abs(coeffs))
    # drop numerically-zero leading coefficients before forming the companion matrix
    top = len(coeffs)
    while top > 1 and abs(coeffs[top - 1]) <= 1e-14 * scale:
        top -= 1
    coeffs = coeffs[:top]
    if len(coeffs) <= 1:
        return 0
    roots = npoly.polyroots(coeffs)
    positive = []
    for z in roots:
        if abs(z.imag) > 1e-8 * (1.0 + abs(z.real)):
            continue
        x = z.real
        if x <= 1e-12:
            continue
        if any(abs(x - y) <= 1e-8 * (1.0 + abs(y)) for y in positive):
            continue
        positive.append(x)
    return len(positive)


def norm_squared(rf: RadialFunction, r_max: float = 8.0, intervals: int = 2048) -> float:
    """The weighted norm integral of |f|**2 * r dr from 0 to r_max.

    Composite Simpson quadrature at ``intervals`` and ``2*intervals``
    subdivisions; the two estimates must agree to 1e-8 relative.  ``r_max``
    must be large enough that the Gaussian tail beyond it is negligible
    (r_max >= 8 puts the truncated tail below 1e-27).

    Raises:
        SeriesConvergenceError: if the two estimates disagree; both are
            reported in the message.
    """
    if not (math.isfinite(r_max) and r_max > 0):
        raise ValueError(f"r_max: must be finite and positive, got {r_max!r}")
    intervals = int(intervals)
    if intervals < 1000:
        raise ValueError(f"intervals: must be >= 1000, got {intervals!r}")
    if intervals % 2:
        intervals += 1  # Simpson needs an even subdivision count

    def _estimate(k: int) -> float:
        r = np.linspace(0.0, r_max, k + 1)
        f = rf.value(r)
        return float(simpson(f * f * r, x=r))

    coarse = _estimate(intervals)
    fine = _estimate(2 * intervals)
    if abs(fine - coarse) > 1e-8 * max(abs(fine), 1e-300):
        raise SeriesConvergenceError(
            f"norm integral not converged: {coarse!r} at {intervals} vs "
            f"{fine!r} at {2 * intervals} subdivisions",
            estimate=abs(fine - coarse),
        )
    return fine
