"""Quasi-exact spectrum: truncation roots and allowed cyclotron frequencies.

The series of :mod:`rotlandau.heun` terminates at degree n exactly when
nu = 2*n and the coefficient a_{n+1}, viewed as a polynomial in theta at
fixed (n, gamma), vanishes.  Each positive root theta of that polynomial
fixes the trap frequency through varpi = 4*m*mu**2/theta**2, which in turn
fixes the two cyclotron-frequency branches

    omega = 2*(-Omega +- sqrt(Omega**2 + varpi**2))

and the rotating-frame energy E = varpi*(n + gamma + 1) - omega*l/2 - Omega*l.
The magnetic field is therefore quantized: only these omega support a
degree-n polynomial bound state in channel l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npoly

from .errors import NoAdmissibleRootError
from .heun import HeunParams, generate_coefficients, termination_check
from .model import ChannelParams, PhysicalConfig, channel_params

#: residual tolerance for polished roots, relative to the evaluation scale
ROOT_RESIDUAL_TOL = 1e-12

_BRANCHES = ("plus", "minus")


@dataclass(frozen=True)
class TruncationPolynomial:
    """The coefficient a_{n+1} as a polynomial in theta at nu = 2*n.

    ``coeffs`` are ascending powers of theta, length n + 2 (degree exactly
    n + 1).  The polynomial has definite parity: coefficients of powers with
    the opposite parity of n + 1 are identically zero.
    """

    n: int
    gamma: float
    coeffs: tuple[float, ...]

    def __call__(self, theta: float) -> float:
        return float(npoly.polyval(theta, self.coeffs))

    def evaluation_scale(self, theta: float) -> float:
        """Sum of absolute term magnitudes at theta; conditions the residual test."""
        powers = np.abs(theta) ** np.arange(len(self.coeffs))
        return float(max(1.0, np.sum(np.abs(np.array(self.coeffs)) * powers)))


def truncation_polynomial(n: int, gamma: float) -> TruncationPolynomial:
    """Propagate the series recurrence symbolically in theta at nu = 2*n.

    Each coefficient a_k is a polynomial of degree k in theta; the recurrence
    maps coefficient arrays to coefficient arrays, with multiplication by
    theta realized as an index shift.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n: must be >= 1, got {n!r}")
    if not math.isfinite(gamma) or gamma < 0:
        raise ValueError(f"gamma: must be finite and non-negative, got {gamma!r}")
    nu = 2.0 * n
    polys = [np.array([1.0]), np.array([0.0, -1.0 / (1.0 + 2.0 * gamma)])]
    for k in range(n):
        denom = (k + 2.0) * (k + 2.0 + 2.0 * gamma)
        shifted = np.concatenate([[0.0], polys[k + 1]])  # theta * a_{k+1}
        nxt = np.zeros(k + 3)
        nxt[: len(shifted)] -= shifted / denom
        nxt[: len(polys[k])] -= polys[k] * ((nu - 2.0 * k) / denom)
        polys.append(nxt)
    return TruncationPolynomial(n=n, gamma=float(gamma), coeffs=tuple(polys[n + 1]))


def _polish_root(coeffs: np.ndarray, deriv: np.ndarray, x: float) -> float:
    # Newton refinement; simple roots of these polynomials are well separated
    for _ in range(60):
        p = npoly.polyval(x, coeffs)
        dp = npoly.polyval(x, deriv)
        if dp == 0.0:
            break
        step = p / dp
        x -= step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return float(x)


def theta_roots(poly: TruncationPolynomial) -> list[float]:
    """All real roots of the truncation polynomial, ascending.

    The polynomial has definite parity, so it is a polynomial q in s = theta**2
    times a possible single factor of theta.  Roots of q are found via the
    companion matrix, mapped back as +-sqrt(s), and Newton-polished on the
    full polynomial; the returned set is exactly symmetric about zero.
    """
    c = np.array(poly.coeffs, dtype=float)
    sigma = (poly.n + 1) % 2  # 1 when the polynomial carries a bare theta factor
    even_part = c[sigma::2]
    s_roots = npoly.polyroots(even_part)
    deriv = npoly.polyder(c)
    positive = []
    for s in s_roots:
        if abs(s.imag) > 1e-8 * (1.0 + abs(s.real)) or s.real <= 0.0:
            continue
        x = _polish_root(c, deriv, math.sqrt(s.real))
        residual = abs(npoly.polyval(x, c))
        if residual > ROOT_RESIDUAL_TOL * poly.evaluation_scale(x):
            continue
        if any(abs(x - y) <= 1e-10 * (1.0 + abs(y)) for y in positive):
            continue
        positive.append(x)
    positive.sort()
    roots = [-x for x in reversed(positive)]
    if sigma == 1:
        roots.append(0.0)
    roots.extend(positive)
    return roots


@dataclass(frozen=True)
class SpectrumLine:
    """One allowed (n, l, theta-root, omega-branch) combination.

    ``omega_branch`` is ``"plus"`` or ``"minus"`` for the sign in front of
    sqrt(Omega**2 + varpi**2); ``terminated`` records an a-posteriori check
    that the series truly truncates at the computed root.
    """

    n: int
    l: int
    gamma: float
    theta_root: float
    varpi: float
    omega_branch: str
    omega: float
    E: float
    terminated: bool


def _line_sort_key(line: SpectrumLine):
    return (line.n, line.l, _BRANCHES.index(line.omega_branch), line.theta_root)


def energy_level(n: int, l: int, ch: ChannelParams) -> float:
    """Rotating-frame energy E = varpi*(n + gamma + 1) - omega*l/2 - Omega*l."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n: must be >= 1, got {n!r}")
    return ch.varpi * (n + ch.gamma + 1.0) - 0.5 * ch.omega * ch.l - ch.Omega * ch.l


def _build_line(
    n: int,
    l: int,
    gamma: float,
    theta: float,
    branch: str,
    config: PhysicalConfig,
    terminated: bool,
) -> SpectrumLine:
    m = config.effective_mass
    mu = config.kratzer_mu
    varpi = 4.0 * m * mu * mu / (theta * theta)
    root = math.sqrt(config.Omega * config.Omega + varpi * varpi)
    omega = 2.0 * (-config.Omega + root) if branch == "plus" else 2.0 * (-config.Omega - root)
    # both branches satisfy the defining relation by construction
    residual = abs(0.25 * omega * omega + config.Omega * omega - varpi * varpi)
    assert residual <= 1e-9 * max(1.0, varpi * varpi), "branch frequency lost confinement"
    ch = channel_params(config, l, omega)
    E = energy_level(n, l, ch)
    return SpectrumLine(
        n=n,
        l=l,
        gamma=gamma,
        theta_root=theta,
        varpi=varpi,
        omega_branch=branch,
        omega=omega,
        E=E,
        terminated=terminated,
    )


def allowed_frequencies(
    n: int,
    l: int,
    config: PhysicalConfig,
    branches: tuple[str, ...] = _BRANCHES,
) -> list[SpectrumLine]:
    """All spectrum lines of channel (n, l): one per admissible root and branch.

    Admissible roots share the sign of the Kratzer coupling mu, which must be
    positive (attractive tail); for n >= 3 there can be several, each with its
    own trap frequency and energy.

    Raises:
        NoAdmissibleRootError: if mu <= 0 or no root of matching sign exists.
    """
    n = int(n)
    l = int(l)
    if n < 1:
        raise ValueError(f"n: must be >= 1, got {n!r}")
    for b in branches:
        if b not in _BRANCHES:
            raise ValueError(f"branch: must be one of {_BRANCHES}, got {b!r}")
    m = config.effective_mass
    mu = config.kratzer_mu
    if mu <= 0.0:
        raise NoAdmissibleRootError(
            f"no admissible root: Kratzer coupling mu = {mu!r} must be positive"
        )
    gamma = math.sqrt(l * l + 2.0 * m * config.kratzer_tau2)
    roots = [t for t in theta_roots(truncation_polynomial(n, gamma)) if t > 0.0]
    if not roots:
        raise NoAdmissibleRootError(f"no admissible root for n={n}, l={l}, gamma={gamma!r}")
    lines = []
    for theta in roots:
        series = generate_coefficients(HeunParams(gamma=gamma, theta=theta, nu=2.0 * n), n + 10)
        terminated = termination_check(series, n)
        for branch in branches:
            lines.append(_build_line(n, l, gamma, theta, branch, config, terminated))
    return sorted(lines, key=_line_sort_key)


def ground_state_closed_form(
    l: int, config: PhysicalConfig, branch: str = "plus"
) -> SpectrumLine:
    """The n = 1 line from closed-form algebra, bypassing root finding.

    Setting a_2 = 0 by hand gives theta**2 = 2*(1 + 2*gamma), hence
    varpi = 2*m*mu**2/(1 + 2*gamma) and E = varpi*(gamma + 2) - l*(omega/2 + Omega).
    Note the squared factor: expanding the energy in Omega instead as
    -+ Omega*l*sqrt(1 + 4*m**2*mu**4/(Omega**2*(1+2*gamma)**2)) carries
    (1 + 2*gamma)**2 under the radical; dropping the square there is a common
    transcription slip and is inconsistent with the recurrence.
    """
    if branch not in _BRANCHES:
        raise ValueError(f"branch: must be one of {_BRANCHES}, got {branch!r}")
    l = int(l)
    m = config.effective_mass
    mu = config.kratzer_mu
    if mu <= 0.0:
        raise NoAdmissibleRootError(
            f"no admissible root: Kratzer coupling mu = {mu!r} must be positive"
        )
    gamma = math.sqrt(l * l + 2.0 * m * config.kratzer_tau2)
    theta = math.sqrt(2.0 * (1.0 + 2.0 * gamma))
    series = generate_coefficients(HeunParams(gamma=gamma, theta=theta, nu=2.0), 11)
    terminated = termination_check(series, 1)
    return _build_line(1, l, gamma, theta, branch, config, terminated)
