"""Physical inputs and the algebraic layer of the rotating-frame dipole problem.

A neutral particle with polarizability ``alpha`` moving through crossed
electric and magnetic fields acquires an induced electric dipole moment and
behaves like a charge in an effective uniform magnetic field proportional to
``chi * B0``.  On top of the resulting Landau-type confinement the particle
feels a Kratzer-type potential ``-mu/rho + tau2/rho**2`` and the whole system
is observed from a frame rotating at angular velocity ``Omega``.

This module holds the parameter containers and the closed-form maps between
them; series and spectral machinery live in :mod:`rotlandau.heun` and
:mod:`rotlandau.spectrum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, NonConfiningChannelError

_REQUIRED_KEYS = ("M", "alpha", "chi", "B0", "Omega", "D", "a")
_OPTIONAL_KEYS = ("m_effective", "mu", "tau2")


def _checked_float(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise ConfigError(f"{name}: must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class PhysicalConfig:
    """Laboratory parameters of the system, in natural units (hbar = c = 1).

    Attributes:
        M: bare mass of the neutral particle.
        alpha: electric polarizability (>= 0).
        chi: linear charge density sourcing the radial electric field.
        B0: uniform magnetic field strength along the symmetry axis.
        Omega: angular velocity of the rotating frame.
        D: Kratzer dissociation energy (>= 0).
        a: Kratzer equilibrium radius (>= 0).
        m_effective: optional override for the effective mass M + alpha*B0**2.
        mu: optional override for the attractive Coulomb-like coupling 2*D*a.
        tau2: optional override for the repulsive core coupling D*a**2.

    The overrides exist because the pair (D, a) cannot reach every coupling
    combination: a pure ``-mu/rho`` tail (tau2 = 0 with mu > 0) requires
    setting ``mu`` directly.
    """

    M: float
    alpha: float
    chi: float
    B0: float
    Omega: float
    D: float
    a: float
    m_effective: float | None = None
    mu: float | None = None
    tau2: float | None = None

    def __post_init__(self):
        for name in _REQUIRED_KEYS:
            _checked_float(name, getattr(self, name))
        for name in _OPTIONAL_KEYS:
            value = getattr(self, name)
            if value is not None:
                _checked_float(name, value)
        if self.M <= 0:
            raise ConfigError(f"M: bare mass must be positive, got {self.M!r}")
        if self.alpha < 0:
            raise ConfigError(f"alpha: polarizability must be non-negative, got {self.alpha!r}")
        if self.D < 0:
            raise ConfigError(f"D: dissociation energy must be non-negative, got {self.D!r}")
        if self.a < 0:
            raise ConfigError(f"a: equilibrium radius must be non-negative, got {self.a!r}")
        if self.m_effective is not None and self.m_effective <= 0:
            raise ConfigError(
                f"m_effective: effective mass must be positive, got {self.m_effective!r}"
            )
        if self.tau2 is not None and self.tau2 < 0:
            raise ConfigError(f"tau2: core coupling must be non-negative, got {self.tau2!r}")

    @property
    def effective_mass(self) -> float:
        """Effective mass m = M + alpha*B0**2, unless overridden."""
        if self.m_effective is not None:
            return self.m_effective
        return effective_mass(self.M, self.alpha, self.B0)

    @property
    def kratzer_mu(self) -> float:
        """Attractive coupling mu = 2*D*a, unless overridden."""
        if self.mu is not None:
            return self.mu
        return 2.0 * self.D * self.a

    @property
    def kratzer_tau2(self) -> float:
        """Repulsive core coupling tau2 = D*a**2, unless overridden."""
        if self.tau2 is not None:
            return self.tau2
        return self.D * self.a * self.a

    @property
    def cyclotron_frequency(self) -> float:
        """Forward cyclotron analogue omega = alpha*chi*B0/m for this configuration."""
        return cyclotron_frequency(self.alpha, self.chi, self.B0, self.effective_mass)

    @classmethod
    def from_dict(cls, raw: dict) -> "PhysicalConfig":
        """Build a config from parsed JSON, rejecting unknown or missing keys."""
        if not isinstance(raw, dict):
            raise ConfigError(f"config: expected a JSON object, got {type(raw).__name__}")
        unknown = sorted(set(raw) - set(_REQUIRED_KEYS) - set(_OPTIONAL_KEYS))
        if unknown:
            raise ConfigError(f"{unknown[0]}: unknown configuration key")
        missing = [k for k in _REQUIRED_KEYS if k not in raw]
        if missing:
            raise ConfigError(f"{missing[0]}: required configuration key is missing")
        kwargs = {k: raw[k] for k in _REQUIRED_KEYS}
        for k in _OPTIONAL_KEYS:
            if raw.get(k) is not None:
                kwargs[k] = raw[k]
        return cls(**kwargs)

    def to_dict(self) -> dict:
        """Plain-dict form with optional overrides included only when set."""
        out = {k: float(getattr(self, k)) for k in _REQUIRED_KEYS}
        for k in _OPTIONAL_KEYS:
            value = getattr(self, k)
            if value is not None:
                out[k] = float(value)
        return out


@dataclass(frozen=True)
class ChannelParams:
    """Derived parameters of a single angular-momentum channel.

    ``gamma`` is the effective centrifugal index sqrt(l**2 + 2*m*tau2),
    ``varpi`` the rotating-frame trap frequency sqrt(omega**2/4 + Omega*omega)
    and ``theta`` the dimensionless Coulomb strength 2*m*mu/sqrt(m*varpi).
    Motion along the field axis is frozen (k = 0), so the problem is planar.
    """

    m: float
    omega: float
    Omega: float
    l: int
    gamma: float
    mu: float
    tau2: float
    varpi: float
    theta: float
    k: float = 0.0


@dataclass(frozen=True)
class EnergyRecord:
    """A single rotating-frame energy with its series-side labels.

    ``beta`` is the energy-like combination 2*m*E + 2*m*Omega*l + m*omega*l
    and ``nu = beta/(m*varpi) - 2 - 2*gamma`` the series truncation label;
    quasi-exact levels have nu = 2*n for an integer n >= 1.
    """

    n: int
    l: int
    E: float
    beta: float
    nu: float


def effective_mass(M: float, alpha: float, B0: float) -> float:
    """Effective mass m = M + alpha*B0**2 of the dressed neutral particle."""
    M = _checked_float("M", M)
    alpha = _checked_float("alpha", alpha)
    B0 = _checked_float("B0", B0)
    if M <= 0:
        raise ConfigError(f"M: bare mass must be positive, got {M!r}")
    if alpha < 0:
        raise ConfigError(f"alpha: polarizability must be non-negative, got {alpha!r}")
    return M + alpha * B0 * B0


def cyclotron_frequency(alpha: float, chi: float, B0: float, m: float) -> float:
    """Cyclotron analogue omega = alpha*chi*B0/m for the induced-dipole coupling."""
    alpha = _checked_float("alpha", alpha)
    chi = _checked_float("chi", chi)
    B0 = _checked_float("B0", B0)
    m = _checked_float("m", m)
    if m <= 0:
        raise ConfigError(f"m: effective mass must be positive, got {m!r}")
    return alpha * chi * B0 / m


def channel_params(config: PhysicalConfig, l: int, omega: float) -> ChannelParams:
    """Assemble the channel quantities for angular momentum ``l`` at frequency ``omega``.

    Raises:
        NonConfiningChannelError: if omega**2/4 + Omega*omega <= 0, in which
            case there is no confining rotating-frame oscillator and the
            bound-state construction does not apply.
    """
    omega = _checked_float("omega", omega)
    l = int(l)
    m = config.effective_mass
    mu = config.kratzer_mu
    tau2 = config.kratzer_tau2
    gamma = math.sqrt(l * l + 2.0 * m * tau2)
    varpi_sq = 0.25 * omega * omega + config.Omega * omega
    if varpi_sq <= 0.0:
        raise NonConfiningChannelError(
            f"non-confining channel: omega**2/4 + Omega*omega = {varpi_sq!r} <= 0 "
            f"for omega={omega!r}, Omega={config.Omega!r}"
        )
    varpi = math.sqrt(varpi_sq)
    theta = 2.0 * m * mu / math.sqrt(m * varpi)
    return ChannelParams(
        m=m,
        omega=omega,
        Omega=config.Omega,
        l=l,
        gamma=gamma,
        mu=mu,
        tau2=tau2,
        varpi=varpi,
        theta=theta,
    )


def energy_from_nu(ch: ChannelParams, nu: float) -> EnergyRecord:
    """Rotating-frame energy for truncation label ``nu`` in channel ``ch``.

    E = varpi*(nu/2 + 1 + gamma) - Omega*l - omega*l/2.  For quasi-exact
    levels nu = 2*n and the stored ``n`` equals that integer; for other nu
    the nearest integer is recorded and ``nu`` itself stays authoritative.
    """
    nu = _checked_float("nu", nu)
    if ch.varpi <= 0:
        raise NonConfiningChannelError(f"varpi must be positive, got {ch.varpi!r}")
    E = ch.varpi * (0.5 * nu + 1.0 + ch.gamma) - ch.Omega * ch.l - 0.5 * ch.omega * ch.l
    beta = ch.m * ch.varpi * (nu + 2.0 + 2.0 * ch.gamma)
    return EnergyRecord(n=int(round(0.5 * nu)), l=ch.l, E=E, beta=beta, nu=nu)


def nu_from_energy(ch: ChannelParams, E: float) -> float:
    """Invert the energy relation: recover nu from a rotating-frame energy."""
    E = _checked_float("E", E)
    if ch.varpi <= 0:
        raise NonConfiningChannelError(f"varpi must be positive, got {ch.varpi!r}")
    beta = 2.0 * ch.m * E + 2.0 * ch.m * ch.Omega * ch.l + ch.m * ch.omega * ch.l
    return beta / (ch.m * ch.varpi) - 2.0 - 2.0 * ch.gamma
