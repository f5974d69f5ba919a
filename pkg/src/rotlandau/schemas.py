"""Wire models for the HTTP service and the run manifest."""

from __future__ import annotations

import hashlib
import json
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ._version import __version__
from .model import PhysicalConfig

Branch = Literal["plus", "minus", "both"]
Format = Literal["csv", "json"]


class ConfigPayload(BaseModel):
    """JSON form of a physical configuration; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

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

    def to_physical(self) -> PhysicalConfig:
        return PhysicalConfig.from_dict(self.model_dump(exclude_none=True))

    def digest(self) -> str:
        """sha256 over the canonical (sorted-key, compact) JSON of set fields."""
        canonical = json.dumps(
            self.model_dump(exclude_none=True), sort_keys=True, separators=(",", ":")
        )
        return hashlib.sha256(canonical.encode("ascii")).hexdigest()


class RunManifest(BaseModel):
    """Reproducibility header attached to every command's output."""

    command: str
    config_digest: str
    params: dict[str, float | int | str | None]
    version: str = __version__
    format: Format | None = None


class SpectrumRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigPayload
    n_min: int = Field(default=1, ge=1)
    n_max: int = Field(default=1, ge=1)
    l_min: int = -1
    l_max: int = 1
    branch: Branch = "plus"

    @model_validator(mode="after")
    def _ranges(self):
        if self.n_max < self.n_min:
            raise ValueError("n_max must be >= n_min")
        if self.l_max < self.l_min:
            raise ValueError("l_max must be >= l_min")
        return self


class SpectrumRow(BaseModel):
    """One spectrum line, or a placeholder marking an absent channel.

    ``status`` is "ok" for real lines; absent channels keep their (n, l),
    carry branch "-", null numeric fields, and a status naming the reason.
    """

    n: int
    l: int
    branch: str
    theta: float | None
    varpi: float | None
    omega: float | None
    energy: float | None
    terminated: bool | None
    status: str


class SpectrumResponse(BaseModel):
    manifest: RunManifest
    rows: list[SpectrumRow]


class WavefunctionRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigPayload
    n: int = Field(ge=1)
    l: int
    branch: Literal["plus", "minus"] = "plus"
    root_index: int = Field(default=0, ge=0)
    r_max: float = Field(default=8.0, gt=0)
    samples: int = Field(default=201, ge=1)


class ChannelInfo(BaseModel):
    """Channel header echoed with wavefunction samples; r is dimensionless."""

    m: float
    omega: float
    Omega: float
    l: int
    gamma: float
    mu: float
    tau2: float
    varpi: float
    theta: float
    k: float
    n: int
    branch: str
    norm_squared: float
    r_unit: str = "r = sqrt(m*varpi)*rho"


class WavefunctionRow(BaseModel):
    r: float
    f: float


class WavefunctionResponse(BaseModel):
    manifest: RunManifest
    channel: ChannelInfo
    rows: list[WavefunctionRow]


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigPayload
    n_min: int = Field(default=1, ge=1)
    n_max: int = Field(default=1, ge=1)
    l_min: int = 0
    l_max: int = 0
    grid_n: int = Field(default=4000, ge=100)
    r_max: float = Field(default=12.0, gt=0)
    omega_override: float | None = None

    @model_validator(mode="after")
    def _ranges(self):
        if self.n_max < self.n_min:
            raise ValueError("n_max must be >= n_min")
        if self.l_max < self.l_min:
            raise ValueError("l_max must be >= l_min")
        return self


class GridInfo(BaseModel):
    r_max: float
    N: int


class VerifyRow(BaseModel):
    """One oracle report; lambda_numeric and gap refer to the refined grid."""

    n: int
    l: int
    theta: float | None
    lambda_analytic: float
    lambda_numeric: float | None
    gap: float | None
    gap_coarse: float | None
    nodes: int | None
    overlap: float | None
    subcritical: bool
    refined: bool
    grid: GridInfo
    passed: bool
    status: str


class VerifyResponse(BaseModel):
    manifest: RunManifest
    rows: list[VerifyRow]
    passed: bool


class CoeffsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gamma: float = Field(ge=0)
    theta: float
    nu: float
    K: int = Field(ge=1, le=500)

    def digest(self) -> str:
        canonical = json.dumps(self.model_dump(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("ascii")).hexdigest()


class CoeffsRow(BaseModel):
    k: int
    a: float


class CoeffsResponse(BaseModel):
    manifest: RunManifest
    rows: list[CoeffsRow]
