"""HTTP service exposing the solver; every endpoint is a stateless pure function.

Handlers hold no mutable state and touch no globals, so the app is safe under
FastAPI's default threadpool concurrency and results are reproducible: the
same request body always yields the same response body.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ._version import __version__
from .errors import (
    ConfigError,
    NoAdmissibleRootError,
    NonConfiningChannelError,
    NoNearbyEigenvalueError,
    RotlandauError,
)
from .heun import HeunParams, generate_coefficients
from .oracle import OracleReport, RadialGrid, verify_quasi_exact
from .schemas import (
    ChannelInfo,
    CoeffsRequest,
    CoeffsResponse,
    CoeffsRow,
    GridInfo,
    RunManifest,
    SpectrumRequest,
    SpectrumResponse,
    SpectrumRow,
    VerifyRequest,
    VerifyResponse,
    VerifyRow,
    WavefunctionRequest,
    WavefunctionResponse,
    WavefunctionRow,
)
from .spectrum import allowed_frequencies
from .wavefunction import norm_squared, radial_wavefunction

_ABSENT_BRANCH = "-"


def _absent_row(n: int, l: int, status: str) -> SpectrumRow:
    return SpectrumRow(
        n=n,
        l=l,
        branch=_ABSENT_BRANCH,
        theta=None,
        varpi=None,
        omega=None,
        energy=None,
        terminated=None,
        status=status,
    )


def _spectrum_rows(req: SpectrumRequest) -> list[SpectrumRow]:
    cfg = req.config.to_physical()
    branches = ("plus", "minus") if req.branch == "both" else (req.branch,)
    rows: list[SpectrumRow] = []
    for n in range(req.n_min, req.n_max + 1):
        for l in range(req.l_min, req.l_max + 1):
            try:
                lines = allowed_frequencies(n, l, cfg, branches=branches)
            except NoAdmissibleRootError:
                rows.append(_absent_row(n, l, "no admissible root"))
            except NonConfiningChannelError:
                rows.append(_absent_row(n, l, "non-confining"))
            else:
                for line in lines:
                    rows.append(
                        SpectrumRow(
                            n=line.n,
                            l=line.l,
                            branch=line.omega_branch,
                            theta=line.theta_root,
                            varpi=line.varpi,
                            omega=line.omega,
                            energy=line.E,
                            terminated=line.terminated,
                            status="ok",
                        )
                    )
    return rows


def _report_row(report: OracleReport, status: str) -> VerifyRow:
    return VerifyRow(
        n=report.n,
        l=report.l,
        theta=report.theta,
        lambda_analytic=report.lambda_analytic,
        lambda_numeric=report.lambda_numeric,
        gap=report.abs_gap,
        gap_coarse=report.gap_coarse,
        nodes=report.node_count_numeric,
        overlap=report.overlap,
        subcritical=report.subcritical,
        refined=report.refined,
        grid=GridInfo(r_max=report.grid.r_max, N=report.grid.N),
        passed=report.passed,
        status=status,
    )


def _verify_rows(req: VerifyRequest) -> list[VerifyRow]:
    cfg = req.config.to_physical()
    grid = RadialGrid(r_max=req.r_max, N=req.grid_n)
    rows: list[VerifyRow] = []
    for n in range(req.n_min, req.n_max + 1):
        for l in range(req.l_min, req.l_max + 1):
            roots = len(allowed_frequencies(n, l, cfg, branches=("plus",)))
            for root_index in range(roots):
                try:
                    report = verify_quasi_exact(
                        n,
                        l,
                        cfg,
                        grid=grid,
                        root_index=root_index,
                        omega_override=req.omega_override,
                    )
                    status = "ok" if report.passed else "tolerance ladder failed"
                    if report.subcritical:
                        status += "; subcritical channel (gamma < 1/2)"
                    rows.append(_report_row(report, status))
                except NoNearbyEigenvalueError as err:
                    rows.append(_report_row(err.report, "no nearby eigenvalue"))
    return rows


def create_app() -> FastAPI:
    app = FastAPI(
        title="rotlandau",
        version=__version__,
        description=(
            "Quasi-exact cyclotron frequencies, bound-state energies and radial "
            "profiles for an induced electric dipole with a Kratzer-type potential "
            "in a rotating frame."
        ),
    )

    @app.exception_handler(RotlandauError)
    async def _domain_error(request: Request, exc: RotlandauError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum(req: SpectrumRequest) -> SpectrumResponse:
        manifest = RunManifest(
            command="spectrum",
            config_digest=req.config.digest(),
            params={
                "n_min": req.n_min,
                "n_max": req.n_max,
                "l_min": req.l_min,
                "l_max": req.l_max,
                "branch": req.branch,
            },
        )
        return SpectrumResponse(manifest=manifest, rows=_spectrum_rows(req))

    @app.post("/wavefunction", response_model=WavefunctionResponse)
    def wavefunction(req: WavefunctionRequest) -> WavefunctionResponse:
        cfg = req.config.to_physical()
        lines = allowed_frequencies(req.n, req.l, cfg, branches=(req.branch,))
        if req.root_index >= len(lines):
            raise ConfigError(
                f"root_index: channel (n={req.n}, l={req.l}) has {len(lines)} "
                f"roots, got {req.root_index}"
            )
        line = lines[req.root_index]
        rf = radial_wavefunction(line, cfg)
        try:
            norm = norm_squared(rf, r_max=max(8.0, req.r_max))
        except RotlandauError:
            norm = norm_squared(rf, r_max=max(8.0, req.r_max), intervals=8192)
        r, f = rf.sample(req.r_max, req.samples)
        manifest = RunManifest(
            command="wavefunction",
            config_digest=req.config.digest(),
            params={
                "n": req.n,
                "l": req.l,
                "branch": req.branch,
                "root_index": req.root_index,
                "r_max": req.r_max,
                "samples": req.samples,
            },
        )
        channel = ChannelInfo(
            m=cfg.effective_mass,
            omega=line.omega,
            Omega=cfg.Omega,
            l=line.l,
            gamma=line.gamma,
            mu=cfg.kratzer_mu,
            tau2=cfg.kratzer_tau2,
            varpi=line.varpi,
            theta=line.theta_root,
            k=0.0,
            n=line.n,
            branch=line.omega_branch,
            norm_squared=norm,
        )
        rows = [WavefunctionRow(r=float(ri), f=float(fi)) for ri, fi in zip(r, f)]
        return WavefunctionResponse(manifest=manifest, channel=channel, rows=rows)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        manifest = RunManifest(
            command="verify",
            config_digest=req.config.digest(),
            params={
                "n_min": req.n_min,
                "n_max": req.n_max,
                "l_min": req.l_min,
                "l_max": req.l_max,
                "grid_n": req.grid_n,
                "r_max": req.r_max,
                "omega_override": req.omega_override,
            },
        )
        rows = _verify_rows(req)
        return VerifyResponse(manifest=manifest, rows=rows, passed=all(r.passed for r in rows))

    @app.post("/coeffs", response_model=CoeffsResponse)
    def coeffs(req: CoeffsRequest) -> CoeffsResponse:
        series = generate_coefficients(
            HeunParams(gamma=req.gamma, theta=req.theta, nu=req.nu), req.K
        )
        manifest = RunManifest(
            command="coeffs",
            config_digest=req.digest(),
            params={"gamma": req.gamma, "theta": req.theta, "nu": req.nu, "K": req.K},
        )
        rows = [CoeffsRow(k=k, a=a) for k, a in enumerate(series.coeffs)]
        return CoeffsResponse(manifest=manifest, rows=rows)

    return app


app = create_app()
