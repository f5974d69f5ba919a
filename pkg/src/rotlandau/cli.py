"""Command-line client for the solver service.

Subcommands build a request, send it to the HTTP service (an in-process
instance by default, or a remote one via --server) and render the response.
Exit codes: 0 success, 1 usage or configuration error, 2 verification
failure.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

from .render import fmt_float, render_csv, render_json

SPECTRUM_COLUMNS = ["n", "l", "branch", "theta", "varpi", "omega", "energy", "terminated", "status"]
VERIFY_COLUMNS = ["n", "l", "lambda_analytic", "lambda_numeric", "gap", "nodes", "passed"]
WAVEFUNCTION_COLUMNS = ["r", "f"]
COEFFS_COLUMNS = ["k", "a"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this tool reserves 2 for
    # verification failures, so usage errors are remapped to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rotlandau",
        description=(
            "Quasi-exact cyclotron frequencies, energies and radial profiles for "
            "an induced electric dipole with a Kratzer-type potential in a "
            "rotating frame."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="path to a JSON configuration file")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--server", default=None, help="base URL of a running service; default runs in-process")

    p = sub.add_parser("spectrum", help="allowed frequencies and energies over (n, l) ranges")
    common(p)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=1)
    p.add_argument("--l-min", type=int, default=-1)
    p.add_argument("--l-max", type=int, default=1)
    p.add_argument("--branch", choices=("plus", "minus", "both"), default="plus")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("wavefunction", help="sampled radial profile of one bound state")
    common(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--root-index", type=int, default=0, help="which truncation root when n >= 3 has several")
    p.add_argument("--r-max", type=float, default=8.0)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(handler=_cmd_wavefunction)

    p = sub.add_parser("verify", help="check lines against the finite-difference oracle")
    common(p)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=1)
    p.add_argument("--l-min", type=int, default=0)
    p.add_argument("--l-max", type=int, default=0)
    p.add_argument("--grid-n", type=int, default=4000)
    p.add_argument("--r-max", type=float, default=12.0)
    p.add_argument(
        "--omega-override",
        type=float,
        default=None,
        help="verify at this frequency instead of the quasi-exact one (negative control)",
    )
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("coeffs", help="series coefficients a_0..a_K for given (gamma, theta, nu)")
    common(p, config=False)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--k-max", type=int, required=True, help="highest coefficient index K")
    p.set_defaults(handler=_cmd_coeffs)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=_cmd_serve)

    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as err:
        raise SystemExit(f"config: {path}: {err.strerror or err}") from None
    except json.JSONDecodeError as err:
        raise SystemExit(f"config: {path}: invalid JSON: {err}") from None
    if not isinstance(raw, dict):
        raise SystemExit(f"config: {path}: expected a JSON object")
    return raw


def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server:
        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
        return resp.status_code, resp.json()

    from .service import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://service") as client:
            return await client.post(path, json=payload, timeout=600.0)

    resp = asyncio.run(go())
    return resp.status_code, resp.json()


def _print_error(body: dict) -> None:
    detail = body.get("detail", body)
    if isinstance(detail, list):  # request-validation errors carry field paths
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
            sys.stderr.write(f"rotlandau: error: {loc}: {item.get('msg')}\n")
    else:
        sys.stderr.write(f"rotlandau: error: {detail}\n")


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _cmd_spectrum(args) -> int:
    payload = {
        "config": _load_config(args.config),
        "n_min": args.n_min,
        "n_max": args.n_max,
        "l_min": args.l_min,
        "l_max": args.l_max,
        "branch": args.branch,
    }
    status, body = _post(args.server, "/spectrum", payload)
    if status != 200:
        _print_error(body)
        return 1
    body["manifest"]["format"] = args.format
    if args.format == "csv":
        _emit(render_csv(body["manifest"], SPECTRUM_COLUMNS, body["rows"]))
    else:
        _emit(render_json(body))
    return 0


def _cmd_wavefunction(args) -> int:
    payload = {
        "config": _load_config(args.config),
        "n": args.n,
        "l": args.l,
        "branch": args.branch,
        "root_index": args.root_index,
        "r_max": args.r_max,
        "samples": args.samples,
    }
    status, body = _post(args.server, "/wavefunction", payload)
    if status != 200:
        _print_error(body)
        return 1
    body["manifest"]["format"] = args.format
    if args.format == "csv":
        ch = body["channel"]
        channel_comment = "# channel " + " ".join(
            f"{key}={fmt_float(ch[key]) if isinstance(ch[key], float) else ch[key]}"
            for key in ("n", "l", "branch", "m", "omega", "Omega", "gamma", "mu", "tau2", "varpi", "theta", "k", "norm_squared")
        )
        comments = (channel_comment, f"# {ch['r_unit']} (dimensionless radius)")
        _emit(render_csv(body["manifest"], WAVEFUNCTION_COLUMNS, body["rows"], comments))
    else:
        _emit(render_json(body))
    return 0


def _cmd_verify(args) -> int:
    payload = {
        "config": _load_config(args.config),
        "n_min": args.n_min,
        "n_max": args.n_max,
        "l_min": args.l_min,
        "l_max": args.l_max,
        "grid_n": args.grid_n,
        "r_max": args.r_max,
        "omega_override": args.omega_override,
    }
    status, body = _post(args.server, "/verify", payload)
    if status != 200:
        _print_error(body)
        return 1
    body["manifest"]["format"] = args.format
    if args.format == "csv":
        rows = [
            {
                "n": r["n"],
                "l": r["l"],
                "lambda_analytic": r["lambda_analytic"],
                "lambda_numeric": r["lambda_numeric"],
                "gap": r["gap"],
                "nodes": r["nodes"],
                "passed": r["passed"],
            }
            for r in body["rows"]
        ]
        _emit(render_csv(body["manifest"], VERIFY_COLUMNS, rows))
    else:
        _emit(render_json(body))
    return 0 if body["passed"] else 2


def _cmd_coeffs(args) -> int:
    payload = {"gamma": args.gamma, "theta": args.theta, "nu": args.nu, "K": args.k_max}
    status, body = _post(args.server, "/coeffs", payload)
    if status != 200:
        _print_error(body)
        return 1
    body["manifest"]["format"] = args.format
    if args.format == "csv":
        _emit(render_csv(body["manifest"], COEFFS_COLUMNS, body["rows"]))
    else:
        _emit(render_json(body))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("rotlandau.service:app", host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except SystemExit as err:
        if isinstance(err.code, str):  # _load_config failures carry their message
            sys.stderr.write(f"rotlandau: error: {err.code}\n")
            return 1
        return int(err.code or 0)
    except httpx.HTTPError as err:
        sys.stderr.write(f"rotlandau: error: request failed: {err}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
