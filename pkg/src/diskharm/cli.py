"""Command-line client for the service layer.

Subcommands mirror the HTTP endpoints one-to-one; by default requests are
dispatched in-process, and ``--server URL`` sends the same payloads to a
running instance instead.  Exit codes: 0 success / all checks pass,
1 verification failure, 2 usage or configuration error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from pydantic import ValidationError

from . import __version__
from .api import schemas
from .api import service
from .config import RunConfig
from .errors import (ConfigError, ConvergenceError, DiskharmError,
                     DomainError, InvalidInputError, UnsupportedExponentError)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3

_PATHS = {
    "extend": ("/extend", schemas.ExtendResponse),
    "derive": ("/derive", schemas.DeriveResponse),
    "norm": ("/norm", schemas.NormReportModel),
    "constants": ("/constants", schemas.ConstantsResponse),
    "ellipticity": ("/ellipticity", schemas.EllipticityResponse),
    "verify": ("/verify", schemas.VerificationReportModel),
    "suite": ("/suite", schemas.SuiteResponse),
}


class Client:
    """Dispatches request models to the service layer or a remote server."""

    def __init__(self, server: str | None = None):
        self.server = server.rstrip("/") if server else None

    def call(self, name: str, request):
        if self.server is None:
            return getattr(service, f"do_{name}")(request)
        import httpx
        path, model = _PATHS[name]
        resp = httpx.post(self.server + path,
                          json=request.model_dump(mode="json"),
                          timeout=600.0)
        if resp.status_code >= 400:
            raise DiskharmError(f"server returned {resp.status_code}: "
                                f"{resp.text}")
        return model.model_validate(resp.json())


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _parse_complex(text: str) -> list[float]:
    parts = text.split(",")
    if len(parts) == 1:
        return [float(parts[0]), 0.0]
    if len(parts) == 2:
        return [float(parts[0]), float(parts[1])]
    raise argparse.ArgumentTypeError("points are 're' or 're,im'")


def _parse_p_list(text: str) -> list:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        out.append("inf" if tok.lower() in {"inf", "infinity", "oo"}
                   else float(tok))
    if not out:
        raise argparse.ArgumentTypeError("empty exponent list")
    return out


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _boundary_from_args(args) -> schemas.BoundaryModel:
    given_input = getattr(args, "input", None)
    given_preset = getattr(args, "preset", None)
    if given_input and given_preset:
        raise ConfigError("give either --input or --preset, not both")
    if given_input:
        with open(given_input, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return schemas.BoundaryModel.model_validate(doc)
    if given_preset:
        return schemas.BoundaryModel.from_preset(given_preset)
    raise ConfigError("a boundary is required: --preset NAME or --input FILE")


def _add_boundary_flags(sub):
    sub.add_argument("--input", metavar="FILE",
                     help="boundary spec as a JSON document")
    sub.add_argument("--preset", metavar="NAME",
                     help="named boundary preset (see `presets`)")


def _add_common_flags(sub):
    sub.add_argument("--levels", type=int, default=12,
                     help="radial refinement levels (radii 1 - 2^-k)")
    sub.add_argument("--N", type=int, default=1 << 16, dest="truncation",
                     help="series truncation cap (the series grows toward it adaptively)")
    sub.add_argument("--tol", type=float, default=1e-9,
                     help="quadrature tolerance")
    sub.add_argument("--seed", type=int, default=42,
                     help="seed for sampled spot checks")
    sub.add_argument("--out", metavar="FILE", help="write the report here")
    sub.add_argument("--format", choices=("json", "csv"), default="json",
                     help="report format (csv is a lossy convenience export)")
    sub.add_argument("--server", metavar="URL",
                     help="send the request to a running service instead "
                          "of computing in-process")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskharm",
        description="Poisson extensions on the unit disk: derivatives, "
                    "norms, ellipticity and inequality verification.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("extend", help="evaluate the harmonic extension")
    _add_boundary_flags(sp)
    sp.add_argument("--z", action="append", type=_parse_complex, default=[],
                    metavar="RE,IM", help="evaluation point (repeatable)")
    sp.add_argument("--oracle", action="store_true",
                    help="cross-check each point against the quadrature oracle")
    _add_common_flags(sp)

    sp = subs.add_parser("derive", help="derivatives and local geometry")
    _add_boundary_flags(sp)
    sp.add_argument("--z", type=_parse_complex, required=True,
                    metavar="RE,IM")
    _add_common_flags(sp)

    sp = subs.add_parser("norm", help="circle / Hardy / Bergman norms")
    _add_boundary_flags(sp)
    sp.add_argument("--kind", choices=("circle-mean", "hardy", "bergman",
                                       "circle-lp"), default="hardy")
    sp.add_argument("--scalar", choices=schemas.NormRequest.model_fields
                    ["scalar"].annotation.__args__, default="f")
    sp.add_argument("--p", type=_parse_p_list, default=[2.0],
                    help="exponent ('inf' allowed)")
    sp.add_argument("--r", type=float, help="radius for circle-mean")
    sp.add_argument("--of-derivative", action="store_true",
                    help="circle-lp: norm dF/dtheta instead of F")
    _add_common_flags(sp)

    sp = subs.add_parser("constants",
                         help="the radial kernel constant and its bound")
    sp.add_argument("--p", type=_parse_p_list, required=True,
                    help="comma list of finite exponents")
    _add_common_flags(sp)

    sp = subs.add_parser("ellipticity",
                         help="quasiregularity / ellipticity estimates")
    _add_boundary_flags(sp)
    sp.add_argument("--K", type=_parse_float_list, default=[1.0],
                    help="comma list of K values to scan")
    sp.add_argument("--mode", choices=("classify", "min-kprime", "qr"),
                    default="classify")
    sp.add_argument("--angular-base", type=int, default=64,
                    dest="angular_base",
                    help="level-1 angular count of the polar grid")
    _add_common_flags(sp)

    sp = subs.add_parser("verify", help="check one displayed inequality")
    sp.add_argument("statement", choices=("lemma-ft", "lemma-fr",
                                          "thm1-bergman",
                                          "thm1-counterexample",
                                          "thm2-finite-p", "thm2-infinite-p"))
    _add_boundary_flags(sp)
    sp.add_argument("--p", type=_parse_p_list,
                    help="exponent(s), 'inf' allowed")
    sp.add_argument("--K", type=float)
    sp.add_argument("--Kprime", type=float)
    _add_common_flags(sp)

    sp = subs.add_parser("suite", help="run every checker over the matrix")
    sp.add_argument("--presets", help="comma list of preset names")
    _add_common_flags(sp)

    sp = subs.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    sp = subs.add_parser("presets", help="list boundary presets")
    _add_common_flags(sp)
    return parser


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_rows(command: str, payload: dict) -> tuple[list[str], list[list]]:
    if command in {"verify", "suite"}:
        header = ["statement", "boundary", "p", "K", "Kprime",
                  "lhs", "rhs", "margin", "pass"]
        reports = payload["reports"] if command == "suite" else [payload]
        rows = []
        for rep in reports:
            par = rep.get("parameters", {})
            rows.append([rep.get("statement"), par.get("boundary", ""),
                         par.get("p", ""), par.get("K", ""),
                         par.get("Kprime", ""), rep.get("lhs"),
                         rep.get("rhs"), rep.get("margin"),
                         rep.get("pass")])
        return header, rows
    if command == "constants":
        header = ["p", "c_value", "upper_bound", "margin"]
        return header, [[r["p"], r["c_value"], r["upper_bound"], r["margin"]]
                        for r in payload["rows"]]
    if command == "norm":
        header = ["kind", "scalar_p", "value", "infinite", "extrapolated"]
        return header, [[payload["kind"], payload["p"], payload["value"],
                         payload["infinite"], payload.get("extrapolated")]]
    raise ConfigError(f"no csv export for the {command} command")


def _dump_csv(command: str, payload: dict) -> str:
    header, rows = _csv_rows(command, payload)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(args, command: str, payload: dict) -> None:
    if getattr(args, "format", "json") == "csv":
        text = _dump_csv(command, payload)
    else:
        text = _dump_json(payload)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------

def _run_extend(args, client: Client) -> int:
    req = schemas.ExtendRequest(boundary=_boundary_from_args(args),
                                points=args.z, truncation=args.truncation,
                                include_oracle=args.oracle,
                                oracle_tolerance=args.tol)
    resp = client.call("extend", req)
    _emit(args, "extend", resp.model_dump(mode="json"))
    return EXIT_OK


def _run_derive(args, client: Client) -> int:
    req = schemas.DeriveRequest(boundary=_boundary_from_args(args),
                                z=args.z, truncation=args.truncation)
    resp = client.call("derive", req)
    _emit(args, "derive", resp.model_dump(mode="json"))
    return EXIT_OK


def _run_norm(args, client: Client) -> int:
    req = schemas.NormRequest(boundary=_boundary_from_args(args),
                              kind=args.kind, scalar=args.scalar,
                              p=args.p[0], r=args.r,
                              of_derivative=args.of_derivative,
                              levels=args.levels,
                              truncation=args.truncation)
    resp = client.call("norm", req)
    _emit(args, "norm", resp.model_dump(mode="json"))
    return EXIT_OK


def _run_constants(args, client: Client) -> int:
    ps = [p for p in args.p]
    if any(isinstance(p, str) for p in ps):
        raise ConfigError("constants need finite exponents")
    resp = client.call("constants", schemas.ConstantsRequest(p=ps))
    _emit(args, "constants", resp.model_dump(mode="json"))
    return EXIT_OK


def _run_ellipticity(args, client: Client) -> int:
    req = schemas.EllipticityRequest(boundary=_boundary_from_args(args),
                                     mode=args.mode, K=args.K,
                                     levels=args.levels,
                                     angular_base=args.angular_base,
                                     truncation=args.truncation)
    resp = client.call("ellipticity", req)
    _emit(args, "ellipticity", resp.model_dump(mode="json"))
    return EXIT_OK


def _run_verify(args, client: Client) -> int:
    boundary = None
    if args.statement != "thm1-counterexample":
        boundary = _boundary_from_args(args)
    ps = args.p if args.p is not None else [None]
    reports = []
    for p in ps:
        req = schemas.VerifyRequest(statement=args.statement,
                                    boundary=boundary, p=p, K=args.K,
                                    Kprime=args.Kprime, levels=args.levels,
                                    truncation=args.truncation,
                                    seed=args.seed)
        reports.append(client.call("verify", req))
    if len(reports) == 1:
        payload = reports[0].model_dump(mode="json", by_alias=True)
        _emit(args, "verify", payload)
        return EXIT_OK if reports[0].passed else EXIT_VERIFICATION_FAILED
    payload = {"reports": [r.model_dump(mode="json", by_alias=True)
                           for r in reports]}
    _emit(args, "suite", payload)
    return EXIT_OK if all(r.passed for r in reports) \
        else EXIT_VERIFICATION_FAILED


def _run_suite(args, client: Client) -> int:
    presets = None
    if args.presets is not None:
        presets = [tok.strip() for tok in args.presets.split(",")
                   if tok.strip()]
        if not presets:
            raise ConfigError("empty preset list")
    # validates levels/seed ranges the same way the service does
    RunConfig(truncation=args.truncation, tolerance=args.tol,
              levels=args.levels, seed=args.seed)
    req = schemas.SuiteRequest(presets=presets, levels=args.levels,
                               truncation=args.truncation, seed=args.seed)
    resp = client.call("suite", req)
    _emit(args, "suite", resp.model_dump(mode="json", by_alias=True))
    for rep in resp.reports:
        status = "pass" if rep.passed else "FAIL"
        par = rep.parameters
        tag = " ".join(str(x) for x in
                       (par.get("boundary", ""), "p=" + str(par.get("p", "-")))
                       if x)
        print(f"[{status}] {rep.statement} {tag}", file=sys.stderr)
    return EXIT_OK if resp.summary["failed"] == 0 \
        else EXIT_VERIFICATION_FAILED


def _run_presets(args, client: Client) -> int:
    resp = service.do_presets()
    _emit(args, "presets", resp.model_dump(mode="json"))
    return EXIT_OK


def _run_serve(args) -> int:
    import uvicorn
    uvicorn.run("diskharm.api.service:app", host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "serve":
            return _run_serve(args)
        client = Client(getattr(args, "server", None))
        handler = {
            "extend": _run_extend,
            "derive": _run_derive,
            "norm": _run_norm,
            "constants": _run_constants,
            "ellipticity": _run_ellipticity,
            "verify": _run_verify,
            "suite": _run_suite,
            "presets": _run_presets,
        }[args.command]
        return handler(args, client)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ConfigError, InvalidInputError, DomainError,
            UnsupportedExponentError, ValidationError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DiskharmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
