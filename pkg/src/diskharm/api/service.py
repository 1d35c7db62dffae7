"""FastAPI service wrapping the core package.

Every endpoint delegates to a plain ``do_*`` function so the CLI can call
the same service layer in-process; the HTTP surface adds nothing beyond
transport.  Domain errors map to 400, configuration errors to 400,
sense violations to 409, and convergence failures to 502.
"""

from __future__ import annotations

import math

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..boundary import boundary_derivative, list_presets, lp_circle_norm
from ..calculus import local_geometry, polar
from ..constants import constant_table
from ..ellipticity import classify, min_kprime, qr_constant
from ..errors import ConvergenceError, DiskharmError, SenseViolationError
from ..extension import extend, extend_oracle
from ..norms import bergman_norm, circle_mean, hardy_norm, scalar_field
from ..verify import (check_lemma_fr, check_lemma_ft, check_thm1_bergman,
                      check_thm2_finite, check_thm2_infinite,
                      run_counterexample, run_suite)
from .schemas import (ConstantRow, ConstantsRequest, ConstantsResponse, DerivativePackModel, DeriveRequest,
                      DeriveResponse, EllipticityRequest, EllipticityResponse,
                      ExtendRequest, ExtendResponse, HealthResponse,
                      LocalGeometryModel, NormReportModel, NormRequest,
                      PointValue, PresetsResponse, SuiteRequest,
                      SuiteResponse, VerificationReportModel, VerifyRequest,
                      exponent_value, parse_point)


def _pt(z: complex) -> list:
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# service layer
# ---------------------------------------------------------------------------

def do_extend(req: ExtendRequest) -> ExtendResponse:
    spec = req.boundary.to_spec()
    fld = extend(spec, req.truncation)
    values = []
    for raw in req.points:
        z = parse_point(raw)
        data = fld.point_data(z)
        oracle = gap = None
        if req.include_oracle:
            o = extend_oracle(spec, z, tol=req.oracle_tolerance)
            oracle, gap = _pt(o), abs(o - data.f)
        values.append(PointValue(z=_pt(z), f=_pt(data.f),
                                 error_bound=data.tail_f,
                                 degraded=data.degraded,
                                 oracle=oracle, oracle_gap=gap))
    return ExtendResponse(boundary=spec.describe(),
                          truncation=fld.pair.truncation,
                          mean_value=_pt(fld.mean_value), values=values)


def do_derive(req: DeriveRequest) -> DeriveResponse:
    spec = req.boundary.to_spec()
    fld = extend(spec, req.truncation)
    z = parse_point(req.z)
    pack = polar(fld, z)
    geom = local_geometry(fld, z)
    return DeriveResponse(
        boundary=spec.describe(),
        pack=DerivativePackModel(z=_pt(pack.z), f_z=_pt(pack.f_z),
                                 f_zbar=_pt(pack.f_zbar), f_t=_pt(pack.f_t),
                                 f_r=_pt(pack.f_r), degraded=pack.degraded),
        geometry=LocalGeometryModel(
            op_norm=geom.op_norm, min_stretch=geom.min_stretch,
            jacobian=geom.jacobian,
            dilatation=None if geom.dilatation is None else _pt(geom.dilatation),
            dilatation_defined=geom.dilatation_defined, sense=geom.sense))


def do_norm(req: NormRequest) -> NormReportModel:
    spec = req.boundary.to_spec()
    p = exponent_value(req.p)
    if req.kind == "circle-lp":
        target = boundary_derivative(spec) if req.of_derivative else spec
        report = lp_circle_norm(target, p)
    else:
        fld = extend(spec, req.truncation)
        scalar = scalar_field(fld, req.scalar)
        if req.kind == "circle-mean":
            report = circle_mean(scalar, req.r, p)
        elif req.kind == "hardy":
            report = hardy_norm(scalar, p, levels=req.levels)
        else:
            report = bergman_norm(scalar, p, levels=req.levels)
    return NormReportModel(**report.to_dict())


def do_constants(req: ConstantsRequest) -> ConstantsResponse:
    rows = [ConstantRow(**rep.to_dict())
            for rep in constant_table(sorted(req.p))]
    return ConstantsResponse(rows=rows)


def do_ellipticity(req: EllipticityRequest) -> EllipticityResponse:
    spec = req.boundary.to_spec()
    fld = extend(spec, req.truncation)
    if req.mode == "min-kprime":
        report = min_kprime(fld, req.K[0], req.levels,
                            angular_base=req.angular_base)
    elif req.mode == "qr":
        report = qr_constant(fld, req.levels, angular_base=req.angular_base)
    else:
        report = classify(fld, req.K, req.levels,
                          angular_base=req.angular_base)
    return EllipticityResponse(report=report.to_dict())


def do_verify(req: VerifyRequest) -> VerificationReportModel:
    spec = req.boundary.to_spec() if req.boundary is not None else None
    p = exponent_value(req.p) if req.p is not None else None
    kw = {"levels": req.levels, "n_trunc": req.truncation}
    if req.statement == "lemma-ft":
        report = check_lemma_ft(spec, p, **kw)
    elif req.statement == "lemma-fr":
        report = check_lemma_fr(spec, p, **kw)
    elif req.statement == "thm1-bergman":
        report = check_thm1_bergman(spec, p, **kw)
    elif req.statement == "thm1-counterexample":
        report = run_counterexample(levels=req.levels,
                                    n_trunc=req.truncation)
    elif req.statement == "thm2-finite-p":
        report = check_thm2_finite(spec, p, req.K, req.Kprime,
                                   seed=req.seed, **kw)
    else:
        report = check_thm2_infinite(spec, req.K, req.Kprime,
                                     seed=req.seed, **kw)
    return VerificationReportModel(**report.to_dict())


def do_suite(req: SuiteRequest) -> SuiteResponse:
    suite = run_suite(presets=req.presets, levels=req.levels,
                      n_trunc=req.truncation, seed=req.seed)
    doc = suite.to_dict()
    return SuiteResponse(config=doc["config"], summary=doc["summary"],
                         reports=[VerificationReportModel(**r)
                                  for r in doc["reports"]])


def do_presets() -> PresetsResponse:
    return PresetsResponse(presets=list_presets())


# ---------------------------------------------------------------------------
# HTTP app
# ---------------------------------------------------------------------------

def create_app() -> FastAPI:
    app = FastAPI(
        title="diskharm",
        version=__version__,
        description="Harmonic extensions on the unit disk: derivative "
                    "norms, ellipticity classification and inequality "
                    "verification.")

    @app.exception_handler(DiskharmError)
    async def _domain_error(request, exc: DiskharmError):
        status = 400
        if isinstance(exc, SenseViolationError):
            status = 409
        elif isinstance(exc, ConvergenceError):
            status = 502
        return JSONResponse(status_code=status,
                            content={"detail": str(exc),
                                     "type": type(exc).__name__})

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.get("/presets", response_model=PresetsResponse)
    def presets():
        return do_presets()

    @app.post("/extend", response_model=ExtendResponse)
    def extend_endpoint(req: ExtendRequest):
        return do_extend(req)

    @app.post("/derive", response_model=DeriveResponse)
    def derive_endpoint(req: DeriveRequest):
        return do_derive(req)

    @app.post("/norm", response_model=NormReportModel)
    def norm_endpoint(req: NormRequest):
        return do_norm(req)

    @app.post("/constants", response_model=ConstantsResponse)
    def constants_endpoint(req: ConstantsRequest):
        return do_constants(req)

    @app.post("/ellipticity", response_model=EllipticityResponse)
    def ellipticity_endpoint(req: EllipticityRequest):
        return do_ellipticity(req)

    @app.post("/verify", response_model=VerificationReportModel,
              response_model_by_alias=True)
    def verify_endpoint(req: VerifyRequest):
        return do_verify(req)

    @app.post("/suite", response_model=SuiteResponse,
              response_model_by_alias=True)
    def suite_endpoint(req: SuiteRequest):
        return do_suite(req)

    return app


app = create_app()
