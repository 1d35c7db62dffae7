"""Pydantic request/response models for the HTTP service and the CLI.

The wire encoding of a boundary function follows the documented JSON
schema: ``{"kind": "preset"|"fourier"|"sampled", "name"?, "coefficients"?
(list of [n, re, im]), "samples"? (list of [re, im]), "smooth"?,
"derivative"?}``.  Exponents accept the string "inf"; infinities in
responses are encoded the same way.
"""

from __future__ import annotations

import math
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from ..boundary import BoundarySpec
from ..reports import decode_p

Point = list[float]  # [re, im]


def parse_point(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError("points are [re, im] pairs")


class BoundaryModel(BaseModel):
    kind: Literal["preset", "fourier", "sampled"] = "preset"
    name: Optional[str] = None
    coefficients: Optional[list[list[float]]] = None
    samples: Optional[list[list[float]]] = None
    smooth: bool = False
    derivative: Optional["BoundaryModel"] = None

    @model_validator(mode="after")
    def _shape(self):
        if self.kind == "preset" and not self.name:
            raise ValueError("preset boundary needs a name")
        if self.kind == "fourier" and self.coefficients is None:
            raise ValueError("fourier boundary needs coefficients")
        if self.kind == "sampled" and self.samples is None:
            raise ValueError("sampled boundary needs samples")
        return self

    def to_spec(self) -> BoundarySpec:
        return BoundarySpec.from_json(self.model_dump(exclude_none=True))

    @classmethod
    def from_preset(cls, name: str) -> "BoundaryModel":
        return cls(kind="preset", name=name)


Exponent = Union[float, Literal["inf"]]


def exponent_value(p: Exponent) -> float:
    return decode_p(p)


def encode_exponent(p: float):
    return "inf" if math.isinf(p) else p


class ExtendRequest(BaseModel):
    boundary: BoundaryModel
    points: list[Point] = Field(default_factory=list)
    truncation: int = Field(default=1 << 16, ge=1, le=1 << 16)
    include_oracle: bool = False
    oracle_tolerance: float = Field(default=1e-9, gt=0)

    @field_validator("points")
    @classmethod
    def _inside(cls, pts):
        for pt in pts:
            z = parse_point(pt)
            if abs(z) >= 1.0:
                raise ValueError(f"point {pt} lies outside the open disk")
        return pts


class PointValue(BaseModel):
    z: Point
    f: Point
    error_bound: float
    degraded: bool
    oracle: Optional[Point] = None
    oracle_gap: Optional[float] = None


class ExtendResponse(BaseModel):
    boundary: str
    truncation: int
    mean_value: Point
    values: list[PointValue]


class DeriveRequest(BaseModel):
    boundary: BoundaryModel
    z: Point
    truncation: int = Field(default=1 << 16, ge=1, le=1 << 16)

    @field_validator("z")
    @classmethod
    def _inside(cls, pt):
        if abs(parse_point(pt)) >= 1.0:
            raise ValueError("z must lie inside the open disk")
        return pt


class DerivativePackModel(BaseModel):
    z: Point
    f_z: Point
    f_zbar: Point
    f_t: Point
    f_r: Point
    degraded: bool


class LocalGeometryModel(BaseModel):
    op_norm: float
    min_stretch: float
    jacobian: float
    dilatation: Optional[Point] = None
    dilatation_defined: bool
    sense: str


class DeriveResponse(BaseModel):
    boundary: str
    pack: DerivativePackModel
    geometry: LocalGeometryModel


class NormRequest(BaseModel):
    boundary: BoundaryModel
    kind: Literal["circle-mean", "hardy", "bergman", "circle-lp"] = "hardy"
    scalar: Literal["f", "fz", "fzbar", "fr", "ft", "ft_over_r",
                    "opnorm", "minstretch"] = "f"
    p: Exponent = 2.0
    r: Optional[float] = Field(default=None, ge=0.0, lt=1.0)
    of_derivative: bool = False   # circle-lp only: norm dF/dtheta instead of F
    levels: int = Field(default=12, ge=1, le=24)
    truncation: int = Field(default=1 << 16, ge=1, le=1 << 16)

    @model_validator(mode="after")
    def _needs_radius(self):
        if self.kind == "circle-mean" and self.r is None:
            raise ValueError("circle-mean needs a radius r")
        return self


class NormReportModel(BaseModel):
    kind: str
    p: Exponent
    value: Optional[float] = None
    infinite: bool = False
    error_estimate: float
    extrapolated: Optional[float] = None
    grid: dict = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)
    diagnostics: dict = Field(default_factory=dict)


class ConstantsRequest(BaseModel):
    p: list[float] = Field(min_length=1)

    @field_validator("p")
    @classmethod
    def _finite(cls, ps):
        for p in ps:
            if not (p >= 1 and math.isfinite(p)):
                raise ValueError("constants need finite p >= 1")
        return ps


class ConstantRow(BaseModel):
    p: float
    c_value: float
    upper_bound: float
    quadrature_error: float
    margin: float


class ConstantsResponse(BaseModel):
    rows: list[ConstantRow]


class EllipticityRequest(BaseModel):
    boundary: BoundaryModel
    mode: Literal["classify", "min-kprime", "qr"] = "classify"
    K: list[float] = Field(default_factory=lambda: [1.0])
    levels: int = Field(default=12, ge=1, le=20)
    angular_base: int = Field(default=64, ge=8, le=4096)
    truncation: int = Field(default=1 << 16, ge=1, le=1 << 16)

    @field_validator("K")
    @classmethod
    def _k_range(cls, ks):
        if not ks:
            raise ValueError("K list must not be empty")
        for k in ks:
            if k < 1:
                raise ValueError("K values must be >= 1")
        return ks


class EllipticityResponse(BaseModel):
    report: dict


class VerifyRequest(BaseModel):
    statement: Literal["lemma-ft", "lemma-fr", "thm1-bergman",
                       "thm1-counterexample", "thm2-finite-p",
                       "thm2-infinite-p"]
    boundary: Optional[BoundaryModel] = None
    p: Optional[Exponent] = None
    K: Optional[float] = None
    Kprime: Optional[float] = Field(default=None, ge=0.0)
    levels: int = Field(default=12, ge=1, le=24)
    truncation: int = Field(default=1 << 16, ge=1, le=1 << 16)
    seed: int = Field(default=42, ge=0)

    @model_validator(mode="after")
    def _statement_inputs(self):
        needs_boundary = self.statement != "thm1-counterexample"
        if needs_boundary and self.boundary is None:
            raise ValueError(f"statement {self.statement} needs a boundary")
        needs_p = self.statement in {"lemma-ft", "lemma-fr", "thm1-bergman",
                                     "thm2-finite-p"}
        if needs_p and self.p is None:
            raise ValueError(f"statement {self.statement} needs an exponent p")
        return self


class VerificationReportModel(BaseModel):
    statement: str
    parameters: dict
    lhs: Union[float, str]
    rhs: Union[float, str]
    margin: Union[float, str]
    passed: bool = Field(alias="pass")
    tolerances: dict
    notes: list[str] = Field(default_factory=list)
    diagnostics: dict = Field(default_factory=dict)

    model_config = {"populate_by_name": True}


class SuiteRequest(BaseModel):
    presets: Optional[list[str]] = None
    levels: int = Field(default=12, ge=6, le=24)
    truncation: int = Field(default=1 << 16, ge=1, le=1 << 16)
    seed: int = Field(default=42, ge=0)

    @field_validator("presets")
    @classmethod
    def _nonempty(cls, names):
        if names is not None and len(names) == 0:
            raise ValueError("preset list must not be empty")
        return names


class SuiteResponse(BaseModel):
    config: dict
    summary: dict
    reports: list[VerificationReportModel]


class PresetsResponse(BaseModel):
    presets: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str
