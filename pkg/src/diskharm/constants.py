"""The radial kernel constant C(p) and its closed-form upper bound.

C(p) = int_0^1 (4 artanh(r) / (pi r))^p r dr.  The integrand is smooth on
[0, 1/2] after removing the 0/0 at the origin (artanh(r)/r -> 1) and blows
up like |log(1 - r)|^p at the right endpoint; the outer half is integrated
in the substituted variable u = -log(1 - r), where the integrand decays
like (u + log 2)^p e^{-u} and the truncated tail has an elementary bound.

The upper bound is (4^(p-1) / pi^p) (2^p + (2 - 2^-p) Gamma(1 + p)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericOverflowError, UnsupportedExponentError
from .quadrature import integrate_or_raise
from .reports import decode_p, encode_float

_FOUR_OVER_PI = 4.0 / math.pi
_LOG2 = math.log(2.0)


@dataclass
class ConstantReport:
    p: float
    c_value: float
    upper_bound: float
    quadrature_error: float

    def __post_init__(self):
        if not (self.c_value > 0 and self.upper_bound > 0):
            raise ValueError("C(p) and its bound must be positive")
        if self.c_value > self.upper_bound + self.quadrature_error:
            raise ValueError("computed C(p) exceeds its closed-form bound")

    @property
    def margin(self) -> float:
        return self.upper_bound - self.c_value

    def to_dict(self) -> dict:
        return {
            "p": encode_float(self.p),
            "c_value": self.c_value,
            "upper_bound": self.upper_bound,
            "quadrature_error": self.quadrature_error,
            "margin": self.margin,
        }


def _inner_integrand(p):
    def g(r):
        r = np.asarray(r, dtype=float)
        ratio = np.where(r < 1e-8, 1.0 + r * r / 3.0,
                         np.arctanh(np.where(r < 1e-8, 0.5, r))
                         / np.where(r < 1e-8, 1.0, r))
        return (_FOUR_OVER_PI * ratio) ** p * r
    return g


def _outer_integrand(p):
    # r = 1 - e^{-u}; artanh(r) = (log(2 - e^{-u}) + u) / 2; dr = e^{-u} du
    def g(u):
        u = np.asarray(u, dtype=float)
        eu = np.exp(-u)
        r = -np.expm1(-u)
        artanh = 0.5 * (np.log(2.0 - eu) + u)
        return (_FOUR_OVER_PI * artanh / r) ** p * r * eu
    return g


def _outer_tail_bound(p: float, u: float) -> float:
    # for u >= 2p the integrand decays at least like e^{-u/2}
    return 2.0 * ((2.0 / math.pi) * (u + _LOG2)) ** p * math.exp(-u)


def c_of_p(p, *, tol: float = 1e-10) -> ConstantReport:
    """C(p) by adaptive quadrature with endpoint handling; p in [1, inf)."""
    p = decode_p(p)
    if math.isinf(p):
        raise UnsupportedExponentError("C(p) is defined for finite p only")
    if p < 1:
        raise UnsupportedExponentError("C(p) needs p >= 1")
    inner = integrate_or_raise(_inner_integrand(p), 0.0, 0.5,
                               tol_abs=tol / 4, max_panels=2048)
    u_max = max(40.0, 2.0 * p + 20.0)
    while _outer_tail_bound(p, u_max) > tol / 4 and u_max < 1000.0:
        u_max += 20.0
    tail = _outer_tail_bound(p, u_max)
    seeds = list(np.linspace(_LOG2, u_max, 9))
    outer = integrate_or_raise(_outer_integrand(p), _LOG2, u_max,
                               tol_abs=tol / 4, breakpoints=seeds[1:-1],
                               max_panels=4096)
    value = inner.real + outer.real
    err = inner.error + outer.error + tail
    return ConstantReport(p=p, c_value=value,
                          upper_bound=c_upper_bound(p),
                          quadrature_error=err)


def c_upper_bound(p) -> float:
    """(4^(p-1) / pi^p) (2^p + (2 - 2^-p) Gamma(1 + p)); exact closed form."""
    p = decode_p(p)
    if math.isinf(p):
        raise UnsupportedExponentError("the bound is defined for finite p only")
    if p < 1:
        raise UnsupportedExponentError("the bound needs p >= 1")
    try:
        value = (4.0 ** (p - 1.0) / math.pi ** p) * \
            (2.0 ** p + (2.0 - 2.0 ** (-p)) * math.gamma(1.0 + p))
    except OverflowError as exc:
        raise NumericOverflowError(
            f"C(p) bound overflows double precision at p = {p}") from exc
    if math.isinf(value):
        raise NumericOverflowError(
            f"C(p) bound overflows double precision at p = {p}")
    return value


def constant_table(ps, *, tol: float = 1e-10) -> list[ConstantReport]:
    return [c_of_p(p, tol=tol) for p in ps]
