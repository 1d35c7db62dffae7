"""Quasiregularity and ellipticity estimates for a disk field.

A sense-preserving field satisfies ||D_f||^2 <= K J_f + K' for suitable
constants; this module estimates the smallest admissible K' at a given K,
the supremum of the dilatation modulus |omega| = |g'/h'|, and combines the
two into a classification.  All estimates are suprema over growing polar
grids (radii 1 - 2^{-k}, angular count doubling with each level), so they
are certified lower bounds with a reported per-level trend, never claims
about the exact supremum on the open disk.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, SenseViolationError
from .extension import DiskField
from .norms import extrapolate_geometric
from .reports import encode_float

ANGULAR_BASE = 64
ANGULAR_CAP = 1 << 17
DILATATION_FLOOR = 1e-14


@dataclass
class EllipticityReport:
    label: str
    sense: str
    levels: int
    grid: dict
    K: float | None = None
    kprime_estimate: float | None = None
    kprime_levels: list = field(default_factory=list)
    kprime_by_K: dict | None = None
    qr_constant: float | None = None
    qr_levels: list = field(default_factory=list)
    qr_approaches_one: bool = False
    undefined_dilatation_points: int = 0
    classification: str | None = None
    derived_K: float | None = None
    notes: tuple = ()

    def to_dict(self) -> dict:
        out = {
            "label": self.label,
            "sense": self.sense,
            "levels": self.levels,
            "grid": self.grid,
            "notes": list(self.notes),
        }
        if self.K is not None:
            out["K"] = self.K
        if self.kprime_estimate is not None:
            out["kprime_estimate"] = self.kprime_estimate
            out["kprime_levels"] = self.kprime_levels
        if self.kprime_by_K is not None:
            out["kprime_by_K"] = {str(k): v
                                  for k, v in self.kprime_by_K.items()}
        if self.qr_constant is not None:
            out["qr_constant"] = self.qr_constant
            out["qr_levels"] = self.qr_levels
            out["qr_approaches_one"] = self.qr_approaches_one
            out["undefined_dilatation_points"] = self.undefined_dilatation_points
        if self.classification is not None:
            out["classification"] = self.classification
        if self.derived_K is not None:
            out["derived_K"] = encode_float(self.derived_K)
        return out


def _level_grid(levels: int, base: int = ANGULAR_BASE):
    """(radius, angular count) per refinement level; the union grows."""
    for k in range(1, levels + 1):
        yield 1.0 - 2.0 ** (-k), min(base * 2 ** (k - 1), ANGULAR_CAP)


def _sense_check(cd, label):
    jac = np.abs(cd.fz) ** 2 - np.abs(cd.fzbar) ** 2
    bad = np.nonzero(jac <= 0.0)[0]
    if bad.size:
        i = int(bad[0])
        point = cd.r * cmath.exp(1j * cd.theta[i])
        raise SenseViolationError(
            f"{label}: Jacobian {jac[i]:.3e} <= 0 at z = {point:.6f}",
            point=point, jacobian=float(jac[i]))
    return jac


def min_kprime(fld: DiskField, K: float, levels: int = 12, *,
               angular_base: int = ANGULAR_BASE) -> EllipticityReport:
    """Grid estimate of the smallest K' with ||D_f||^2 <= K J_f + K'.

    The estimate is max(0, sup of ||D_f||^2 - K J_f) over the growing
    polar grid; per-level values are reported for trend extrapolation.
    Raises :class:`SenseViolationError` when J_f <= 0 anywhere on the grid.
    """
    if K < 1:
        raise InvalidInputError("K must be >= 1")
    label = fld.spec.describe()
    best = 0.0
    per_level = []
    for r, m in _level_grid(levels, angular_base):
        cd = fld.circle_data(r, m)
        jac = _sense_check(cd, label)
        opnorm2 = (np.abs(cd.fz) + np.abs(cd.fzbar)) ** 2
        gap = float(np.max(opnorm2 - K * jac))
        best = max(best, gap, 0.0)
        per_level.append(best)
    return EllipticityReport(
        label=label, sense="preserving", levels=levels,
        grid={"radii": "1 - 2^-k", "angular_base": angular_base},
        K=float(K), kprime_estimate=best, kprime_levels=per_level,
        notes=("grid supremum: a lower bound of the disk supremum",))


def qr_constant(fld: DiskField, levels: int = 12, *,
                angular_base: int = ANGULAR_BASE) -> EllipticityReport:
    """Grid supremum of the dilatation modulus |g'/h'|.

    Points where h' (numerically) vanishes are excluded from the supremum
    and counted.  A persistent trend of the per-level suprema toward 1
    raises the not-quasiregular-for-any-K flag.
    """
    label = fld.spec.describe()
    best = 0.0
    undefined = 0
    per_level = []
    for r, m in _level_grid(levels, angular_base):
        cd = fld.circle_data(r, m)
        _sense_check(cd, label)
        hp = cd.fz
        gp = np.conj(cd.fzbar)
        defined = np.abs(hp) > DILATATION_FLOOR * (1.0 + np.abs(gp))
        undefined += int((~defined).sum())
        if defined.any():
            best = max(best, float(np.max(np.abs(gp[defined] / hp[defined]))))
        per_level.append(best)
    approaching = _trend_toward_one(per_level)
    return EllipticityReport(
        label=label, sense="preserving", levels=levels,
        grid={"radii": "1 - 2^-k", "angular_base": angular_base},
        qr_constant=best, qr_levels=per_level,
        qr_approaches_one=approaching,
        undefined_dilatation_points=undefined,
        notes=("sup|dilatation| -> 1 implies not K-quasiregular for any K",)
        if approaching else ())


def _trend_toward_one(per_level, window: int = 3) -> bool:
    if len(per_level) < window + 1 or per_level[-1] < 0.9:
        return False
    gaps = [1.0 - q for q in per_level[-(window + 1):]]
    return all(g1 <= 0.7 * g0 + 1e-15 for g0, g1 in zip(gaps, gaps[1:]))


def classify(fld: DiskField, K_scan=(1.0,), levels: int = 12, *,
             angular_base: int = ANGULAR_BASE) -> EllipticityReport:
    """Combined report: quasiregular when sup|omega| stays away from 1,
    otherwise an elliptic candidate with the K' estimates for each scanned K.

    The derived constant K = (1 + q) / (1 - q) is a convenience from the
    grid estimate q, flagged as implementation-derived.
    """
    qr = qr_constant(fld, levels, angular_base=angular_base)
    q = qr.qr_constant
    report = EllipticityReport(
        label=qr.label, sense=qr.sense, levels=levels, grid=qr.grid,
        qr_constant=q, qr_levels=qr.qr_levels,
        qr_approaches_one=qr.qr_approaches_one,
        undefined_dilatation_points=qr.undefined_dilatation_points)
    limit, _ = extrapolate_geometric(qr.qr_levels)
    settled = limit if limit is not None else q
    if not qr.qr_approaches_one and settled < 0.999:
        report.classification = f"quasiregular (q ~ {settled:.6g})"
        report.derived_K = (1.0 + settled) / (1.0 - settled)
        report.notes = ("derived_K = (1+q)/(1-q) is implementation-derived, "
                        "not a closed-form constant",)
    else:
        scan = {float(K): min_kprime(fld, K, levels,
                                     angular_base=angular_base).kprime_estimate
                for K in K_scan}
        report.kprime_by_K = scan
        ks = ", ".join(f"({k:g}, ~{v:.4g})" for k, v in scan.items())
        report.classification = f"elliptic candidate: {ks}"
        report.notes = ("sup|dilatation| trends to 1: "
                        "not K-quasiregular for any K",)
    return report
