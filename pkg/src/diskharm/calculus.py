"""Derivatives and local geometry of a disk field.

Everything here is termwise series differentiation of the underlying
holomorphic pair; numerical differencing is reserved for the test suite.
With f = h + conj(g):

    f_z = h',   f_zbar = conj(g'),
    f_t = i (z f_z - conj(z) f_zbar),   f_r = f_z e^{it} + f_zbar e^{-it},
    ||D_f|| = |f_z| + |f_zbar|,  l(D_f) = ||f_z| - |f_zbar||,
    J_f = |f_z|^2 - |f_zbar|^2,  dilatation = g'/h'.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import SingularPointError
from .extension import DiskField

# below this relative size of h', the dilatation is reported undefined
DILATATION_FLOOR = 1e-14


@dataclass
class DerivativePack:
    """All four first derivatives of f at one interior point."""

    z: complex
    f_z: complex
    f_zbar: complex
    f_t: complex
    f_r: complex
    degraded: bool = False

    def f_z_from_polar(self) -> complex:
        """Recover f_z from (f_r, f_t) via the polar inversion identity."""
        r, t = abs(self.z), cmath.phase(self.z)
        if r == 0.0:
            raise SingularPointError(
                "polar inversion needs z != 0 (f_t / r is singular there)")
        return 0.5 * cmath.exp(-1j * t) * (self.f_r - 1j * self.f_t / r)

    def directional(self, alpha: float) -> complex:
        """The directional derivative along e^{i alpha}."""
        return (self.f_z * cmath.exp(1j * alpha)
                + self.f_zbar * cmath.exp(-1j * alpha))


@dataclass
class LocalGeometry:
    op_norm: float          # max directional stretch |f_z| + |f_zbar|
    min_stretch: float      # min directional stretch ||f_z| - |f_zbar||
    jacobian: float
    dilatation: complex | None
    dilatation_defined: bool
    sense: str              # "preserving" | "reversing" | "degenerate"


def wirtinger(field: DiskField, z: complex) -> tuple[complex, complex]:
    """(f_z, f_zbar) at z by series differentiation."""
    data = field.point_data(z)
    return data.fz, data.fzbar


def polar(field: DiskField, z: complex) -> DerivativePack:
    """The derivative pack at z; f_t and f_r follow from f_z and f_zbar."""
    data = field.point_data(z)
    z = data.z
    fz, fzb = data.fz, data.fzbar
    f_t = 1j * (z * fz - z.conjugate() * fzb)
    if z == 0:
        phase = 1.0 + 0j
    else:
        phase = z / abs(z)
    f_r = fz * phase + fzb * phase.conjugate()
    return DerivativePack(z=z, f_z=fz, f_zbar=fzb, f_t=f_t, f_r=f_r,
                          degraded=data.degraded)


def directional_derivative(field: DiskField, z: complex,
                           alpha: float) -> complex:
    return polar(field, z).directional(alpha)


def geometry_from_derivatives(fz: complex, fzbar: complex,
                              hp: complex | None = None,
                              gp: complex | None = None) -> LocalGeometry:
    a, b = abs(fz), abs(fzbar)
    jac = a * a - b * b
    scale = 1.0 + a * a + b * b
    if jac > DILATATION_FLOOR * scale:
        sense = "preserving"
    elif jac < -DILATATION_FLOOR * scale:
        sense = "reversing"
    else:
        sense = "degenerate"
    if hp is None:
        hp, gp = fz, fzbar.conjugate()
    if abs(hp) > DILATATION_FLOOR * (1.0 + abs(gp)):
        omega, defined = gp / hp, True
    else:
        omega, defined = None, False
    return LocalGeometry(op_norm=a + b, min_stretch=abs(a - b), jacobian=jac,
                         dilatation=omega, dilatation_defined=defined,
                         sense=sense)


def local_geometry(field: DiskField, z: complex) -> LocalGeometry:
    """Stretch extremes, Jacobian and second complex dilatation at z.

    The dilatation is computed as g'/h' (it agrees with conj(f_zbar)/f_z;
    the test suite asserts this) and is flagged undefined near zeros of h'.
    """
    z = complex(z)
    data = field.point_data(z)
    pair = field.pair_for_radius(abs(z))
    return geometry_from_derivatives(data.fz, data.fzbar,
                                     hp=pair.hprime(z), gp=pair.gprime(z))
