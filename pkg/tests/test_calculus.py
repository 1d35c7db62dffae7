import cmath
import math

import numpy as np
import pytest

import diskharm as dh
from diskharm.errors import SingularPointError

TWO_PI = 2.0 * math.pi


def _seeded_points(count, rmax=0.9, seed=42):
    rng = np.random.default_rng(seed)
    return [rmax * math.sqrt(rng.uniform())
            * cmath.exp(1j * rng.uniform(0, TWO_PI)) for _ in range(count)]


# -- Wirtinger derivatives ----------------------------------------------------

def test_wirtinger_identity_map():
    fld = dh.extend(dh.preset("mode:1"))
    fz, fzb = dh.wirtinger(fld, 0.3 + 0.1j)
    assert fz == 1.0
    assert fzb == 0.0  # analytic field: exactly zero


def test_wirtinger_conjugate_map():
    fld = dh.extend(dh.preset("mode:-1"))
    fz, fzb = dh.wirtinger(fld, 0.2j)
    assert fz == 0.0
    assert fzb == 1.0


def test_wirtinger_conj_quad():
    # f(z) = z + conj(z)^2 / 2 has f_z = 1 and f_zbar = conj(z)
    fld = dh.extend(dh.preset("conj-quad"))
    for z in (0.5, 0.3 - 0.4j, 0.7j):
        fz, fzb = dh.wirtinger(fld, z)
        assert abs(fz - 1.0) < 1e-14
        assert abs(fzb - np.conj(z)) < 1e-14


@pytest.mark.parametrize("name", dh.list_presets())
def test_wirtinger_vs_central_differences(name, fields):
    fld = fields[name]
    h = 1e-5
    for z in _seeded_points(10):
        f = fld.eval
        dx = (f(z + h) - f(z - h)) / (2 * h)
        dy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
        fz, fzb = dh.wirtinger(fld, z)
        assert abs(fz - 0.5 * (dx - 1j * dy)) < 1e-6
        assert abs(fzb - 0.5 * (dx + 1j * dy)) < 1e-6


# -- polar pack ---------------------------------------------------------------

def test_polar_identity_map():
    fld = dh.extend(dh.preset("mode:1"))
    z = 0.5 * cmath.exp(0.7j)
    pack = dh.polar(fld, z)
    r, t = 0.5, 0.7
    assert abs(pack.f_t - 1j * r * cmath.exp(1j * t)) < 1e-14
    assert abs(pack.f_r - cmath.exp(1j * t)) < 1e-14


def test_polar_constant():
    fld = dh.extend(dh.preset("const"))
    pack = dh.polar(fld, 0.4 + 0.2j)
    assert pack.f_t == 0 and pack.f_r == 0


@pytest.mark.parametrize("name", dh.list_presets())
def test_polar_identities_200_points(name, fields):
    fld = fields[name]
    for z in _seeded_points(200):
        pack = dh.polar(fld, z)
        scale = 1e-10 * (1.0 + abs(pack.f_z) + abs(pack.f_zbar))
        lhs_t = 1j * (z * pack.f_z - np.conj(z) * pack.f_zbar)
        assert abs(pack.f_t - lhs_t) <= scale
        phase = z / abs(z) if z != 0 else 1.0
        lhs_r = pack.f_z * phase + pack.f_zbar * np.conj(phase)
        assert abs(pack.f_r - lhs_r) <= scale


def test_polar_inversion_matches_wirtinger(abs_sin_field):
    pack = dh.polar(abs_sin_field, 0.5)
    fz, _ = dh.wirtinger(abs_sin_field, 0.5)
    assert abs(pack.f_z_from_polar() - fz) < 1e-10


def test_polar_at_origin():
    fld = dh.extend(dh.preset("abs-sin"))
    pack = dh.polar(fld, 0.0)
    assert pack.f_t == 0.0
    with pytest.raises(SingularPointError):
        pack.f_z_from_polar()


def test_directional_derivative_bounds(abs_sin_field):
    for z in _seeded_points(10, seed=3):
        geom = dh.local_geometry(abs_sin_field, z)
        for alpha in np.linspace(0.0, TWO_PI, 32, endpoint=False):
            mag = abs(dh.directional_derivative(abs_sin_field, z, alpha))
            assert geom.min_stretch - 1e-12 <= mag <= geom.op_norm + 1e-12


# -- local geometry -----------------------------------------------------------

def test_geometry_conj_quad():
    fld = dh.extend(dh.preset("conj-quad"))
    z = 0.6 * cmath.exp(1.1j)
    geom = dh.local_geometry(fld, z)
    r = abs(z)
    assert math.isclose(geom.op_norm, 1 + r, rel_tol=1e-13)
    assert math.isclose(geom.min_stretch, 1 - r, rel_tol=1e-13)
    assert math.isclose(geom.jacobian, 1 - r * r, rel_tol=1e-13)
    # dilatation g'/h' = conj(f_zbar)/f_z = z for this map
    assert abs(geom.dilatation - z) < 1e-14
    assert geom.sense == "preserving"


def test_geometry_identity():
    fld = dh.extend(dh.preset("mode:1"))
    geom = dh.local_geometry(fld, 0.5j)
    assert geom.op_norm == 1.0
    assert geom.min_stretch == 1.0
    assert geom.jacobian == 1.0
    assert geom.dilatation == 0.0
    assert geom.sense == "preserving"


def test_geometry_conjugate_is_sense_reversing():
    fld = dh.extend(dh.preset("mode:-1"))
    geom = dh.local_geometry(fld, 0.1 + 0.1j)
    assert geom.jacobian == -1.0
    assert geom.op_norm == 1.0
    assert geom.sense == "reversing"


def test_jacobian_factors_as_product(abs_sin_field):
    for z in _seeded_points(50, seed=11):
        geom = dh.local_geometry(abs_sin_field, z)
        prod = geom.op_norm * geom.min_stretch
        assert abs(abs(geom.jacobian) - prod) <= 1e-10 * (1.0 + prod)


@pytest.mark.parametrize("name", ["conj-quad", "conj-half", "random-trig"])
def test_dilatation_two_formulas_agree(name, fields):
    # g'/h' against conj(f_zbar)/f_z wherever defined
    fld = fields[name]
    for z in _seeded_points(30, seed=5):
        geom = dh.local_geometry(fld, z)
        if not geom.dilatation_defined:
            continue
        fz, fzb = dh.wirtinger(fld, z)
        alt = np.conj(fzb) / fz
        assert abs(geom.dilatation - alt) < 1e-12 * (1.0 + abs(alt))


def test_dilatation_undefined_at_critical_point():
    # h(z) = z^2 makes h'(0) = 0: dilatation must be flagged, not huge
    fld = dh.extend(dh.fourier({2: 1.0, -1: 0.3}))
    geom = dh.local_geometry(fld, 0.0)
    assert not geom.dilatation_defined
    assert geom.dilatation is None
