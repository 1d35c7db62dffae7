import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import diskharm as dh
from diskharm.errors import ConvergenceError, DomainError
from diskharm.quadrature import integrate_or_raise

TWO_PI = 2.0 * math.pi


# -- Poisson kernel -----------------------------------------------------------

def test_kernel_at_center():
    for theta in (0.0, 1.0, 3.5):
        assert math.isclose(dh.poisson_kernel(0.0, theta), 1.0 / TWO_PI,
                            rel_tol=1e-15)


def test_kernel_on_positive_axis():
    r = 0.37
    expected = (1.0 + r) / (1.0 - r) / TWO_PI
    assert math.isclose(dh.poisson_kernel(r, 0.0), expected, rel_tol=1e-13)


def test_kernel_normalization_quadrature():
    z = 0.3 + 0.4j
    res = integrate_or_raise(lambda t: dh.poisson_kernel(z, t), 0.0, TWO_PI,
                             tol_abs=1e-12, breakpoints=(cmath.phase(z),))
    np.testing.assert_allclose(res.value, 1.0, atol=1e-11)


@given(st.floats(0.0, 0.95), st.floats(0.0, TWO_PI), st.floats(0.0, TWO_PI))
def test_kernel_positive(r, phase, theta):
    z = r * cmath.exp(1j * phase)
    assert dh.poisson_kernel(z, theta) > 0.0


def test_kernel_outside_disk():
    with pytest.raises(DomainError):
        dh.poisson_kernel(1.0, 0.0)
    with pytest.raises(DomainError):
        dh.poisson_kernel(2.0 + 1.0j, 0.3)


# -- series extension ---------------------------------------------------------

def test_identity_extension():
    fld = dh.extend(dh.preset("mode:1"))
    for z in (0.1, 0.5j, -0.3 + 0.2j, 0.85):
        assert abs(fld.eval(z) - z) < 1e-14


def test_two_mode_extension():
    fld = dh.extend(dh.fourier({1: 1.0, -1: 1.0}))
    for z in (0.2, 0.7j, 0.4 - 0.4j):
        expected = z + np.conj(z)
        assert abs(fld.eval(z) - expected) < 1e-14


def test_abs_sin_center_value():
    fld = dh.extend(dh.preset("abs-sin"))
    assert abs(fld.eval(0.0) - 2.0 / math.pi) < 1e-15


@pytest.mark.parametrize("name", dh.list_presets())
def test_mean_value_property(name, fields):
    fld = fields[name]
    assert abs(fld.mean_value - fld.spec.coefficient(0)) < 1e-12
    assert abs(fld.eval(0.0) - fld.mean_value) < 1e-12


def test_eval_outside_disk():
    fld = dh.extend(dh.preset("const"))
    with pytest.raises(DomainError):
        fld.eval(1.0)


# -- quadrature oracle --------------------------------------------------------

def test_oracle_constant():
    spec = dh.preset("const")
    for z in (0.0, 0.5, 0.3 - 0.6j):
        assert abs(dh.extend_oracle(spec, z) - 1.0) < 1e-10


def test_oracle_identity():
    assert abs(dh.extend_oracle(dh.preset("mode:1"), 0.5j) - 0.5j) < 1e-10


def test_oracle_abs_sin_center():
    assert abs(dh.extend_oracle(dh.preset("abs-sin"), 0.0) - 2 / math.pi) < 1e-11


def test_oracle_budget_exhaustion():
    with pytest.raises(ConvergenceError) as exc:
        dh.extend_oracle(dh.preset("abs-sin"), 0.995, tol=1e-13, max_panels=12)
    assert exc.value.best is not None
    assert exc.value.residual > 0


@pytest.mark.parametrize("name", dh.list_presets())
def test_oracle_agreement_seeded_points(name, fields):
    fld = fields[name]
    spec = fld.spec
    rng = np.random.default_rng(42)
    for _ in range(20):
        z = 0.9 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, TWO_PI))
        series = fld.eval(z)
        oracle = dh.extend_oracle(spec, z, tol=1e-11)
        data = fld.point_data(z)
        assert abs(series - oracle) <= data.tail_f + 1e-9


def test_linearity_pointwise():
    a, b = 2.0 - 1.0j, 0.5j
    f_spec = dh.preset("mode:1")
    g_spec = dh.preset("conj-half")
    combo = dh.linear_combination([(a, f_spec), (b, g_spec)])
    f1, f2, f3 = dh.extend(f_spec), dh.extend(g_spec), dh.extend(combo)
    for z in (0.3, -0.5j, 0.6 + 0.2j):
        assert abs(f3.eval(z) - (a * f1.eval(z) + b * f2.eval(z))) < 1e-12


def test_harmonicity_stencil(abs_sin_field):
    # five-point Laplacian of a harmonic function vanishes to O(h^2)
    h = 1e-3
    rng = np.random.default_rng(7)
    for _ in range(20):
        z = 0.8 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, TWO_PI))
        f = abs_sin_field.eval
        lap = (f(z + h) + f(z - h) + f(z + 1j * h) + f(z - 1j * h)
               - 4.0 * f(z)) / h ** 2
        scale = 1.0 + abs(f(z))
        assert abs(lap) <= 1e-4 * scale


# -- adaptive truncation ------------------------------------------------------

def test_truncation_cap_flags_degraded():
    fld = dh.extend(dh.preset("abs-sin"), 8)
    data = fld.point_data(0.9)
    assert data.degraded
    assert data.tail_deriv > 1e-8


def test_default_cap_is_accurate_near_boundary():
    fld = dh.extend(dh.preset("abs-sin"))
    data = fld.point_data(1.0 - 2.0 ** -12)
    assert not data.degraded
    assert fld.pair_for_radius(1.0 - 2.0 ** -12).truncation > 512


def test_band_limited_specs_never_grow():
    fld = dh.extend(dh.preset("conj-quad"))
    assert fld.pair_for_radius(1.0 - 2.0 ** -14).truncation == 2
    data = fld.point_data(1.0 - 2.0 ** -14)
    assert not data.degraded
    assert data.tail_f == 0.0


def test_circle_data_matches_point_data(abs_sin_field):
    r, m = 0.75, 64
    cd = abs_sin_field.circle_data(r, m)
    for j in (0, 5, 31):
        z = r * cmath.exp(1j * cd.theta[j])
        pd = abs_sin_field.point_data(z)
        assert abs(cd.f[j] - pd.f) < 1e-12
        assert abs(cd.fz[j] - pd.fz) < 1e-12
        assert abs(cd.fzbar[j] - pd.fzbar) < 1e-12


def test_circle_cache_idempotent(abs_sin_field):
    a = abs_sin_field.circle_data(0.5, 128)
    b = abs_sin_field.circle_data(0.5, 128)
    np.testing.assert_array_equal(a.f, b.f)
    c = abs_sin_field.circle_data(0.5, 64)   # sliced from the finer grid
    np.testing.assert_array_equal(c.f, a.f[::2])
