import math

import numpy as np
import pytest

import diskharm as dh
from diskharm.errors import InvalidInputError, UnsupportedExponentError
from diskharm.norms import divergence_flag, extrapolate_geometric


# -- circle means -------------------------------------------------------------

def test_circle_mean_constant():
    fld = dh.extend(dh.fourier({0: 2.5}))
    s = dh.scalar_field(fld, "f")
    for r in (0.1, 0.5, 0.9):
        for p in (1, 2, 3.5, math.inf):
            rep = dh.circle_mean(s, r, p)
            assert math.isclose(rep.value, 2.5, rel_tol=1e-12)


def test_circle_mean_identity_modulus():
    fld = dh.extend(dh.preset("mode:1"))
    rep = dh.circle_mean(dh.scalar_field(fld, "f"), 0.7, 2)
    assert math.isclose(rep.value, 0.7, rel_tol=1e-12)


def test_circle_mean_ft_bounded_by_slope_norm(abs_sin_field):
    # an instance of the angular-derivative bound at one interior radius
    rep = dh.circle_mean(dh.scalar_field(abs_sin_field, "ft"), 0.5, 1)
    assert rep.value <= 2.0 / math.pi + 1e-9


def test_unsupported_exponent():
    fld = dh.extend(dh.preset("const"))
    s = dh.scalar_field(fld, "f")
    with pytest.raises(UnsupportedExponentError):
        dh.circle_mean(s, 0.5, 0.99)
    with pytest.raises(UnsupportedExponentError):
        dh.hardy_norm(s, 0.5)
    with pytest.raises(UnsupportedExponentError):
        dh.bergman_norm(s, 0.3)


def test_unknown_scalar_kind():
    fld = dh.extend(dh.preset("const"))
    with pytest.raises(InvalidInputError):
        dh.scalar_field(fld, "curl")


# -- Hardy norms --------------------------------------------------------------

def test_hardy_identity_modulus_extrapolates_to_one():
    fld = dh.extend(dh.preset("mode:1"))
    for p in (1, 2, 7):
        rep = dh.hardy_norm(dh.scalar_field(fld, "f"), p)
        assert math.isclose(rep.value, 1.0 - 2.0 ** -12, rel_tol=1e-12)
        assert abs(rep.extrapolated - 1.0) < 1e-9


def test_hardy_fz_of_identity():
    fld = dh.extend(dh.preset("mode:1"))
    rep = dh.hardy_norm(dh.scalar_field(fld, "fz"), 3)
    assert math.isclose(rep.best, 1.0, rel_tol=1e-12)


def test_hardy_opnorm_conj_quad_sup():
    fld = dh.extend(dh.preset("conj-quad"))
    rep = dh.hardy_norm(dh.scalar_field(fld, "opnorm"), math.inf)
    assert math.isclose(rep.value, 2.0 - 2.0 ** -12, rel_tol=1e-10)
    assert abs(rep.extrapolated - 2.0) < 1e-9


def test_hardy_profile_monotone_for_subharmonic():
    fld = dh.extend(dh.fourier({0: 0.3, 1: 1.0, 3: -0.5j, 6: 0.25}))
    rep = dh.hardy_norm(dh.scalar_field(fld, "f"), 2)
    dyadic = rep.diagnostics["radial_values"][4:]
    assert all(b >= a - 1e-12 for a, b in zip(dyadic, dyadic[1:]))


# -- Bergman norms ------------------------------------------------------------

def test_bergman_constant():
    fld = dh.extend(dh.fourier({0: 1.5}))
    for p in (1, 2, 3):
        rep = dh.bergman_norm(dh.scalar_field(fld, "f"), p)
        assert abs(rep.value - 1.5) <= rep.error_estimate + 1e-9


def test_bergman_identity_modulus():
    # int_D |z|^2 dsigma = 1/2
    fld = dh.extend(dh.preset("mode:1"))
    rep = dh.bergman_norm(dh.scalar_field(fld, "f"), 2)
    assert abs(rep.value - math.sqrt(0.5)) <= rep.error_estimate + 1e-9
    assert rep.error_estimate < 1e-5


def test_bergman_region_split_adds_up():
    fld = dh.extend(dh.preset("conj-half"))
    rep = dh.bergman_norm(dh.scalar_field(fld, "fr"), 2)
    parts = rep.diagnostics["integral"]
    total = parts["inner"] + parts["outer"]
    assert math.isclose(total, rep.value ** 2, rel_tol=1e-9)


def test_bergman_abs_sin_fz_finite(abs_sin_field):
    rep = dh.bergman_norm(dh.scalar_field(abs_sin_field, "fz"), 2)
    assert not rep.infinite
    assert rep.value > 0
    assert math.isfinite(rep.value)


def test_bergman_inf_is_sup(abs_sin_field):
    rep = dh.bergman_norm(dh.scalar_field(abs_sin_field, "f"), math.inf)
    assert rep.kind == "bergman"
    # |f| <= ||F||_inf = 1 by the kernel's unit mass
    assert rep.value <= 1.0 + 1e-9


# -- structural invariants ----------------------------------------------------

@pytest.mark.parametrize("name,kind", [("abs-sin", "fz"), ("conj-quad", "fr"),
                                       ("random-trig", "opnorm")])
@pytest.mark.parametrize("p", [1, 2])
def test_bergman_dominated_by_hardy(fields, name, kind, p):
    scalar = dh.scalar_field(fields[name], kind)
    area = dh.bergman_norm(scalar, p)
    sup = dh.hardy_norm(scalar, p)
    budget = area.error_estimate + sup.error_estimate + 1e-6
    assert area.value <= sup.best + budget


def test_homogeneity_of_both_norms():
    lam = -3.25
    base = {1: 1.0, -2: 0.5j}
    one = dh.extend(dh.fourier(base))
    two = dh.extend(dh.fourier({n: lam * c for n, c in base.items()}))
    for kind in ("f", "opnorm"):
        for p in (1, 2):
            a = dh.bergman_norm(dh.scalar_field(one, kind), p).value
            b = dh.bergman_norm(dh.scalar_field(two, kind), p).value
            assert math.isclose(b, abs(lam) * a, rel_tol=1e-12)
            ha = dh.hardy_norm(dh.scalar_field(one, kind), p).value
            hb = dh.hardy_norm(dh.scalar_field(two, kind), p).value
            assert math.isclose(hb, abs(lam) * ha, rel_tol=1e-12)


def test_parseval_route():
    table = {0: 0.3, 1: 1.0, 3: -0.5j, 6: 0.25}
    fld = dh.extend(dh.fourier(table))
    s = dh.scalar_field(fld, "f")
    for r in (0.3, 0.8, 1.0 - 2.0 ** -8):
        rep = dh.circle_mean(s, r, 2)
        expected = math.sqrt(sum(abs(c) ** 2 * r ** (2 * n)
                                 for n, c in table.items()))
        assert abs(rep.value - expected) <= 1e-10 * (1.0 + expected)


# -- helpers ------------------------------------------------------------------

def test_divergence_flag_synthetic():
    growing = [1e3 * 1.06 ** k for k in range(8)]
    assert divergence_flag(growing)
    settling = [1e4 * (1.0 - 2.0 ** -k) for k in range(10)]
    assert not divergence_flag(settling)
    small = [1.06 ** k for k in range(12)]    # grows but below threshold
    assert not divergence_flag(small)


def test_extrapolate_geometric():
    seq = [1.0 - 2.0 ** -k for k in range(1, 9)]
    limit, err = extrapolate_geometric(seq)
    assert abs(limit - 1.0) < 1e-12
    none, _ = extrapolate_geometric([1.0, 2.0, 4.0])   # diverging
    assert none is None
    flat, _ = extrapolate_geometric([2.0, 2.0, 2.0])
    assert flat == 2.0
