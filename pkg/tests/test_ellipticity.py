import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import diskharm as dh
from diskharm.errors import SenseViolationError


def test_conj_quad_kprime_anchor(fields):
    # ||D||^2 - J = 2r + 2r^2 climbs to 4; at levels=12 the grid sits
    # within 8 * 2^-12 of it
    rep = dh.min_kprime(fields["conj-quad"], 1.0, 12)
    assert 4.0 - 8.0 * 2.0 ** -12 <= rep.kprime_estimate <= 4.0
    seq = rep.kprime_levels
    assert all(b >= a for a, b in zip(seq, seq[1:]))


def test_identity_needs_no_slack(fields):
    rep = dh.min_kprime(fields["mode:1"], 1.0, 10)
    assert rep.kprime_estimate <= 1e-10


def test_scaled_identity_needs_no_slack():
    rep = dh.min_kprime(dh.extend(dh.fourier({1: 2.0})), 1.0, 8)
    assert rep.kprime_estimate <= 1e-10


@given(st.floats(min_value=1.0, max_value=4.0),
       st.floats(min_value=0.0, max_value=3.0))
def test_kprime_monotone_in_K(k_lo, gap):
    fld = dh.extend(dh.preset("conj-quad"))
    hi = dh.min_kprime(fld, k_lo + gap, 6).kprime_estimate
    lo = dh.min_kprime(fld, k_lo, 6).kprime_estimate
    assert lo >= hi - 1e-12


def test_kprime_monotone_in_levels(fields):
    fld = fields["conj-quad"]
    values = [dh.min_kprime(fld, 1.0, lv).kprime_estimate for lv in (4, 8, 12)]
    assert values[0] <= values[1] <= values[2]


def test_analytic_nonvanishing_is_quasiregular():
    fld = dh.extend(dh.fourier({0: 1.0, 1: 0.5}))   # f = 1 + z/2, f_z != 0
    rep = dh.min_kprime(fld, 1.0, 8)
    assert rep.kprime_estimate <= 1e-10


def test_qr_constant_conj_quad_trend(fields):
    rep = dh.qr_constant(fields["conj-quad"], 12)
    assert math.isclose(rep.qr_constant, 1.0 - 2.0 ** -12, rel_tol=1e-12)
    assert rep.qr_approaches_one
    gaps = [1.0 - q for q in rep.qr_levels]
    assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))


def test_qr_constant_conj_half_exact(fields):
    rep = dh.qr_constant(fields["conj-half"], 12)
    assert abs(rep.qr_constant - 0.5) <= 1e-10
    assert not rep.qr_approaches_one


def test_qr_constant_identity(fields):
    assert dh.qr_constant(fields["mode:1"], 8).qr_constant == 0.0


def test_sense_violation_conjugate(fields):
    with pytest.raises(SenseViolationError) as exc:
        dh.classify(fields["mode:-1"], [1.0], 6)
    assert exc.value.jacobian is not None and exc.value.jacobian <= 0
    assert exc.value.point is not None


def test_sense_violation_degenerate(abs_sin_field):
    # real-valued boundary data collapses the Jacobian identically
    with pytest.raises(SenseViolationError):
        dh.min_kprime(abs_sin_field, 1.0, 4)


def test_classify_quasiregular(fields):
    rep = dh.classify(fields["conj-half"], [1.0], 10)
    assert rep.classification.startswith("quasiregular")
    assert math.isclose(rep.derived_K, 3.0, rel_tol=1e-9)


def test_classify_elliptic_candidate(fields):
    rep = dh.classify(fields["conj-quad"], [1.0, 2.0], 12)
    assert rep.classification.startswith("elliptic candidate")
    assert rep.kprime_by_K is not None
    assert 3.99 <= rep.kprime_by_K[1.0] <= 4.0
    # larger K needs less additive slack
    assert rep.kprime_by_K[2.0] <= rep.kprime_by_K[1.0]


def test_undefined_dilatation_counted():
    # h'(0) = 0 for the z^2 + small conjugate part field
    fld = dh.extend(dh.fourier({2: 1.0, -1: 0.05}))
    rep = dh.qr_constant(fld, 4)
    assert rep.undefined_dilatation_points == 0  # grid circles avoid 0
    geom = dh.local_geometry(fld, 0.0)
    assert not geom.dilatation_defined


def test_report_serializes():
    rep = dh.classify(dh.extend(dh.preset("conj-half")), [1.0], 6)
    doc = rep.to_dict()
    assert doc["classification"].startswith("quasiregular")
    assert isinstance(doc["qr_levels"], list)
