"""Acceptance gate: one test per release criterion.

Each test prints a single [PASS]/[FAIL] line (run with ``pytest -s`` to see
them live).  Criteria 3, 4, 5, 8 and 9 are judged on the full verification
suite, which runs once per session.
"""

import cmath
import json
import math

import numpy as np
import pytest

import diskharm as dh
from diskharm.verify import inequality_verdict

TWO_PI = 2.0 * math.pi
LEVELS = 12


def _criterion(tag, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {tag}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite():
    return dh.run_suite(levels=LEVELS)


@pytest.fixture(scope="module")
def suite_fields():
    return {name: dh.extend(dh.preset(name)) for name in dh.list_presets()}


def _by_statement(suite, statement):
    return [r for r in suite.reports if r.statement_id == statement]


def test_criterion_1_constant_anchor():
    rep1 = dh.c_of_p(1)
    anchor = abs(rep1.c_value - 4.0 * math.log(2.0) / math.pi)
    ok = anchor < 1e-8
    margins = {}
    for p in (1, 1.5, 2, 3, 5, 10):
        rep = dh.c_of_p(p)
        margins[p] = rep.margin
        ok = ok and rep.margin > 0
    _criterion("criterion 1: constant anchor and closed-form bound", ok,
               f"|C(1) - 4ln2/pi| = {anchor:.2e}, "
               f"min margin = {min(margins.values()):.3g}")


def test_criterion_2_oracle_agreement(suite_fields):
    worst = 0.0
    anchors_ok = True
    for name, fld in suite_fields.items():
        rng = np.random.default_rng(42)
        for _ in range(100):
            z = 0.9 * math.sqrt(rng.uniform()) * \
                cmath.exp(1j * rng.uniform(0.0, TWO_PI))
            gap = abs(fld.eval(z) - dh.extend_oracle(fld.spec, z, tol=1e-10))
            worst = max(worst, gap)
        anchors_ok = anchors_ok and \
            abs(fld.mean_value - fld.spec.coefficient(0)) <= 1e-12
    abs_sin_anchor = abs(suite_fields["abs-sin"].eval(0.0) - 2.0 / math.pi)
    ok = worst <= 1e-8 and anchors_ok and abs_sin_anchor <= 1e-12
    _criterion("criterion 2: series vs quadrature oracle at 100 seeded "
               "points per preset", ok,
               f"worst gap = {worst:.2e}, |f(0) - 2/pi| = {abs_sin_anchor:.1e}")


def test_criterion_3_lemma_ft_matrix(suite):
    reports = _by_statement(suite, "lemma-ft")
    expected = len(dh.list_presets()) * 5      # p in {1, 1.5, 2, 3, inf}
    ok = len(reports) == expected and all(r.passed for r in reports)
    _criterion("criterion 3: angular-derivative bound over the full matrix",
               ok, f"{sum(r.passed for r in reports)}/{len(reports)} pass")


def test_criterion_4_lemma_fr_matrix(suite, suite_fields):
    reports = _by_statement(suite, "lemma-fr")
    expected = len(dh.list_presets()) * 3      # p in {1, 2, 3}
    ok = len(reports) == expected and all(r.passed for r in reports)
    anchor = dh.check_lemma_fr(dh.preset("mode:1"), 1,
                               fld=suite_fields["mode:1"])
    target = 2.0 * (4.0 * math.log(2.0) / math.pi) - 1.0
    gap = abs(anchor.margin - target)
    ok = ok and abs(anchor.lhs - 1.0) < 1e-6 and gap < 1e-6
    _criterion("criterion 4: radial-derivative area bound and exact anchor",
               ok, f"margin gap = {gap:.2e}")


def test_criterion_5_thm1_finiteness(suite):
    reports = _by_statement(suite, "thm1-bergman")
    expected = len(dh.list_presets()) * 4      # p in {1, 2, 3, 5}
    ok = len(reports) == expected
    for r in reports:
        ok = ok and r.passed
        ok = ok and not r.diagnostics["bergman_fz"]["infinite"]
        ok = ok and not r.diagnostics["bergman_fzbar"]["infinite"]
    _criterion("criterion 5: finite area norms plus outer-ring bound", ok,
               f"{sum(r.passed for r in reports)}/{len(reports)} pass")


def test_criterion_6_counterexample():
    rep = dh.run_counterexample(levels=14)
    d = rep.diagnostics
    vz = d["fz_values"]
    increasing = all(b > a for a, b in zip(vz[3:12], vz[4:13]))
    crossed = d["first_exceed_level"] is not None \
        and d["first_exceed_level"] <= 14
    markers = d["hardy_inf_norm"] == "inf" and d["bergman_inf_norm"] == "inf"
    identity = all(e["gap"] <= 1e-10 for e in d["radial_identity"])
    ok = rep.passed and increasing and crossed and markers and identity
    _criterion("criterion 6: radial blow-up of the corner boundary datum",
               ok, f"first crossing at level {d['first_exceed_level']}, "
                   f"|f_z| reaches {max(vz):.3f}")


def test_criterion_7_ellipticity_anchors(suite_fields):
    quad = suite_fields["conj-quad"]
    kp = dh.min_kprime(quad, 1.0, LEVELS)
    window = 4.0 - 8.0 * 2.0 ** -LEVELS <= kp.kprime_estimate <= 4.0
    monotone = all(b >= a for a, b in
                   zip(kp.kprime_levels, kp.kprime_levels[1:]))
    qr = dh.qr_constant(quad, LEVELS)
    trend = qr.qr_approaches_one
    half = dh.qr_constant(suite_fields["conj-half"], LEVELS)
    half_exact = abs(half.qr_constant - 0.5) <= 1e-10
    ok = window and monotone and trend and half_exact
    _criterion("criterion 7: ellipticity constants of the model maps", ok,
               f"K'(levels={LEVELS}) = {kp.kprime_estimate:.6f}, "
               f"q(conj-half) = {half.qr_constant}")


def test_criterion_8_thm2_finite(suite):
    reports = _by_statement(suite, "thm2-finite-p")
    expected = 3 * 3                            # triples x p in {1, 2, 3}
    ok = len(reports) == expected
    for r in reports:
        ok = ok and r.passed
        ok = ok and r.diagnostics["pointwise_stretch_bound"]["ok"]
    _criterion("criterion 8: elliptic Hardy bound (finite p) with "
               "pointwise spot checks", ok,
               f"{sum(r.passed for r in reports)}/{len(reports)} pass")


def test_criterion_9_thm2_infinite(suite, suite_fields):
    reports = _by_statement(suite, "thm2-infinite-p")
    ok = len(reports) == 3 and all(r.passed for r in reports)
    tight = dh.check_thm2_infinite(dh.preset("mode:1"), 1.0, 0.0,
                                   fld=suite_fields["mode:1"])
    ok = ok and abs(tight.margin) <= 1e-6
    _criterion("criterion 9: elliptic sup bound (p = inf) with tightness "
               "witness", ok, f"identity-map margin = {tight.margin:.2e}")


def test_criterion_10_numerical_hygiene(suite, suite_fields):
    # Parseval route at 1e-10
    table = {0: 0.3, 1: 1.0, 3: -0.5j, 6: 0.25}
    fld = dh.extend(dh.fourier(table))
    parseval_ok = True
    for r in (0.35, 0.95):
        rep = dh.circle_mean(dh.scalar_field(fld, "f"), r, 2)
        expected = math.sqrt(sum(abs(c) ** 2 * r ** (2 * n)
                                 for n, c in table.items()))
        parseval_ok = parseval_ok and \
            abs(rep.value - expected) <= 1e-10 * (1 + expected)

    # Wirtinger derivatives vs central differences at 1e-6
    fd_ok = True
    h = 1e-5
    fld = suite_fields["abs-sin"]
    rng = np.random.default_rng(42)
    for _ in range(20):
        z = 0.9 * math.sqrt(rng.uniform()) * \
            cmath.exp(1j * rng.uniform(0.0, TWO_PI))
        f = fld.eval
        dx = (f(z + h) - f(z - h)) / (2 * h)
        dy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
        fz, fzb = dh.wirtinger(fld, z)
        fd_ok = fd_ok and abs(fz - 0.5 * (dx - 1j * dy)) < 1e-6
        fd_ok = fd_ok and abs(fzb - 0.5 * (dx + 1j * dy)) < 1e-6

    # byte-identical rerun of the aggregate suite
    rerun = dh.run_suite(levels=LEVELS)
    identical = json.dumps(suite.to_dict(), sort_keys=True) == \
        json.dumps(rerun.to_dict(), sort_keys=True)

    # forced failure flips the near-tight case
    tight = dh.check_lemma_ft(dh.preset("mode:1"), 2,
                              fld=dh.extend(dh.preset("mode:1")))
    err = tight.tolerances["error_estimate"]
    _, ok_now, _ = inequality_verdict(tight.lhs, tight.rhs, err)
    _, ok_perturbed, _ = inequality_verdict(tight.lhs, 0.9 * tight.rhs, err)
    flip_ok = ok_now and not ok_perturbed

    ok = parseval_ok and fd_ok and identical and flip_ok
    _criterion("criterion 10: numerical hygiene (Parseval, finite "
               "differences, determinism, forced failure)", ok,
               f"rerun identical = {identical}, flip = {flip_ok}")


def test_suite_is_green(suite):
    _criterion("aggregate: full verification suite", suite.passed,
               f"{suite.summary['passed']}/{suite.summary['total']} checks")
