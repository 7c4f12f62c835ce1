from fractions import Fraction

import mpmath
import pytest

from sixvertex import enumerator as en
from sixvertex import hankel as hk
from sixvertex.core_model import PhaseParams, PhaseRegion, weights_from_params
from sixvertex.errors import InsufficientPrecisionError, MomentSequenceError
from sixvertex.series import derivative_tower_phi, derivative_tower_psi

BITS = 256
TIGHT = mpmath.mpf(2) ** -(BITS // 2)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_hankel_det_small():
    with mpmath.workprec(BITS):
        assert hk.hankel_det([mpmath.mpf(7)], 1, BITS) == 7
        assert abs(hk.hankel_det([mpmath.mpf(x) for x in (1, 2, 5)], 2, BITS) - 1) < 1e-70
        hilbert = [mpmath.mpf(1) / (m + 1) for m in range(5)]
        exact = Fraction(1, 2160)
        assert abs(hk.hankel_det(hilbert, 3, BITS) - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-70


def test_hankel_det_precision_guard():
    with mpmath.workprec(BITS):
        hilbert = [mpmath.mpf(1) / (m + 1) for m in range(39)]
    with pytest.raises(InsufficientPrecisionError):
        hk.hankel_det(hilbert, 20, 64)


@pytest.mark.parametrize("phase", ["D", "AF", "F"])
def test_n1_closed_form(canonical, phase):
    p = canonical[phase]
    w = weights_from_params(p)
    with mpmath.workprec(BITS):
        assert rel(hk.tau_dw(p, 1), w.c / (w.a * w.b)) < TIGHT
        assert rel(hk.tau_ht(p, 1), 1 / w.a + 1 / w.b) < TIGHT
        assert rel(hk.z_ht(p, 1), w.c * (w.a + w.b)) < TIGHT
        assert rel(hk.z_dw(p, 1), w.c) < TIGHT
        assert rel(hk.z_ht_via_norms(p, 1), w.c * (w.a + w.b)) < TIGHT


def test_z_ht_pi_third_is_three_halves():
    assert abs(hk.z_ht(PhaseParams.of("D", "pi/3", 0), 1) - mpmath.mpf(3) / 2) < TIGHT


def test_tau2_ht_structure():
    p = PhaseParams.of("D", "pi/3", 0)
    psi = derivative_tower_psi(p, 2)
    with mpmath.workprec(BITS):
        assert rel(hk.tau_ht(p, 2), psi[0] * psi[2] - psi[1] ** 2) < TIGHT


@pytest.mark.parametrize("phase", ["D", "AF", "F"])
def test_against_enumeration(canonical, phase):
    p = canonical[phase]
    w = weights_from_params(p)
    dw = (w.a, w.a, w.b, w.b, w.c, w.c)
    for n in (2, 3):
        assert rel(hk.z_dw(p, n), en.partition_dwbc(n, dw, precision_bits=BITS)) < TIGHT
    assert rel(hk.z_ht(p, 2), en.partition_ht(4, w.w, precision_bits=BITS)) < TIGHT


def test_af_tau3_from_norms():
    p = PhaseParams.of("AF", "1.2", "0.3")
    ns = hk.norm_sequence(p, "HT", 2)
    with mpmath.workprec(BITS):
        assert rel(hk.tau_ht(p, 3), 2 ** 9 * mpmath.fprod(ns.h)) < TIGHT


@pytest.mark.parametrize("phase", ["AF", "F"])
def test_cross_route_n4_512(phase):
    g, t = {"AF": ("1.2", "0.3"), "F": ("0.5", "1.0")}[phase]
    p = PhaseParams.of(phase, g, t, 512)
    assert rel(hk.z_ht_via_norms(p, 4), hk.z_ht(p, 4)) < mpmath.mpf(2) ** -50


def test_d_moments():
    p = PhaseParams.of("D", "pi/5", 0)
    ms = hk.moments(p, "HT", 8)
    assert all(abs(ms.moments[m]) < TIGHT for m in (1, 3, 5, 7))
    p2 = PhaseParams.of("D", "pi/5", "0.1")
    assert list(hk.moments(p2, "HT", 6).moments) == derivative_tower_psi(p2, 5)
    ns = hk.norm_sequence(p2, "HT", 0)
    assert rel(ns.h[0], derivative_tower_psi(p2, 0)[0]) < TIGHT
    assert list(hk.moments(p2, "DW", 4).moments) == derivative_tower_phi(p2, 3)


def test_f_moment_zero_geometric():
    p = PhaseParams.of("F", "0.5", "1.0")
    mu0 = hk.moments(p, "HT", 1).moments[0]
    with mpmath.workprec(BITS):
        x, y = mpmath.exp(-2 * (p.t - p.gamma)), mpmath.exp(-2 * (p.t + p.gamma))
        ref = 1 / (1 - x) + mpmath.exp(-2 * p.gamma) / (1 - y)
    assert rel(mu0, ref) < TIGHT


def test_point_mass_rejected():
    with mpmath.workprec(BITS):
        z = mpmath.mpf("0.7")
        ms = hk.MomentSequence(PhaseRegion.DISORDERED, "HT", z, tuple(z ** m for m in range(5)), BITS)
    with pytest.raises(MomentSequenceError):
        hk.norms_from_moments(ms, 2)


def test_f_prefactor_calibration():
    p = PhaseParams.of("F", "0.5", "1.0")
    lit = hk.calibrate_f_prefactor(p, "literal")
    assert lit.matches
    assert abs(lit.A - 2) < 1e-60
    with mpmath.workprec(BITS):
        assert rel(lit.B, mpmath.exp(-(p.t - p.gamma))) < 1e-60
    assert not hk.calibrate_f_prefactor(p, "proof").matches


def test_tables_roundtrip():
    import csv
    import io
    import json
    p = PhaseParams.of("D", "pi/3", 0)
    rows = hk.partition_table(p, [1, 2])
    parsed = list(csv.DictReader(io.StringIO(hk.to_csv(rows))))
    assert [r["n"] for r in parsed] == ["1", "2"]
    assert mpmath.mpf(parsed[0]["z"]) == pytest.approx(1.5)
    assert json.loads(hk.to_json(rows, route="det"))["rows"][1]["n"] == 2
