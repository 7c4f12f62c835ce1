import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sixvertex import asymptotics as asy
from sixvertex.core_model import PhaseParams
from sixvertex.errors import InsufficientDataError
from sixvertex.special import meixner_norm


def test_d_pi_third_constants():
    pred = asy.predict_leading(PhaseParams.of("D", "pi/3", 0))
    with mpmath.workprec(256):
        assert abs(pred.F - mpmath.mpf(9) / 8) < 1e-60
        assert abs(pred.kappa - mpmath.mpf(1) / 18) < 1e-60


def test_f_constants():
    p = PhaseParams.of("F", "0.5", "1.0")
    pred = asy.predict_leading(p)
    with mpmath.workprec(256):
        assert abs(pred.F - mpmath.sinh(mpmath.mpf("1.5"))) < 1e-60
        assert abs(pred.G - mpmath.exp(mpmath.mpf("-0.5"))) < 1e-60
        e = mpmath.exp(-2)
        assert abs(pred.C - (1 + e) * (1 - e)) < 1e-60
        assert asy.predict_hk(p, "HT", 10) == meixner_norm(10, mpmath.exp(-1))


def test_kappa_families():
    p = PhaseParams.of("D", "pi/5", "0.1")
    g = p.gamma
    with mpmath.workprec(256):
        d = g ** 2 / (3 * mpmath.pi * (mpmath.pi - 2 * g))
        assert abs(asy.kappa_dw(g) - (mpmath.mpf(1) / 12 - 2 * d)) < 1e-60
        assert abs(asy.kappa_ht(g) - (mpmath.mpf(1) / 12 + d)) < 1e-60
    with mpmath.workprec(256):
        r = asy.predict_hk(p, "HT", 7) / asy.predict_hk(p, "DW", 7)
        assert abs(r - (1 + asy.kappa_ht(g) / 7) / (1 + asy.kappa_dw(g) / 7)) < 1e-60


def test_af_t0_omega_and_period():
    p = PhaseParams.of("AF", "1.2", 0)
    with mpmath.workprec(256):
        assert abs(asy.af_omega(p) - mpmath.pi / 2) < 1e-60
    for fam in ("DW", "HT"):
        r = [asy.theta_ratio(p, fam, k) for k in range(8)]
        assert all(abs(r[k] - r[k + 2]) < 1e-60 for k in range(6))
        assert abs(r[0] * r[1] - 1) < 1e-60


@pytest.mark.parametrize("omega,window", [(2 * math.pi / 5, 5), (0.1, 16), (3.0, 4)])
def test_choose_window(omega, window):
    assert asy.choose_window(omega) == window


def _synthetic(G, kappa, ks, osc=None):
    with mpmath.workprec(256):
        out = []
        for k in ks:
            base = mpmath.factorial(k) ** 2 * G ** (2 * k + 1)
            extra = osc(k) if osc else 0
            out.append(base * (1 + mpmath.mpf(kappa) / k + extra))
        return out


def test_fit_recovers_planted_kappa():
    ks = list(range(1, 81))
    fit = asy.fit_kappa_over_k(ks, _synthetic(mpmath.mpf("1.3"), 0.3, ks), mpmath.mpf("1.3"))
    assert abs(fit.estimate["kappa"] - 0.3) < 1e-6


@settings(max_examples=10, deadline=None)
@given(st.floats(0.05, 0.5), st.floats(0.6, 2.5), st.floats(1.2, 2.0))
def test_fit_with_oscillation(kappa, omega, k1):
    ks = list(range(1, 121))
    G = mpmath.mpf("0.9")
    hs = _synthetic(G, kappa, ks, lambda k: 0.2 * k ** -k1 * mpmath.cos(k * omega))
    fit = asy.fit_kappa_over_k(ks, hs, G, omega=omega)
    assert abs(fit.estimate["kappa"] / kappa - 1) < 0.01


def test_power_law_fit_synthetic():
    ns = list(range(8, 41))
    zs = [mpmath.exp(2 * n * n * mpmath.log(mpmath.mpf("1.7")) + mpmath.mpf("0.25") * mpmath.log(n) + 3)
          for n in ns]
    fit = asy.fit_exponents(dict(zip(ns, zs)), "power_law_n")
    assert fit.estimate["F"] == pytest.approx(1.7, rel=1e-9)
    assert fit.estimate["kappa"] == pytest.approx(0.25, rel=1e-6)


def test_fit_needs_data():
    with pytest.raises(InsufficientDataError):
        asy.fit_kappa_over_k([1, 2, 3], [1, 2, 3], 1)
    with pytest.raises(ValueError):
        asy.fit_exponents({}, "nonsense")
