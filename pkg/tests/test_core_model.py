from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from sixvertex.core_model import (PhaseParams, PhaseRegion, classify_phase, delta, parse_real,
                                  reduce_general_weights, weights_from_params)
from sixvertex.errors import ParameterDomainError, PhaseBoundaryError


def test_pi_tokens_are_exact():
    with mpmath.workprec(256):
        assert parse_real("pi/3", 256) == mpmath.pi / 3
        assert parse_real("2*pi/5", 256) == 2 * mpmath.pi / 5


def test_weights_d_pi_third():
    w = weights_from_params(PhaseParams.of("d", "pi/3", 0))
    with mpmath.workprec(256):
        r = mpmath.sqrt(3) / 2
        for x in (w.a, w.b, w.c):
            assert abs(x - r) < mpmath.mpf(2) ** -250


def test_weights_d_pi_sixth():
    w = weights_from_params(PhaseParams.of("d", "pi/6", 0))
    with mpmath.workprec(256):
        assert abs(w.a - 0.5) < 1e-70 and abs(w.b - 0.5) < 1e-70
        assert abs(w.c - mpmath.sqrt(3) / 2) < 1e-70


def test_weights_f():
    w = weights_from_params(PhaseParams.of("f", "0.5", "1.0"))
    with mpmath.workprec(256):
        assert abs(w.a - mpmath.sinh(mpmath.mpf("0.5"))) < 1e-70
        assert abs(w.b - mpmath.sinh(mpmath.mpf("1.5"))) < 1e-70
        assert abs(w.c - mpmath.sinh(1)) < 1e-70


def test_delta_examples():
    assert delta(1, 1, 1) == mpmath.mpf(1) / 2
    wf = weights_from_params(PhaseParams.of("f", "0.5", "1.0"))
    assert delta(wf.a, wf.b, wf.c) > 1
    wa = weights_from_params(PhaseParams.of("af", "1.2", "0.3"))
    assert delta(wa.a, wa.b, wa.c) < -1


def test_delta_boundary():
    with pytest.raises(PhaseBoundaryError):
        delta(1, 1, 2)
    with pytest.raises(PhaseBoundaryError):
        classify_phase(mpmath.mpf(-1))


@pytest.mark.parametrize("phase,g,t", [("f", "0.5", "0.2"), ("af", "0.5", "0.7"),
                                       ("d", "1.0", "1.2"), ("d", "1.7", "0")])
def test_domain_errors(phase, g, t):
    with pytest.raises(ParameterDomainError):
        PhaseParams.of(phase, g, t)


def test_reduce_general_weights():
    assert reduce_general_weights(1, 1, 1, 1, 1, 1) == (1, 1, 1, 1)
    assert reduce_general_weights(2, 2, 3, 3, 5, 5) == (2, 3, 5, 1)
    assert reduce_general_weights(1, 4, 1, 9, 2, 8) == (2, 3, 4, Fraction(1, 4))


@given(st.sampled_from(["D", "AF", "F"]),
       st.floats(0.05, 1.5), st.floats(-0.95, 0.95))
def test_params_classify_consistently(phase, g, frac):
    if phase == "F":
        t = g * (1.05 + abs(frac))
    else:
        t = g * frac
    p = PhaseParams.of(phase, g, t, 128)
    w = weights_from_params(p)
    try:
        d = delta(w.a, w.b, w.c, 128)
    except PhaseBoundaryError:
        return
    assert classify_phase(d) is p.phase
