import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from sixvertex.core_model import PhaseParams, parse_real
from sixvertex.errors import NearSingularError
from sixvertex.series import (TruncatedSeries, derivative_tower_phi, derivative_tower_psi,
                              elementary_series, series_mul, series_reciprocal)

BITS = 256
TOL = mpmath.mpf(2) ** -200


def ts(*cs):
    return TruncatedSeries(mpmath.mpf(0), tuple(mpmath.mpf(c) for c in cs), BITS)


def test_elementary_sinh():
    s = elementary_series("sinh", 0, 1, 0, 3, BITS)
    assert [float(c) for c in s.coeffs] == [0, 1, 0, pytest.approx(1 / 6)]


def test_elementary_sin_shift_sign():
    g = mpmath.mpf("0.7")
    s = elementary_series("sin", g, -1, 0, 1, BITS)
    with mpmath.workprec(BITS):
        assert abs(s.coeffs[0] - mpmath.sin(g)) < TOL
        assert abs(s.coeffs[1] + mpmath.cos(g)) < TOL


def test_elementary_sinh_tower():
    g = mpmath.mpf("0.4")
    d = elementary_series("sinh", g, 1, "0.2", 10, BITS).derivatives()
    with mpmath.workprec(BITS):
        u = g + mpmath.mpf("0.2")
        for m, x in enumerate(d):
            ref = mpmath.sinh(u) if m % 2 == 0 else mpmath.cosh(u)
            assert abs(x - ref) < TOL


def test_mul_and_reciprocal():
    assert [float(c) for c in series_mul(ts(1, 1, 0), ts(1, -1, 0)).coeffs] == [1, 0, -1]
    assert [float(c) for c in series_reciprocal(ts(2, 0, 0)).coeffs] == [0.5, 0, 0]
    with pytest.raises(NearSingularError):
        series_reciprocal(ts(0, 1))


def test_reciprocal_sinh_vs_finite_differences():
    s = series_reciprocal(elementary_series("sinh", 0, 1, "0.3", 4, BITS)).derivatives()
    with mpmath.workprec(BITS):
        for m in range(5):
            ref = mpmath.diff(lambda x: 1 / mpmath.sinh(x), mpmath.mpf("0.3"), m)
            assert abs(s[m] - ref) < mpmath.mpf(10) ** -40


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=4, max_size=4),
       st.lists(st.floats(-3, 3), min_size=4, max_size=4))
def test_mul_commutes_and_reciprocal_inverts(a, b):
    f, g = ts(*a), ts(*b)
    fg, gf = series_mul(f, g), series_mul(g, f)
    assert all(abs(x - y) < 1e-60 for x, y in zip(fg.coeffs, gf.coeffs))
    if abs(a[0]) > 0.1:
        one = series_mul(f, series_reciprocal(f)).coeffs
        assert abs(one[0] - 1) < 1e-60 and all(abs(c) < 1e-50 for c in one[1:])


def test_towers_d_phase_t0():
    p = PhaseParams.of("D", "pi/5", 0)
    phi, psi = derivative_tower_phi(p, 3), derivative_tower_psi(p, 3)
    with mpmath.workprec(BITS):
        g = p.gamma
        assert abs(phi[0] - 2 * mpmath.cos(g) / mpmath.sin(g)) < TOL
        assert abs(psi[0] - 2 / mpmath.sin(g)) < TOL
    assert abs(phi[1]) < TOL and abs(psi[1]) < TOL
    assert abs(phi[3]) < TOL and abs(psi[3]) < TOL


def test_phi_af_finite_difference():
    p = PhaseParams.of("AF", "1.2", "0.3")
    phi4 = derivative_tower_phi(p, 4)[4]
    g = parse_real("1.2", BITS)

    def f(t):
        return mpmath.sinh(2 * g) / (mpmath.sinh(g - t) * mpmath.sinh(g + t))

    with mpmath.workprec(BITS):
        h = mpmath.mpf(2) ** -20
        t = mpmath.mpf("0.3")
        fd = (f(t + 2 * h) - 4 * f(t + h) + 6 * f(t) - 4 * f(t - h) + f(t - 2 * h)) / h ** 4
        assert abs(fd / phi4 - 1) < 1e-9


def test_psi_f_exponential_series():
    p = PhaseParams.of("F", "0.5", "1.0")
    psi6 = derivative_tower_psi(p, 6)[6]
    with mpmath.workprec(BITS):
        g, t = p.gamma, p.t
        ref = 2 * mpmath.nsum(lambda k: (2 * k + 1) ** 6 * (mpmath.exp(-(2 * k + 1) * (t - g))
                                                            + mpmath.exp(-(2 * k + 1) * (t + g))),
                              [0, mpmath.inf])
        assert abs(psi6 / ref - 1) < mpmath.mpf(10) ** -50
