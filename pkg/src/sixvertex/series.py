"""Truncated Taylor series in arbitrary precision and the derivative towers of phi, psi."""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .core_model import PhaseParams, PhaseRegion
from .errors import NearSingularError


def guard_bits(order: int) -> int:
    return math.ceil(4 * order * math.log2(order + 2))


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients f_m = f^(m)(t0) / m! for m = 0..order."""

    center: mpmath.mpf
    coeffs: tuple
    precision_bits: int

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other):
        if self.order != other.order or self.center != other.center:
            raise ValueError("series must share center and order")

    def __add__(self, other):
        return series_add(self, other)

    def __mul__(self, other):
        return series_mul(self, other)

    def scale(self, k):
        with mpmath.workprec(self.precision_bits):
            return TruncatedSeries(self.center, tuple(k * c for c in self.coeffs), self.precision_bits)

    def derivative(self):
        """Series of f' truncated one order lower."""
        with mpmath.workprec(self.precision_bits):
            cs = tuple((m + 1) * self.coeffs[m + 1] for m in range(self.order))
        return TruncatedSeries(self.center, cs, self.precision_bits)

    def derivatives(self):
        """The tower f(t0), f'(t0), ..., f^(M)(t0)."""
        with mpmath.workprec(self.precision_bits):
            out, fact = [], mpmath.mpf(1)
            for m, c in enumerate(self.coeffs):
                if m:
                    fact *= m
                out.append(c * fact)
        return out


def elementary_series(kind, shift, sign, t0, order, precision_bits=256) -> TruncatedSeries:
    """Expansion of x -> kind(shift + sign*x) about x = t0, kind in {'sin', 'sinh'}."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    with mpmath.workprec(precision_bits):
        u = mpmath.mpf(shift) + sign * mpmath.mpf(t0)
        if kind == "sin":
            cycle = (mpmath.sin(u), mpmath.cos(u), -mpmath.sin(u), -mpmath.cos(u))
        elif kind == "sinh":
            sh, ch = mpmath.sinh(u), mpmath.cosh(u)
            cycle = (sh, ch, sh, ch)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        coeffs, inv_fact, s = [], mpmath.mpf(1), 1
        for m in range(order + 1):
            if m:
                inv_fact /= m
                s *= sign
            coeffs.append(s * cycle[m % 4] * inv_fact)
    return TruncatedSeries(mpmath.mpf(t0), tuple(coeffs), precision_bits)


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    f._check(g)
    prec = max(f.precision_bits, g.precision_bits)
    with mpmath.workprec(prec):
        return TruncatedSeries(f.center, tuple(x + y for x, y in zip(f.coeffs, g.coeffs)), prec)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    f._check(g)
    prec = max(f.precision_bits, g.precision_bits)
    a, b = f.coeffs, g.coeffs
    with mpmath.workprec(prec):
        cs = tuple(mpmath.fsum(a[j] * b[m - j] for j in range(m + 1)) for m in range(f.order + 1))
    return TruncatedSeries(f.center, cs, prec)


def series_reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    """1/f via g_m = -(1/f_0) * sum_{j=1..m} f_j g_{m-j}."""
    prec = f.precision_bits
    a = f.coeffs
    with mpmath.workprec(prec):
        if abs(a[0]) < mpmath.ldexp(1, -(prec // 2)):
            raise NearSingularError(f"constant term {mpmath.nstr(a[0], 5)} too small to invert")
        inv0 = 1 / a[0]
        g = [inv0]
        for m in range(1, f.order + 1):
            g.append(-inv0 * mpmath.fsum(a[j] * g[m - j] for j in range(1, m + 1)))
    return TruncatedSeries(f.center, tuple(g), prec)


def _ab_series(p: PhaseParams, order, bits):
    g, t = p.gamma, p.t
    with mpmath.workprec(bits):
        neg_g = -g
    if p.phase is PhaseRegion.DISORDERED:
        a = elementary_series("sin", g, -1, t, order, bits)
        b = elementary_series("sin", g, 1, t, order, bits)
    elif p.phase is PhaseRegion.ANTIFERROELECTRIC:
        a = elementary_series("sinh", g, -1, t, order, bits)
        b = elementary_series("sinh", g, 1, t, order, bits)
    else:
        a = elementary_series("sinh", neg_g, 1, t, order, bits)
        b = elementary_series("sinh", g, 1, t, order, bits)
    return a, b


def _c_weight(p: PhaseParams, bits):
    with mpmath.workprec(bits):
        if p.phase is PhaseRegion.DISORDERED:
            return mpmath.sin(2 * p.gamma)
        return mpmath.sinh(2 * p.gamma)


def phi_series(p: PhaseParams, order: int, bits: int) -> TruncatedSeries:
    """Series of c / (a b) about t."""
    a, b = _ab_series(p, order, bits)
    return series_reciprocal(series_mul(a, b)).scale(_c_weight(p, bits))


def psi_series(p: PhaseParams, order: int, bits: int) -> TruncatedSeries:
    """Series of 1/a + 1/b about t."""
    a, b = _ab_series(p, order, bits)
    return series_add(series_reciprocal(a), series_reciprocal(b))


def _tower(builder, p, order, working_bits):
    target = working_bits or p.precision_bits
    bits = target + guard_bits(order)
    ders = builder(p, order, bits).derivatives()
    with mpmath.workprec(target):
        return [+d for d in ders]


def derivative_tower_phi(p: PhaseParams, order: int, working_bits: int | None = None):
    """phi^(m)(t) for m = 0..order, phi = c/(ab), rounded to ``working_bits``."""
    return _tower(phi_series, p, order, working_bits)


def derivative_tower_psi(p: PhaseParams, order: int, working_bits: int | None = None):
    """psi^(m)(t) for m = 0..order, psi = 1/a + 1/b."""
    return _tower(psi_series, p, order, working_bits)
