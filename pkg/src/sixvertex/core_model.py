"""Phase regions, weight parametrizations and parameter plumbing.

The three regions of the phase diagram each use their own trigonometric or
hyperbolic parametrization of the homogeneous weights ``a, b, c``::

    ferroelectric      a = sinh(t - g)   b = sinh(t + g)   c = sinh(2g)   0 < g < t
    antiferroelectric  a = sinh(g - t)   b = sinh(g + t)   c = sinh(2g)   |t| < g
    disordered         a = sin(g - t)    b = sin(g + t)    c = sin(2g)    |t| < g < pi/2

The half-turn symmetric lattice carries the square roots of these weights
on its vertices, ``w = (sqrt a, sqrt a, sqrt b, sqrt b, sqrt c, sqrt c)``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import ParameterDomainError, PhaseBoundaryError

DEFAULT_PRECISION_BITS = 256


class PhaseRegion(enum.Enum):
    FERROELECTRIC = "F"
    ANTIFERROELECTRIC = "AF"
    DISORDERED = "D"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        aliases = {
            "f": cls.FERROELECTRIC, "ferro": cls.FERROELECTRIC,
            "ferroelectric": cls.FERROELECTRIC,
            "af": cls.ANTIFERROELECTRIC, "antiferro": cls.ANTIFERROELECTRIC,
            "antiferroelectric": cls.ANTIFERROELECTRIC,
            "d": cls.DISORDERED, "dis": cls.DISORDERED, "disordered": cls.DISORDERED,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown phase {text!r}; expected one of f, af, d") from None


_PI_TOKEN = re.compile(r"^\s*(?:([0-9.]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9.]+))?\s*$", re.I)


def parse_real(text, precision_bits=DEFAULT_PRECISION_BITS):
    """Parse a decimal string or a ``[k*]pi[/m]`` token into an mpf.

    Decimal strings are rounded to nearest at ``precision_bits``; the pi
    tokens are evaluated at that precision so ``pi/3`` is exact to the last bit.
    """
    if isinstance(text, mpmath.mpf):
        return text
    if isinstance(text, (int, float, Fraction)):
        with mpmath.workprec(precision_bits):
            if isinstance(text, Fraction):
                return mpmath.mpf(text.numerator) / text.denominator
            return mpmath.mpf(text)
    s = str(text).strip()
    m = _PI_TOKEN.match(s)
    with mpmath.workprec(precision_bits):
        if m:
            num = mpmath.mpf(m.group(1)) if m.group(1) else mpmath.mpf(1)
            den = mpmath.mpf(m.group(2)) if m.group(2) else mpmath.mpf(1)
            return num * mpmath.pi / den
        try:
            return mpmath.mpf(s)
        except (ValueError, TypeError):
            raise ValueError(f"cannot parse real number from {text!r}") from None


@dataclass(frozen=True)
class PhaseParams:
    """Phase tag plus the two free parameters (gamma, t)."""

    phase: PhaseRegion
    gamma: mpmath.mpf
    t: mpmath.mpf
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        phase = PhaseRegion.parse(self.phase)
        object.__setattr__(self, "phase", phase)
        if int(self.precision_bits) <= 0:
            raise ValueError("precision_bits must be positive")
        object.__setattr__(self, "precision_bits", int(self.precision_bits))
        g = parse_real(self.gamma, self.precision_bits)
        t = parse_real(self.t, self.precision_bits)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "t", t)
        _check_domain(phase, g, t, self.precision_bits)

    @classmethod
    def of(cls, phase, gamma, t, precision_bits=DEFAULT_PRECISION_BITS):
        return cls(PhaseRegion.parse(phase), gamma, t, precision_bits)

    @property
    def zeta(self):
        with mpmath.workprec(self.precision_bits):
            return self.t / self.gamma

    def with_t(self, t):
        return PhaseParams(self.phase, self.gamma, t, self.precision_bits)

    def with_precision(self, bits):
        return PhaseParams(self.phase, self.gamma, self.t, bits)

    def describe(self):
        return {
            "phase": self.phase.value,
            "gamma": mpmath.nstr(self.gamma, 20),
            "t": mpmath.nstr(self.t, 20),
            "precision_bits": self.precision_bits,
        }


def _check_domain(phase, g, t, bits):
    if phase is PhaseRegion.FERROELECTRIC:
        if not (0 < g < t):
            raise ParameterDomainError(f"ferroelectric phase requires 0 < gamma < t (gamma={g}, t={t})")
    elif phase is PhaseRegion.ANTIFERROELECTRIC:
        if not (g > 0 and abs(t) < g):
            raise ParameterDomainError(f"antiferroelectric phase requires |t| < gamma (gamma={g}, t={t})")
    else:
        with mpmath.workprec(bits):
            half_pi = mpmath.pi / 2
        if not (g > 0 and abs(t) < g < half_pi):
            raise ParameterDomainError(
                f"disordered phase requires |t| < gamma < pi/2 (gamma={g}, t={t})")


@dataclass(frozen=True)
class BoltzmannWeights:
    a: mpmath.mpf
    b: mpmath.mpf
    c: mpmath.mpf
    w: tuple = field(default=())

    def __post_init__(self):
        if not self.w:
            with mpmath.workprec(max(mpmath.mp.prec, 53)):
                ra, rb, rc = mpmath.sqrt(self.a), mpmath.sqrt(self.b), mpmath.sqrt(self.c)
            object.__setattr__(self, "w", (ra, ra, rb, rb, rc, rc))
        if len(self.w) != 6:
            raise ValueError("six vertex weights required")


def weights_from_params(p: PhaseParams) -> BoltzmannWeights:
    """Homogeneous weights (a, b, c) and the half-turn vertex weights."""
    with mpmath.workprec(p.precision_bits):
        g, t = p.gamma, p.t
        if p.phase is PhaseRegion.FERROELECTRIC:
            a, b, c = mpmath.sinh(t - g), mpmath.sinh(t + g), mpmath.sinh(2 * g)
        elif p.phase is PhaseRegion.ANTIFERROELECTRIC:
            a, b, c = mpmath.sinh(g - t), mpmath.sinh(g + t), mpmath.sinh(2 * g)
        else:
            a, b, c = mpmath.sin(g - t), mpmath.sin(g + t), mpmath.sin(2 * g)
        ra, rb, rc = mpmath.sqrt(a), mpmath.sqrt(b), mpmath.sqrt(c)
    return BoltzmannWeights(a, b, c, (ra, ra, rb, rb, rc, rc))


def delta(a, b, c, precision_bits=DEFAULT_PRECISION_BITS):
    """Anisotropy parameter (a^2 + b^2 - c^2) / (2ab).

    Raises PhaseBoundaryError when |Delta| = 1 to within 2^(-precision_bits/2).
    """
    if not (a > 0 and b > 0 and c > 0):
        raise ValueError("weights must be positive")
    with mpmath.workprec(precision_bits):
        a, b, c = (parse_real(v, precision_bits) for v in (a, b, c))
        d = (a * a + b * b - c * c) / (2 * a * b)
        tol = mpmath.ldexp(1, -(precision_bits // 2))
        if abs(abs(d) - 1) < tol:
            raise PhaseBoundaryError(f"|Delta| = 1 within {mpmath.nstr(tol, 5)}; phase boundary excluded")
    return d


def classify_phase(d) -> PhaseRegion:
    if d > 1:
        return PhaseRegion.FERROELECTRIC
    if d < -1:
        return PhaseRegion.ANTIFERROELECTRIC
    if -1 < d < 1:
        return PhaseRegion.DISORDERED
    raise PhaseBoundaryError("Delta = +-1 lies on a phase boundary")


def reduce_general_weights(w1, w2, w3, w4, w5, w6, precision_bits=DEFAULT_PRECISION_BITS):
    """Reduce six vertex weights to ``(a, b, c, drift)``.

    ``drift = w5 / w6`` is the base of the ``(w5/w6)^n`` prefactor relating
    Z(w1..w6) on the 2n x 2n lattice to Z(a, a, b, b, c, c).
    """
    ws = (w1, w2, w3, w4, w5, w6)
    if any(not (w > 0) for w in ws):
        raise ValueError("all vertex weights must be positive")
    if all(isinstance(w, (int, Fraction)) for w in ws):
        roots = [_exact_sqrt(Fraction(ws[i]) * Fraction(ws[i + 1])) for i in (0, 2, 4)]
        if all(r is not None for r in roots):
            return roots[0], roots[1], roots[2], Fraction(w5) / Fraction(w6)
    with mpmath.workprec(precision_bits):
        m = [parse_real(w, precision_bits) for w in ws]
        return (mpmath.sqrt(m[0] * m[1]), mpmath.sqrt(m[2] * m[3]),
                mpmath.sqrt(m[4] * m[5]), m[4] / m[5])


def _exact_sqrt(x: Fraction):
    from math import isqrt
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None
