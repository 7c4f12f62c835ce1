"""Jacobi theta functions for a real nome, the nome q(gamma), and Meixner norms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .core_model import DEFAULT_PRECISION_BITS
from .errors import UnderflowError


def nome(gamma, precision_bits: int = DEFAULT_PRECISION_BITS):
    """q = exp(-pi^2 / (2 gamma))."""
    with mpmath.workprec(precision_bits):
        g = mpmath.mpf(gamma)
        if not g > 0:
            raise ValueError("gamma must be positive")
        q = mpmath.exp(-mpmath.pi ** 2 / (2 * g))
        if q == 0:
            raise UnderflowError(f"nome underflows to 0 at gamma={mpmath.nstr(g, 10)}")
        return q


@dataclass(frozen=True)
class ThetaContext:
    q: mpmath.mpf
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        with mpmath.workprec(self.precision_bits):
            q = mpmath.mpf(self.q)
        if not 0 < q < 1:
            raise ValueError("nome must satisfy 0 < q < 1")
        object.__setattr__(self, "q", q)

    @classmethod
    def for_gamma(cls, gamma, precision_bits=DEFAULT_PRECISION_BITS):
        return cls(nome(gamma, precision_bits), precision_bits)

    @property
    def terms(self) -> int:
        """Smallest N with q^(N^2) < 2^-precision_bits (and at least 1)."""
        with mpmath.workprec(64):
            lq = -float(mpmath.log(self.q, 2))
        if lq == 0:
            raise UnderflowError("nome too close to 1 for a truncated theta series")
        return max(1, math.isqrt(int(self.precision_bits / lq)) + 2)


def theta(j: int, z, ctx: ThetaContext):
    """Jacobi theta_j(z; q) for j = 1..4, real z."""
    if j not in (1, 2, 3, 4):
        raise ValueError("theta index must be 1, 2, 3 or 4")
    big_n = ctx.terms
    with mpmath.workprec(ctx.precision_bits + 16):
        q, z = ctx.q, mpmath.mpf(z)
        if j in (3, 4):
            s = mpmath.mpf(0)
            for n in range(1, big_n + 1):
                term = q ** (n * n) * mpmath.cos(2 * n * z)
                s += -term if (j == 4 and n % 2) else term
            out = 1 + 2 * s
        else:
            s = mpmath.mpf(0)
            for n in range(0, big_n + 1):
                e = (n + mpmath.mpf(1) / 2) ** 2
                if j == 1:
                    term = q ** e * mpmath.sin((2 * n + 1) * z)
                    s += -term if n % 2 else term
                else:
                    s += q ** e * mpmath.cos((2 * n + 1) * z)
            out = 2 * s
    with mpmath.workprec(ctx.precision_bits):
        return +out


def theta1_prime0(ctx: ThetaContext):
    """theta_1'(0) = 2 sum (-1)^n (2n+1) q^((n+1/2)^2), summed termwise."""
    big_n = ctx.terms
    with mpmath.workprec(ctx.precision_bits + 16):
        s = mpmath.mpf(0)
        for n in range(0, big_n + 1):
            term = (2 * n + 1) * ctx.q ** ((n + mpmath.mpf(1) / 2) ** 2)
            s += -term if n % 2 else term
        out = 2 * s
    with mpmath.workprec(ctx.precision_bits):
        return +out


def meixner_norm(k: int, q, precision_bits: int = DEFAULT_PRECISION_BITS):
    """(k!)^2 q^(k+1) / (1-q)^(2k+1): squared norm for the weight q^l on l >= 1.

    A Fraction (or int) q gives an exact Fraction.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if isinstance(q, (Fraction, int)):
        q = Fraction(q)
        if not 0 < q < 1:
            raise ValueError("need 0 < q < 1")
        return Fraction(math.factorial(k) ** 2) * q ** (k + 1) / (1 - q) ** (2 * k + 1)
    with mpmath.workprec(precision_bits):
        q = mpmath.mpf(q)
        if not 0 < q < 1:
            raise ValueError("need 0 < q < 1")
        return mpmath.factorial(k) ** 2 * q ** (k + 1) / (1 - q) ** (2 * k + 1)
