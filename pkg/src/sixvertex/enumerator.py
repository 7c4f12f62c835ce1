"""Brute-force enumeration of DWBC ice configurations on small lattices.

Arrow conventions.  ``h[i][j]`` is the horizontal edge left of vertex
``(i, j)`` in row ``i`` (``j = N`` is the right boundary edge); ``v[i][j]`` is
the vertical edge above vertex ``(i, j)`` in column ``j`` (``i = N`` is the
bottom boundary edge).  Horizontal arrows are ``RIGHT = +1`` / ``LEFT = -1``,
vertical arrows ``UP = +1`` / ``DOWN = -1``.

Vertex types, keyed by the arrows on the (left, right, top, bottom) edges;
the symbol above and below each vertex is the arrow on that vertical edge::

     type 1     type 2     type 3     type 4     type 5     type 6
       ^          v          v          ^          v          ^
    -> + ->    <- + <-    -> + ->    <- + <-    <- + ->    -> + <-
       ^          v          v          ^          ^          v

Types 1, 2 carry weight a, types 3, 4 weight b, types 5, 6 weight c.  Under
DWBC a type-5 vertex is a +1 entry of the alternating sign matrix and a
type-6 vertex a -1 entry.  A half-turn rotation swaps 1 <-> 2 and 3 <-> 4 and
fixes 5 and 6.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

import mpmath

from . import kernel
from .core_model import DEFAULT_PRECISION_BITS
from .errors import ResourceLimitError

RIGHT, LEFT = 1, -1
UP, DOWN = 1, -1
N_MAX = 8

VERTEX_TYPES = {
    (RIGHT, RIGHT, UP, UP): 1,
    (LEFT, LEFT, DOWN, DOWN): 2,
    (RIGHT, RIGHT, DOWN, DOWN): 3,
    (LEFT, LEFT, UP, UP): 4,
    (LEFT, RIGHT, DOWN, UP): 5,
    (RIGHT, LEFT, UP, DOWN): 6,
}


class TypeCounts(NamedTuple):
    N1: int
    N2: int
    N3: int
    N4: int
    N5: int
    N6: int

    def conservation_violations(self, size):
        """Names of the violated conservation laws for a DWBC lattice of this size."""
        bad = []
        if sum(self) != size * size:
            bad.append("sum N_i = N^2")
        if self.N5 - self.N6 != size:
            bad.append("N5 - N6 = N")
        if self.N1 != self.N2:
            bad.append("N1 = N2")
        if self.N3 != self.N4:
            bad.append("N3 = N4")
        return bad


@dataclass(frozen=True)
class Configuration:
    size: int
    h: tuple  # size rows of size+1 horizontal arrows
    v: tuple  # size+1 rows of size vertical arrows

    @classmethod
    def from_asm(cls, m) -> "Configuration":
        n = len(m)
        h = []
        for i in range(n):
            r, row = 0, [LEFT]
            for j in range(n):
                r += m[i][j]
                row.append(RIGHT if r == 1 else LEFT)
            h.append(tuple(row))
        col = [0] * n
        v = [tuple(DOWN for _ in range(n))]
        for i in range(n):
            for j in range(n):
                col[j] += m[i][j]
            v.append(tuple(UP if s == 1 else DOWN for s in col))
        return cls(n, tuple(h), tuple(v))

    def vertex_arrows(self, i, j):
        return self.h[i][j], self.h[i][j + 1], self.v[i][j], self.v[i + 1][j]

    def is_valid(self) -> bool:
        """Ice rule everywhere plus domain wall boundary arrows."""
        n = self.size
        if len(self.h) != n or len(self.v) != n + 1:
            return False
        if any(len(r) != n + 1 for r in self.h) or any(len(r) != n for r in self.v):
            return False
        for i in range(n):
            if self.h[i][0] != LEFT or self.h[i][n] != RIGHT:
                return False
        for j in range(n):
            if self.v[0][j] != DOWN or self.v[n][j] != UP:
                return False
        for i in range(n):
            for j in range(n):
                left, right, top, bottom = self.vertex_arrows(i, j)
                # arrows pointing into the vertex
                inward = (left == RIGHT) + (right == LEFT) + (top == DOWN) + (bottom == UP)
                if inward != 2:
                    return False
        return True


def asm_number(n: int) -> int:
    """Number of n x n alternating sign matrices (product formula)."""
    num, den = 1, 1
    for k in range(n):
        num *= math.factorial(3 * k + 1)
        den *= math.factorial(n + k)
    return num // den


def _guard(n, n_max):
    if n < 0:
        raise ValueError("lattice size must be non-negative")
    if n > n_max:
        raise ResourceLimitError(
            f"N={n} exceeds N_max={n_max} (about {asm_number(n) * n * n:.3g} vertex visits)")


def enumerate_dwbc(n: int, n_max: int = N_MAX, symmetric: bool = False) -> Iterator[Configuration]:
    """Yield every DWBC ice configuration on the n x n lattice exactly once."""
    _guard(n, n_max)
    for m in kernel.iter_asms(n, symmetric=symmetric):
        yield Configuration.from_asm(m)


def is_half_turn_symmetric(cfg: Configuration) -> bool:
    """True when the arrow field is fixed by a 180 degree rotation of the lattice.

    Rotation carries an edge to its image and reverses the arrow in absolute
    coordinates.
    """
    n = cfg.size
    for i in range(n):
        for j in range(n + 1):
            if cfg.h[i][j] != -cfg.h[n - 1 - i][n - j]:
                return False
    for i in range(n + 1):
        for j in range(n):
            if cfg.v[i][j] != -cfg.v[n - i][n - 1 - j]:
                return False
    return True


def vertex_type(cfg: Configuration, i: int, j: int) -> int:
    return VERTEX_TYPES[cfg.vertex_arrows(i, j)]


def type_counts(cfg: Configuration) -> TypeCounts:
    counts = [0] * 6
    for i in range(cfg.size):
        for j in range(cfg.size):
            counts[vertex_type(cfg, i, j) - 1] += 1
    return TypeCounts(*counts)


def config_to_asm(cfg: Configuration):
    """ASM with +1 at type-5 vertices, -1 at type-6 vertices, 0 elsewhere."""
    n = cfg.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            t = vertex_type(cfg, i, j)
            row.append(1 if t == 5 else -1 if t == 6 else 0)
        out.append(tuple(row))
    return tuple(out)


def is_asm(m) -> bool:
    n = len(m)
    if any(len(r) != n for r in m):
        return False
    lines = [list(r) for r in m] + [[m[i][j] for i in range(n)] for j in range(n)]
    for line in lines:
        nz = [x for x in line if x != 0]
        if any(x not in (-1, 1) for x in nz) or sum(nz) != 1:
            return False
        if any(nz[k] == nz[k + 1] for k in range(len(nz) - 1)):
            return False
    return True


@lru_cache(maxsize=64)
def _histogram(n, symmetric):
    return tuple(sorted(kernel.type_histogram(n, symmetric).items()))


def type_histogram(n: int, symmetric: bool = False, n_max: int = N_MAX) -> dict:
    """Multiplicity of each TypeCounts over (optionally HT-symmetric) DWBC configurations."""
    _guard(n, n_max)
    return {TypeCounts(*k): c for k, c in _histogram(n, bool(symmetric))}


def count_configurations(n: int, symmetric: bool = False, n_max: int = N_MAX) -> int:
    return sum(type_histogram(n, symmetric, n_max).values())


def _weighted_sum(hist, w, precision_bits):
    if len(w) != 6:
        raise ValueError("six vertex weights required")
    if any(not (x > 0) for x in w):
        raise ValueError("vertex weights must be positive")
    if all(isinstance(x, (int, Fraction)) for x in w):
        total = Fraction(0)
        for counts, mult in hist.items():
            term = Fraction(mult)
            for x, e in zip(w, counts):
                term *= Fraction(x) ** e
            total += term
        return total
    with mpmath.workprec(precision_bits):
        ws = [mpmath.mpf(x) if not isinstance(x, Fraction)
              else mpmath.mpf(x.numerator) / x.denominator for x in w]
        terms = []
        for counts, mult in hist.items():
            term = mpmath.mpf(mult)
            for x, e in zip(ws, counts):
                if e:
                    term *= x ** e
            terms.append(term)
        return mpmath.fsum(terms)


def partition_ht(n: int, w, n_max: int = N_MAX, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Sum of prod w_i^{N_i} over half-turn symmetric DWBC configurations (n even).

    Integer or Fraction weights give an exact Fraction; anything else is
    summed as mpf at ``precision_bits``.
    """
    if n % 2:
        raise ValueError("the half-turn symmetric model lives on even lattices")
    return _weighted_sum(type_histogram(n, True, n_max), tuple(w), precision_bits)


def partition_dwbc(n: int, w, n_max: int = N_MAX, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Sum of prod w_i^{N_i} over all DWBC configurations of the n x n lattice."""
    return _weighted_sum(type_histogram(n, False, n_max), tuple(w), precision_bits)


def asm_dump_lines(n: int, symmetric: bool = False, n_max: int = N_MAX) -> Iterator[str]:
    """One configuration per line: its ASM in row-major comma-separated integers."""
    _guard(n, n_max)
    for m in kernel.iter_asms(n, symmetric=symmetric):
        yield ",".join(str(x) for row in m for x in row)
