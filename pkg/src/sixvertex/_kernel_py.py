"""Pure-Python enumeration kernel.

Alternating sign matrices are generated row by row.  The state between rows
is the bitmask of column partial sums (bit j set when column j has summed to
1 so far).  Each row is a sequence of entries in {-1, 0, 1} whose partial
sums stay in {0, 1} and end at 1, with +1 allowed only over a 0 column sum
and -1 only over a 1 column sum.

Vertex types follow the arrow table in :mod:`sixvertex.enumerator`: with
``r`` the row partial sum to the left of a vertex and ``s`` the column
partial sum above it, a zero entry has type 1 (r=1, s=1), 2 (r=0, s=0),
3 (r=1, s=0) or 4 (r=0, s=1); +1 entries are type 5 and -1 entries type 6.
"""
from __future__ import annotations

from functools import lru_cache

# (r, s) -> type index (0-based) for a zero entry
_ZERO_TYPE = {(1, 1): 0, (0, 0): 1, (1, 0): 2, (0, 1): 3}
# rotation by 180 degrees swaps types 1<->2 and 3<->4
_ROTATE = (1, 0, 3, 2, 4, 5)


@lru_cache(maxsize=None)
def _rows(n, state):
    """All admissible rows below column-sum ``state``: (new_state, counts, entries)."""
    out = []

    def walk(j, r, entries, counts, new_state):
        if j == n:
            if r == 1:
                out.append((new_state, tuple(counts), tuple(entries)))
            return
        s = (state >> j) & 1
        # zero entry
        k = _ZERO_TYPE[(r, s)]
        counts[k] += 1
        entries.append(0)
        walk(j + 1, r, entries, counts, new_state)
        entries.pop()
        counts[k] -= 1
        if r == 0 and s == 0:
            counts[4] += 1
            entries.append(1)
            walk(j + 1, 1, entries, counts, new_state | (1 << j))
            entries.pop()
            counts[4] -= 1
        elif r == 1 and s == 1:
            counts[5] += 1
            entries.append(-1)
            walk(j + 1, 0, entries, counts, new_state & ~(1 << j))
            entries.pop()
            counts[5] -= 1

    walk(0, 0, [], [0] * 6, state)
    return tuple(out)


def iter_asms(n, symmetric=False):
    """Yield every n x n ASM (tuple of row tuples), optionally only half-turn symmetric ones."""
    if n == 0:
        yield ()
        return
    rows = []

    def walk(i, state):
        if i == n:
            m = tuple(rows)
            if not symmetric or _is_symmetric(m):
                yield m
            return
        if symmetric and n % 2 == 0 and i == n // 2 and not _complementary(state, n):
            return
        for new_state, _, entries in _rows(n, state):
            rows.append(entries)
            yield from walk(i + 1, new_state)
            rows.pop()

    yield from walk(0, 0)


def _is_symmetric(m):
    n = len(m)
    return all(m[i][j] == m[n - 1 - i][n - 1 - j] for i in range(n) for j in range(n))


def _complementary(state, n):
    return all(((state >> j) & 1) + ((state >> (n - 1 - j)) & 1) == 1 for j in range(n))


def type_histogram(n, symmetric=False):
    """Map vertex-type count tuples (N1..N6) to multiplicities over DWBC configurations."""
    hist = {}
    if n == 0:
        return {(0,) * 6: 1}
    if symmetric and n % 2 == 1:
        for m in iter_asms(n, symmetric=True):
            key = asm_type_counts(m)
            hist[key] = hist.get(key, 0) + 1
        return hist
    depth = n // 2 if symmetric else n

    def walk(i, state, counts):
        if i == depth:
            if symmetric:
                if not _complementary(state, n):
                    return
                key = tuple(counts[k] + counts[_ROTATE[k]] for k in range(6))
            else:
                key = counts
            hist[key] = hist.get(key, 0) + 1
            return
        for new_state, row_counts, _ in _rows(n, state):
            walk(i + 1, new_state, tuple(x + y for x, y in zip(counts, row_counts)))

    walk(0, 0, (0,) * 6)
    return hist


def asm_type_counts(m):
    n = len(m)
    counts = [0] * 6
    col = [0] * n
    for i in range(n):
        r = 0
        for j in range(n):
            v = m[i][j]
            if v == 1:
                counts[4] += 1
            elif v == -1:
                counts[5] += 1
            else:
                counts[_ZERO_TYPE[(r, col[j])]] += 1
            r += v
            col[j] += v
    return tuple(counts)


def count(n, symmetric=False):
    return sum(type_histogram(n, symmetric).values())
