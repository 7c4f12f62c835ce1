"""Hankel determinants, partition functions, moments and orthogonal-polynomial norms.

Two routes to the half-turn partition function are provided.  The
determinant route builds the Hankel matrices of the derivative towers of
phi = c/(ab) and psi = 1/a + 1/b directly.  The norm route expresses each
Hankel determinant as a product of squared norms h_k of monic orthogonal
polynomials for a phase-specific weight:

    D  (integral over R)     tau_n = prod h_k,   moments are the towers
    AF (sum over l in Z)     tau_n = 2^{n^2} prod h_k
                             DW weight exp(2tl - 2g|l|)
                             HT weight exp((2l+1)t - |2l+1|g)
    F  (sum over l >= 0)     tau_n^DW = 2^{n^2} prod h_k, weight x^l - y^l
                             tau_n^HT = A^{n^2} B^n prod h_k, weight x^l + e^{-2g} y^l

with x = exp(-2(t-g)), y = exp(-2(t+g)).  The ferroelectric HT constants
(A, B) are calibrated numerically from n = 1, 2 and validated at n = 3.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from .core_model import PhaseParams, PhaseRegion, weights_from_params
from .errors import InsufficientPrecisionError, MomentSequenceError, TruncationError
from .series import derivative_tower_phi, derivative_tower_psi

N_MAX = 64
MAX_RETRIES = 3
FAMILIES = ("DW", "HT")
F_HT_VARIANTS = ("literal", "proof")


def _family(name):
    f = str(name).upper()
    if f not in FAMILIES:
        raise ValueError(f"family must be DW or HT, got {name!r}")
    return f


# ---------------------------------------------------------------- determinants

def _log2_equilibrated_hadamard(a, log2_det):
    """log2 of prod ||row|| / |det| after scaling rows, then columns, to unit max-norm."""
    n = len(a)
    r = [max(abs(x) for x in row) for row in a]
    c = [max(abs(a[i][j]) / r[i] for i in range(n)) for j in range(n)]
    log_scale = sum(float(mpmath.log(x, 2)) for x in r) + sum(float(mpmath.log(x, 2)) for x in c)
    log_rows = 0.0
    for i in range(n):
        nrm = mpmath.sqrt(mpmath.fsum((a[i][j] / (r[i] * c[j])) ** 2 for j in range(n)))
        log_rows += float(mpmath.log(nrm, 2))
    return log_rows - (log2_det - log_scale)


def _det_with_loss(rows, wp):
    """Determinant by LU with full pivoting, plus an estimate of the bits lost.

    The estimate is log2 of the Hadamard ratio of the row/column-equilibrated
    matrix plus log2 n.  On the Hankel matrices of this package it overstates
    the observed loss by roughly an order of magnitude, which errs on the safe side.
    """
    n = len(rows)
    if n == 0:
        return mpmath.mpf(1), 0.0
    with mpmath.workprec(wp):
        a = [[mpmath.mpf(x) for x in r] for r in rows]
        if any(not any(r) for r in a):
            return mpmath.mpf(0), 0.0
        orig = [list(r) for r in a]
        det = mpmath.mpf(1)
        for k in range(n):
            pi, pj, best = k, k, mpmath.mpf(0)
            for i in range(k, n):
                row = a[i]
                for j in range(k, n):
                    v = abs(row[j])
                    if v > best:
                        best, pi, pj = v, i, j
            if best == 0:
                return mpmath.mpf(0), 0.0
            if pi != k:
                a[k], a[pi] = a[pi], a[k]
                det = -det
            if pj != k:
                for r in a:
                    r[k], r[pj] = r[pj], r[k]
                det = -det
            piv = a[k][k]
            det *= piv
            rk = a[k]
            for i in range(k + 1, n):
                ri = a[i]
                f = ri[k] / piv
                if f:
                    for j in range(k + 1, n):
                        ri[j] -= f * rk[j]
        loss = _log2_equilibrated_hadamard(orig, float(mpmath.log(abs(det), 2))) + math.log2(n)
    return det, max(loss, 0.0)


def hankel_det(seq, n: int, working_bits: int | None = None):
    """det(seq[j + k])_{j,k < n}.

    Raises InsufficientPrecisionError when the estimated loss exceeds half of
    the working precision.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if len(seq) < 2 * n - 1:
        raise ValueError(f"need at least {2 * n - 1} entries, got {len(seq)}")
    wp = working_bits or mpmath.mp.prec
    rows = [[seq[i + j] for j in range(n)] for i in range(n)]
    det, loss = _det_with_loss(rows, wp)
    if loss > wp / 2:
        raise InsufficientPrecisionError(
            f"Hankel determinant of order {n} lost ~{loss:.0f} of {wp} bits", loss, wp)
    return det


def _tau(tower, p: PhaseParams, n: int):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return mpmath.mpf(1)
    wp = 2 * p.precision_bits
    for attempt in range(MAX_RETRIES + 1):
        seq = tower(p, 2 * n - 2, wp)
        try:
            det = hankel_det(seq, n, wp)
        except InsufficientPrecisionError as exc:
            if attempt == MAX_RETRIES:
                raise
            wp = max(2 * wp, int(2 * exc.bits_lost) + 64)
            continue
        with mpmath.workprec(p.precision_bits):
            return +det
    raise AssertionError("unreachable")


@lru_cache(maxsize=512)
def tau_dw(p: PhaseParams, n: int):
    """Hankel determinant of phi^(j+k)(t), 0 <= j, k < n."""
    return _tau(derivative_tower_phi, p, n)


@lru_cache(maxsize=512)
def tau_ht(p: PhaseParams, n: int):
    """Hankel determinant of psi^(j+k)(t), 0 <= j, k < n."""
    return _tau(derivative_tower_psi, p, n)


def _check_n(n, n_max):
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > n_max:
        raise ValueError(f"n={n} exceeds n_max={n_max}")


def _superfactorial(n):
    out = 1
    for j in range(n):
        out *= math.factorial(j)
    return out


def z_ht(p: PhaseParams, n: int, n_max: int = N_MAX):
    """Half-turn partition function of the 2n x 2n lattice (determinant route)."""
    _check_n(n, n_max)
    w = weights_from_params(p)
    td, th = tau_dw(p, n), tau_ht(p, n)
    with mpmath.workprec(p.precision_bits + 32):
        z = (w.a * w.b) ** (2 * n * n) / mpmath.mpf(_superfactorial(n)) ** 4 * td * th
    with mpmath.workprec(p.precision_bits):
        return +z


def z_dw(p: PhaseParams, n: int, n_max: int = N_MAX):
    """Domain-wall partition function of the n x n lattice with weights (a, a, b, b, c, c)."""
    _check_n(n, n_max)
    w = weights_from_params(p)
    td = tau_dw(p, n)
    with mpmath.workprec(p.precision_bits + 32):
        z = (w.a * w.b) ** (n * n) / mpmath.mpf(_superfactorial(n)) ** 2 * td
    with mpmath.workprec(p.precision_bits):
        return +z


# ---------------------------------------------------------------- moments

@dataclass(frozen=True)
class MomentSequence:
    phase: PhaseRegion
    family: str
    t0: mpmath.mpf
    moments: tuple
    precision_bits: int
    variant: str = "literal"

    def __len__(self):
        return len(self.moments)


@dataclass(frozen=True)
class NormSequence:
    phase: PhaseRegion
    family: str
    h: tuple
    precision_bits: int
    provenance: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.h)


def _discrete_weight(p: PhaseParams, family: str, variant: str, wp: int):
    """(weight(l) callable, per-step decay ratio, two_sided)."""
    g, t = p.gamma, p.t
    with mpmath.workprec(wp):
        if p.phase is PhaseRegion.ANTIFERROELECTRIC:
            ratio = float(mpmath.exp(-2 * (g - abs(t))))
            if family == "DW":
                def w(l):
                    return mpmath.exp(2 * t * l - 2 * g * abs(l))
            else:
                def w(l):
                    return mpmath.exp((2 * l + 1) * t - abs(2 * l + 1) * g)
            return w, ratio, True
        x, y = mpmath.exp(-2 * (t - g)), mpmath.exp(-2 * (t + g))
        ratio = float(x)
        if family == "DW":
            def w(l):
                return x ** l - y ** l
        else:
            coef = mpmath.exp(-2 * g) if variant == "literal" else mpmath.exp(-4 * g)

            def w(l):
                return x ** l + coef * y ** l
        return w, ratio, False


def _cutoff(order: int, ratio: float, bits: int, limit: int = 10 ** 6) -> int:
    """Smallest L with sum_{l>L} l^m r^l < 2^-bits * max_l l^m r^l for every m <= order."""
    if not 0 < ratio < 1:
        raise TruncationError(f"weight does not decay (ratio {ratio})")
    lr = math.log(ratio)
    rho = (1 + ratio) / 2
    big_l = 1
    for m in range(order + 1):
        # beyond l0 the term ratio (1+1/l)^m r stays below rho < 1
        l0 = 1 if m == 0 else math.ceil(1 / (math.exp(math.log(rho / ratio) / m) - 1))
        peak = max(1.0, m / -lr)
        log_peak = m * math.log(peak) + peak * lr
        target = log_peak - bits * math.log(2) + math.log(1 - rho)
        big_l = max(big_l, l0)
        while m * math.log(big_l) + big_l * lr > target:
            big_l += max(1, big_l // 16)
            if big_l > limit:
                raise TruncationError(
                    f"cannot certify moment tail at {bits} bits within {limit} terms")
    return big_l


def moments(p: PhaseParams, family: str, count: int, working_bits: int | None = None,
            variant: str = "literal") -> MomentSequence:
    """mu_0 .. mu_{count-1} of the orthogonality weight for ``family`` in p's phase.

    D-phase moments are the derivative towers themselves.  AF and F moments are
    lattice sums truncated where a geometric tail bound certifies the
    remainder below 2^-working_bits relative to the largest term.  ``variant``
    selects the second coefficient of the ferroelectric HT weight:
    ``literal`` uses e^{-2g}, ``proof`` uses e^{-4g}.
    """
    family = _family(family)
    if variant not in F_HT_VARIANTS:
        raise ValueError(f"variant must be one of {F_HT_VARIANTS}")
    if count < 1:
        raise ValueError("need at least one moment")
    wp = working_bits or p.precision_bits
    order = count - 1
    if p.phase is PhaseRegion.DISORDERED:
        tower = derivative_tower_phi if family == "DW" else derivative_tower_psi
        mus = tower(p, order, wp)
        return MomentSequence(p.phase, family, p.t, tuple(mus), wp, variant)
    w, ratio, two_sided = _discrete_weight(p, family, variant, wp + 16)
    cut = _cutoff(order, ratio, wp + 16)
    with mpmath.workprec(wp + 16 + int(math.log2(cut + 2)) + 8):
        acc = [mpmath.mpf(0)] * count
        support = range(-cut, cut + 1) if two_sided else range(0, cut + 1)
        for l in support:
            wl = w(l)
            if not wl:
                continue
            term = wl
            for m in range(count):
                acc[m] += term
                term *= l
    with mpmath.workprec(wp):
        mus = tuple(+m for m in acc)
    return MomentSequence(p.phase, family, p.t, mus, wp, variant)


def norms_from_moments(ms: MomentSequence, kmax: int) -> NormSequence:
    """h_k = Delta_{k+1} / Delta_k for k = 0..kmax, from unpivoted elimination.

    The k-th pivot of Gaussian elimination without pivoting on the Hankel
    matrix is exactly the ratio of consecutive leading principal minors.
    """
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    size = kmax + 1
    if len(ms.moments) < 2 * size - 1:
        raise ValueError(f"need {2 * size - 1} moments for kmax={kmax}, have {len(ms.moments)}")
    wp = ms.precision_bits
    mu = ms.moments
    h = []
    with mpmath.workprec(wp):
        a = [[mpmath.mpf(mu[i + j]) for j in range(size)] for i in range(size)]
        for k in range(size):
            piv = a[k][k]
            if not piv > 0:
                raise MomentSequenceError(
                    f"nonpositive norm h_{k} = {mpmath.nstr(piv, 5)}; "
                    "precision exhausted or moments invalid")
            h.append(+piv)
            rk = a[k]
            for i in range(k + 1, size):
                ri = a[i]
                f = ri[k] / piv
                for j in range(k + 1, size):
                    ri[j] -= f * rk[j]
    return NormSequence(ms.phase, ms.family, tuple(h), wp,
                        {"t0": mpmath.nstr(ms.t0, 20), "variant": ms.variant})


def default_norm_bits(p: PhaseParams, kmax: int) -> int:
    """Working precision prior for norms up to kmax.

    Measured loss in the elimination stays near 2-3 bits per unit of k
    (about 200 bits at k = 60 in the ferroelectric phase), so 4 bits per k
    plus a fixed margin is a safe starting point; norm_sequence verifies it.
    """
    return p.precision_bits + 4 * max(kmax, 1) + 64


def norm_sequence(p: PhaseParams, family: str, kmax: int, working_bits: int | None = None,
                  variant: str = "literal") -> NormSequence:
    """Norms h_0..h_kmax accurate to p.precision_bits.

    The computation is repeated at a higher precision and the two results are
    compared; precision doubles until they agree to p.precision_bits.
    """
    family = _family(family)
    wp = working_bits or default_norm_bits(p, kmax)
    target = p.precision_bits
    prev = None
    for attempt in range(MAX_RETRIES + 2):
        try:
            cur = norms_from_moments(moments(p, family, 2 * kmax + 1, wp, variant), kmax)
        except MomentSequenceError:
            if attempt > MAX_RETRIES:
                raise
            wp *= 2
            prev = None
            continue
        if prev is not None:
            with mpmath.workprec(wp):
                err = max(abs(x / y - 1) for x, y in zip(prev.h, cur.h))
            if err <= mpmath.ldexp(1, -target):
                with mpmath.workprec(target):
                    hs = tuple(+x for x in cur.h)
                return NormSequence(p.phase, family, hs, target,
                                    {**cur.provenance, "working_bits": wp})
        prev = cur
        wp = wp + max(64, wp // 4) if attempt == 0 else 2 * wp
    raise InsufficientPrecisionError(
        f"norms up to k={kmax} did not stabilise by {wp} bits", float("nan"), wp)


# ---------------------------------------------------------------- assembly

@dataclass(frozen=True)
class FPrefactor:
    """tau_n^HT / prod h_k^HT = A^{n^2} B^n for the ferroelectric HT weight."""

    variant: str
    A: mpmath.mpf
    B: mpmath.mpf
    validation_error: mpmath.mpf
    matches: bool


@lru_cache(maxsize=64)
def calibrate_f_prefactor(p: PhaseParams, variant: str = "literal") -> FPrefactor:
    """Fit A, B from n = 1, 2 and test the fit at n = 3."""
    if p.phase is not PhaseRegion.FERROELECTRIC:
        raise ValueError("calibration applies to the ferroelectric phase only")
    ns = norm_sequence(p, "HT", 2, variant=variant)
    with mpmath.workprec(p.precision_bits):
        logs = []
        for n in (1, 2, 3):
            prod = mpmath.fprod(ns.h[:n])
            logs.append(mpmath.log(tau_ht(p, n) / prod))
        log_a = (logs[1] - 2 * logs[0]) / 2
        log_b = logs[0] - log_a
        pred3 = 9 * log_a + 3 * log_b
        err = abs(pred3 - logs[2])
        ok = err <= mpmath.ldexp(1, -(p.precision_bits // 2))
        return FPrefactor(variant, mpmath.exp(log_a), mpmath.exp(log_b), err, bool(ok))


def tau_via_norms(p: PhaseParams, family: str, n: int, norms: NormSequence | None = None):
    """tau_n reassembled from norms with the phase's prefactor."""
    family = _family(family)
    if norms is None:
        norms = norm_sequence(p, family, max(n - 1, 0))
    with mpmath.workprec(p.precision_bits + 32):
        prod = mpmath.fprod(norms.h[:n]) if n else mpmath.mpf(1)
        if p.phase is PhaseRegion.DISORDERED:
            pre = mpmath.mpf(1)
        elif p.phase is PhaseRegion.ANTIFERROELECTRIC or family == "DW":
            pre = mpmath.mpf(2) ** (n * n)
        else:
            cal = calibrate_f_prefactor(p)
            pre = cal.A ** (n * n) * cal.B ** n
        out = pre * prod
    with mpmath.workprec(p.precision_bits):
        return +out


def z_ht_via_norms(p: PhaseParams, n: int, n_max: int = N_MAX, norms_dw=None, norms_ht=None):
    """Half-turn partition function from the two norm families."""
    _check_n(n, n_max)
    w = weights_from_params(p)
    td = tau_via_norms(p, "DW", n, norms_dw)
    th = tau_via_norms(p, "HT", n, norms_ht)
    with mpmath.workprec(p.precision_bits + 32):
        z = (w.a * w.b) ** (2 * n * n) / mpmath.mpf(_superfactorial(n)) ** 4 * td * th
    with mpmath.workprec(p.precision_bits):
        return +z


def z_ht_table_via_norms(p: PhaseParams, n_values):
    """{n: z_ht} for many n from one pair of norm sequences."""
    n_values = sorted(set(n_values))
    top = n_values[-1]
    nd = norm_sequence(p, "DW", top - 1)
    nh = norm_sequence(p, "HT", top - 1)
    return {n: z_ht_via_norms(p, n, max(top, N_MAX), nd, nh) for n in n_values}


# ---------------------------------------------------------------- tables

def _full(x, bits):
    return mpmath.nstr(x, max(17, int(bits * math.log10(2)) + 2), strip_zeros=False)


def partition_table(p: PhaseParams, n_values):
    """Rows (n, tau_dw, tau_ht, z) as full-precision decimal strings."""
    rows = []
    for n in n_values:
        rows.append({
            "n": n,
            "tau_dw": _full(tau_dw(p, n), p.precision_bits),
            "tau_ht": _full(tau_ht(p, n), p.precision_bits),
            "z": _full(z_ht(p, n), p.precision_bits),
        })
    return rows


def norm_table(ns: NormSequence):
    return [{"k": k, "h_k": _full(h, ns.precision_bits)} for k, h in enumerate(ns.h)]


def to_csv(rows) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    wr = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    wr.writeheader()
    wr.writerows(rows)
    return buf.getvalue()


def to_json(rows, **meta) -> str:
    return json.dumps({**meta, "rows": rows}, indent=2)
