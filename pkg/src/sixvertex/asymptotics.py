"""Closed-form large-n predictions and fits that compare them with finite-n data.

Disordered phase:
    G = pi / (2 gamma cos(pi zeta / 2)),  F = a b G,
    kappa_DW = 1/12 - 2 gamma^2 / (3 pi (pi - 2 gamma)),
    kappa_HT = 1/12 + gamma^2 / (3 pi (pi - 2 gamma)),
    Z ~ C n^kappa F^{2n^2} with kappa = kappa_DW + kappa_HT.
Antiferroelectric phase, with omega = (pi/2)(1 + zeta):
    G = pi theta_1'(0) / (2 gamma theta_1(omega)),  F = 2 a b G,
    h_k / (k!)^2 ~ G^{2k+1} theta_j((k+1) omega) / theta_j(k omega), j = 4 (DW), 3 (HT),
    Z ~ C theta_3(n omega) theta_4(n omega) F^{2n^2}.
Ferroelectric phase:
    F = sinh(t + gamma),  G = exp(gamma - t),  h_k compared with Meixner norms
    for q = exp(-2(t - gamma)).
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .core_model import PhaseParams, PhaseRegion, weights_from_params
from .errors import InsufficientDataError
from .special import ThetaContext, meixner_norm, theta, theta1_prime0

MIN_POINTS = 20
WINDOW_RANGE = (4, 16)


@dataclass
class AsymptoticPrediction:
    phase: str
    params: dict
    F: mpmath.mpf
    G: mpmath.mpf
    kappa: mpmath.mpf | None = None
    kappa_dw: mpmath.mpf | None = None
    kappa_ht: mpmath.mpf | None = None
    omega: mpmath.mpf | None = None
    theta3_n: mpmath.mpf | None = None
    theta4_n: mpmath.mpf | None = None
    C: object = "unknown"
    n: int | None = None
    leading: mpmath.mpf | None = None

    def as_dict(self, digits=20):
        out = {}
        for k, v in asdict(self).items():
            out[k] = mpmath.nstr(v, digits) if isinstance(v, mpmath.mpf) else v
        return out


def kappa_dw(gamma):
    return mpmath.mpf(1) / 12 - 2 * gamma ** 2 / (3 * mpmath.pi * (mpmath.pi - 2 * gamma))


def kappa_ht(gamma):
    return mpmath.mpf(1) / 12 + gamma ** 2 / (3 * mpmath.pi * (mpmath.pi - 2 * gamma))


def kappa_total(gamma):
    return mpmath.mpf(1) / 6 - gamma ** 2 / (3 * mpmath.pi * (mpmath.pi - 2 * gamma))


def theta_context(p: PhaseParams) -> ThetaContext:
    return ThetaContext.for_gamma(p.gamma, p.precision_bits)


def af_omega(p: PhaseParams):
    with mpmath.workprec(p.precision_bits):
        return mpmath.pi / 2 * (1 + p.t / p.gamma)


def d_omega(p: PhaseParams):
    """Frequency of the oscillatory correction in the disordered-phase norms."""
    with mpmath.workprec(p.precision_bits):
        return -mpmath.pi * (1 + p.t / p.gamma)


def growth_G(p: PhaseParams):
    """Per-step growth G of h_k / (k!)^2 ~ G^{2k+1}."""
    with mpmath.workprec(p.precision_bits):
        g, t = p.gamma, p.t
        if p.phase is PhaseRegion.DISORDERED:
            cos_arg = mpmath.cos(mpmath.pi * t / (2 * g))
            if not cos_arg > 0:
                raise ValueError("cos(pi t / 2 gamma) must be positive")
            return mpmath.pi / (2 * g * cos_arg)
        if p.phase is PhaseRegion.ANTIFERROELECTRIC:
            ctx = theta_context(p)
            return mpmath.pi * theta1_prime0(ctx) / (2 * g * theta(1, af_omega(p), ctx))
        return mpmath.exp(g - t)


def predict_leading(p: PhaseParams, n: int | None = None) -> AsymptoticPrediction:
    """Growth constants for p's phase and, when n is given, the leading term at n.

    Disordered and antiferroelectric multiplicative constants are not known in
    closed form and are reported as "unknown" (the leading term omits them).
    The ferroelectric C is the stated closed form (1 + e^{-4g})(1 - e^{-4g}).
    """
    w = weights_from_params(p)
    G = growth_G(p)
    with mpmath.workprec(p.precision_bits):
        g = p.gamma
        pred = AsymptoticPrediction(p.phase.value, p.describe(), mpmath.mpf(0), G, n=n)
        if p.phase is PhaseRegion.DISORDERED:
            pred.F = w.a * w.b * G
            pred.kappa_dw, pred.kappa_ht = kappa_dw(g), kappa_ht(g)
            pred.kappa = kappa_total(g)
            if n:
                pred.leading = mpmath.mpf(n) ** pred.kappa * pred.F ** (2 * n * n)
        elif p.phase is PhaseRegion.ANTIFERROELECTRIC:
            pred.F = 2 * w.a * w.b * G
            pred.omega = af_omega(p)
            if n:
                ctx = theta_context(p)
                pred.theta3_n = theta(3, n * pred.omega, ctx)
                pred.theta4_n = theta(4, n * pred.omega, ctx)
                pred.leading = pred.theta3_n * pred.theta4_n * pred.F ** (2 * n * n)
        else:
            pred.F = mpmath.sinh(p.t + g)
            e4 = mpmath.exp(-4 * g)
            pred.C = (1 + e4) * (1 - e4)
            if n:
                pred.leading = pred.C * G ** (2 * n) * pred.F ** (2 * n * n)
    return pred


def predict_hk(p: PhaseParams, family: str, k: int):
    """Deterministic part of the large-k prediction for h_k.

    The ferroelectric prediction is the Meixner norm for q = e^{-2(t-g)},
    i.e. the weight q^l on l >= 1.
    """
    family = family.upper()
    if family not in ("DW", "HT"):
        raise ValueError("family must be DW or HT")
    if k < 1 and p.phase is PhaseRegion.DISORDERED:
        raise ValueError("the disordered-phase prediction needs k >= 1")
    if k < 0:
        raise ValueError("k must be non-negative")
    if p.phase is PhaseRegion.FERROELECTRIC:
        with mpmath.workprec(p.precision_bits):
            q = mpmath.exp(-2 * (p.t - p.gamma))
        return meixner_norm(k, q, p.precision_bits)
    G = growth_G(p)
    with mpmath.workprec(p.precision_bits):
        base = mpmath.factorial(k) ** 2 * G ** (2 * k + 1)
        if p.phase is PhaseRegion.DISORDERED:
            kap = kappa_dw(p.gamma) if family == "DW" else kappa_ht(p.gamma)
            return base * (1 + kap / k)
        return base * theta_ratio(p, family, k)


def theta_ratio(p: PhaseParams, family: str, k: int):
    """theta_j((k+1) omega) / theta_j(k omega) with j = 4 for DW, 3 for HT."""
    j = 4 if family.upper() == "DW" else 3
    ctx = theta_context(p)
    om = af_omega(p)
    with mpmath.workprec(p.precision_bits):
        return theta(j, (k + 1) * om, ctx) / theta(j, k * om, ctx)


def meixner_ratios(p: PhaseParams, norms) -> list:
    """h_k / h_k^Q for a ferroelectric norm sequence, with supports aligned.

    The DW weight vanishes at l = 0, so it lives on l >= 1 like the Meixner
    norm formula.  The HT weight starts at l = 0; its norms are compared with
    the Meixner norms of q^l on l >= 0, which equal h_k^Q / q.
    """
    with mpmath.workprec(p.precision_bits):
        q = mpmath.exp(-2 * (p.t - p.gamma))
        shift = q if norms.family == "HT" else 1
        return [h * shift / meixner_norm(k, q, p.precision_bits) for k, h in enumerate(norms.h)]


# ---------------------------------------------------------------- fitting

@dataclass
class FitResult:
    model: str
    estimate: dict
    residuals: list
    details: dict = field(default_factory=dict)


def choose_window(omega: float, bounds=WINDOW_RANGE) -> int:
    """Nearest integer to 2 pi / (omega mod 2 pi), clamped to bounds."""
    lo, hi = bounds
    w = math.fmod(abs(omega), 2 * math.pi)
    if w < 1e-12:
        return hi
    return min(hi, max(lo, round(2 * math.pi / w)))


def _lstsq(columns, y):
    a = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    return coef, y - a @ coef


def fit_kappa_over_k(ks, hs, G, omega=None, window=None, k_fit_min=None, precision_bits=256):
    """Estimate kappa from h_k ~ (k!)^2 G^{2k+1} (1 + kappa/k + eps_k).

    g_k = k (h_k / ((k!)^2 G^{2k+1}) - 1) is averaged over a sliding window
    that suppresses an oscillation at omega, then a + b/k is fitted to the
    window means over the upper part of the range; kappa = a.
    """
    pairs = sorted(zip(ks, hs))
    if len(pairs) < MIN_POINTS:
        raise InsufficientDataError(f"need at least {MIN_POINTS} points, got {len(pairs)}")
    pairs = [(k, h) for k, h in pairs if k >= 1]
    with mpmath.workprec(precision_bits):
        gk = [(k, float(k * (h / (mpmath.factorial(k) ** 2 * G ** (2 * k + 1)) - 1)))
              for k, h in pairs]
    if window is None:
        window = choose_window(float(omega)) if omega is not None else WINDOW_RANGE[0]
    ks_arr = np.array([k for k, _ in gk], dtype=float)
    g_arr = np.array([g for _, g in gk])
    means_k, means = [], []
    for i in range(len(gk) - window + 1):
        means_k.append(ks_arr[i:i + window].mean())
        means.append(g_arr[i:i + window].mean())
    means_k, means = np.array(means_k), np.array(means)
    kmax = ks_arr[-1]
    k_fit_min = k_fit_min if k_fit_min is not None else max(10.0, kmax / 4)
    sel = means_k >= k_fit_min
    if sel.sum() < 3:
        raise InsufficientDataError("too few windowed points in the fit range")
    coef, res = _lstsq([np.ones(sel.sum()), 1 / means_k[sel]], means[sel])
    return FitResult("kappa_over_k", {"kappa": float(coef[0]), "slope_1_over_k": float(coef[1])},
                     [float(r) for r in res],
                     {"window": window, "k_fit_min": float(k_fit_min), "points": int(sel.sum())})


def fit_power_law_n(ns, zs, extra=None, basis=("n2", "logn", "const"), precision_bits=256):
    """Least squares of log Z on the chosen basis.

    Basis names: n2 -> 2n^2, logn -> log n, n -> 2n, const -> 1.  ``extra``
    is an optional sequence subtracted from log Z first (e.g. the log of
    theta_3(n omega) theta_4(n omega)).
    """
    pairs = sorted(zip(ns, zs, extra if extra is not None else [0] * len(ns)))
    if len(pairs) < MIN_POINTS:
        raise InsufficientDataError(f"need at least {MIN_POINTS} points, got {len(pairs)}")
    n = np.array([float(p[0]) for p in pairs])
    with mpmath.workprec(precision_bits):
        y = np.array([float(mpmath.log(z) - e) for _, z, e in pairs])
    cols = {"n2": 2 * n * n, "logn": np.log(n), "n": 2 * n, "const": np.ones_like(n),
            "inv_n": 1 / n}
    unknown = set(basis) - set(cols)
    if unknown:
        raise ValueError(f"unknown basis terms {sorted(unknown)}")
    # scale columns for conditioning, then undo
    mats = [cols[b] for b in basis]
    scales = [np.abs(c).max() for c in mats]
    coef, res = _lstsq([c / s for c, s in zip(mats, scales)], y)
    coef = coef / np.array(scales)
    est = {b: float(c) for b, c in zip(basis, coef)}
    if "n2" in est:
        est["F"] = math.exp(est["n2"])
    if "n" in est:
        est["G"] = math.exp(est["n"])
    if "logn" in est:
        est["kappa"] = est["logn"]
    return FitResult("power_law_n", est, [float(r) for r in res], {"basis": list(basis)})


def fit_exponents(data, model: str, **kw) -> FitResult:
    """Dispatch: ``kappa_over_k`` takes a NormSequence or (k, h) pairs plus G;
    ``power_law_n`` takes a mapping n -> Z."""
    if model == "kappa_over_k":
        if hasattr(data, "h"):
            ks, hs = list(range(len(data.h))), list(data.h)
        else:
            ks, hs = zip(*data)
        return fit_kappa_over_k(ks, hs, **kw)
    if model == "power_law_n":
        items = sorted(data.items())
        return fit_power_law_n([k for k, _ in items], [v for _, v in items], **kw)
    raise ValueError(f"unknown model {model!r}")


def report_json(p: PhaseParams, prediction: AsymptoticPrediction, fit: FitResult | None) -> str:
    """{phase, params, predicted, fitted, residuals} as JSON."""
    out = {
        "phase": p.phase.value,
        "params": p.describe(),
        "predicted": prediction.as_dict(),
        "fitted": fit.estimate if fit else {},
        "residuals": fit.residuals if fit else [],
    }
    if fit:
        out["fit_details"] = fit.details
    return json.dumps(out, indent=2)
