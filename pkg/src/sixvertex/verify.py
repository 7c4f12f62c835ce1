"""Verification checks: each one measures a single discrepancy against a tolerance."""
from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import mpmath
import numpy as np

from . import asymptotics as asy
from . import enumerator, hankel
from .core_model import PhaseParams, PhaseRegion, parse_real, weights_from_params
from .errors import TruncationError
from .special import ThetaContext, theta, theta1_prime0

# five in-domain (gamma, t) points per phase
PARAM_GRID = {
    "D": [("pi/5", "0.1"), ("pi/3", "0"), ("1.0", "-0.4"), ("1.4", "0.9"), ("0.3", "0.05")],
    "AF": [("1.2", "0.3"), ("0.5", "0"), ("2.0", "-1.5"), ("0.8", "0.5"), ("1.5", "1.2")],
    "F": [("0.5", "1.0"), ("0.2", "0.3"), ("1.0", "2.5"), ("0.3", "1.5"), ("0.7", "0.9")],
}
CANONICAL = {"D": ("pi/5", "pi/50"), "AF": ("1.2", "0.3"), "F": ("0.5", "1.0")}
TODA_STEP = 2.0 ** -12
KNOWN_HT_COUNTS = {1: 2, 2: 10, 3: 140}


@dataclass
class CheckReport:
    name: str
    params: dict
    discrepancy: str
    tolerance: str
    passed: bool
    runtime: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.name}: discrepancy {self.discrepancy} (tolerance {self.tolerance})"


def _num(x, digits=6):
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, digits)
    return f"{float(x):.{digits}g}"


def _report(name, params, disc, tol, details=None, started=None):
    """Build a report whose pass flag is exactly disc <= tol."""
    passed = bool(disc <= tol)
    rt = time.perf_counter() - started if started is not None else 0.0
    return CheckReport(name, params, _num(disc), _num(tol), passed, round(rt, 3), details or {})


def _identity_tol(bits):
    return mpmath.ldexp(1, -(bits // 2))


def _rel(a, b, bits):
    with mpmath.workprec(bits + 16):
        return abs(a - b) / abs(b)


def _p(phase, gamma, t, bits):
    return PhaseParams.of(phase, gamma, t, bits)


# ---------------------------------------------------------------- identity checks

def check_prop1(p: PhaseParams, n: int, tolerance=None):
    """Determinant formula against the enumeration oracle on the 2n x 2n lattice."""
    t0 = time.perf_counter()
    w = weights_from_params(p)
    det = hankel.z_ht(p, n)
    enum = enumerator.partition_ht(2 * n, w.w, precision_bits=p.precision_bits)
    tol = tolerance if tolerance is not None else _identity_tol(p.precision_bits)
    return _report(f"prop1[{p.phase.value},g={_num(p.gamma)},t={_num(p.t)},n={n}]",
                   {**p.describe(), "n": n}, _rel(det, enum, p.precision_bits), tol,
                   {"z_det": _num(det, 25), "z_enum": _num(enum, 25)}, t0)


def check_integer_count(n: int, bits=256, tolerance=1e-20):
    """z_ht at gamma = pi/3, t = 0 divided by (sqrt3/2)^{2n^2} is the symmetric count."""
    t0 = time.perf_counter()
    p = _p("D", "pi/3", "0", bits)
    with mpmath.workprec(bits):
        x = hankel.z_ht(p, n) / (mpmath.sqrt(3) / 2) ** (2 * n * n)
        nearest = int(mpmath.nint(x))
        resid = abs(x - nearest)
    enum = enumerator.count_configurations(2 * n, symmetric=True)
    known = KNOWN_HT_COUNTS.get(n)
    agree = nearest == enum and (known is None or known == enum)
    # a count mismatch is reported as an infinite discrepancy
    disc = resid if agree else mpmath.inf
    return _report(f"integer_count[2n={2 * n}]", {"n": n, "precision_bits": bits}, disc,
                   mpmath.mpf(tolerance),
                   {"rounded": nearest, "enumeration": enum, "known": known}, t0)


def check_cross_route(p: PhaseParams, n: int, tolerance=None):
    """Determinant route against the orthogonal-polynomial norm route."""
    t0 = time.perf_counter()
    a, b = hankel.z_ht(p, n), hankel.z_ht_via_norms(p, n)
    tol = tolerance if tolerance is not None else mpmath.ldexp(1, -(p.precision_bits // 4))
    details = {}
    if p.phase is PhaseRegion.FERROELECTRIC:
        cal = hankel.calibrate_f_prefactor(p)
        details = {"f_prefactor_A": _num(cal.A, 20), "f_prefactor_B": _num(cal.B, 20)}
    return _report(f"cross_route[{p.phase.value},g={_num(p.gamma)},t={_num(p.t)},n={n}]",
                   {**p.describe(), "n": n}, _rel(b, a, p.precision_bits), tol, details, t0)


def f_prefactor_report(p: PhaseParams):
    """Which ferroelectric HT weight variant admits an A^{n^2} B^n prefactor."""
    out = {}
    for v in hankel.F_HT_VARIANTS:
        cal = hankel.calibrate_f_prefactor(p, v)
        out[v] = {"A": _num(cal.A, 20), "B": _num(cal.B, 20),
                  "validation_error_n3": _num(cal.validation_error), "matches": cal.matches}
    with mpmath.workprec(p.precision_bits):
        out["expected_closed_form"] = {"A": "2", "B": _num(mpmath.exp(-(p.t - p.gamma)), 20)}
    return out


def toda_residual(p: PhaseParams, family: str, n: int, step):
    tau = hankel.tau_dw if family == "DW" else hankel.tau_ht
    bits = p.precision_bits
    with mpmath.workprec(bits):
        h = mpmath.mpf(step)
        up, dn = p.with_t(p.t + h), p.with_t(p.t - h)
        d2 = (mpmath.log(tau(up, n)) - 2 * mpmath.log(tau(p, n)) + mpmath.log(tau(dn, n))) / h ** 2
        rhs = tau(p, n + 1) * (tau(p, n - 1) if n > 1 else 1) / tau(p, n) ** 2
        return abs(d2 - rhs) / abs(rhs)


def check_toda(p: PhaseParams, n: int, step=TODA_STEP, family="HT", tolerance=None):
    """Relative residual of the Toda equation by central differences at ``step``.

    Returns two reports: the residual itself and the step-halving ratio
    (expected 4 for a second-order difference).
    """
    t0 = time.perf_counter()
    family = family.upper()
    r1 = toda_residual(p, family, n, step)
    r2 = toda_residual(p, family, n, step / 2)
    ratio = r1 / r2 if r2 else mpmath.inf
    tol = tolerance if tolerance is not None else max(16 * step ** 2, 2.0 ** -(p.precision_bits / 4))
    tag = f"{p.phase.value},{family},g={_num(p.gamma)},t={_num(p.t)},n={n}"
    params = {**p.describe(), "n": n, "family": family, "step": step}
    details = {"residual_step": _num(r1), "residual_half_step": _num(r2), "ratio": _num(ratio)}
    return [
        _report(f"toda_residual[{tag}]", params, r1, mpmath.mpf(tol), details, t0),
        _report(f"toda_ratio[{tag}]", params, abs(ratio - 4), mpmath.mpf("0.5"), details, t0),
    ]


def check_toda_series(p: PhaseParams):
    """n = 1 Toda identity from the series engine: (log psi)'' = tau_2 / psi^2."""
    t0 = time.perf_counter()
    bits = p.precision_bits
    s = hankel.derivative_tower_psi(p, 2, 2 * bits)
    with mpmath.workprec(2 * bits):
        lhs = (s[0] * s[2] - s[1] ** 2) / s[0] ** 2
        rhs = hankel.tau_ht(p, 2) / s[0] ** 2
        disc = abs(lhs - rhs) / abs(rhs)
    return _report(f"toda_series[{p.phase.value},g={_num(p.gamma)},t={_num(p.t)}]", p.describe(),
                   disc, _identity_tol(bits), {}, t0)


def _geometric_sum(term, ratio, bits):
    """sum_{k>=0} term(k) for |term(k)| <= term(0)-scale * ratio^k, tail certified."""
    cut = hankel._cutoff(0, float(ratio), bits + 8)
    with mpmath.workprec(bits + 16):
        return mpmath.fsum(term(k) for k in range(cut + 1))


def check_laplace(p: PhaseParams, tolerance=1e-30):
    """Laplace-type representation of psi in p's phase."""
    t0 = time.perf_counter()
    bits = p.precision_bits
    g, t = p.gamma, p.t
    details = {}
    with mpmath.workprec(bits + 16):
        if p.phase is PhaseRegion.DISORDERED:
            target = 1 / mpmath.sin(g - t) + 1 / mpmath.sin(g + t)

            def m(lam):
                return (mpmath.exp(-g * lam) / (1 + mpmath.exp(-mpmath.pi * lam))
                        + mpmath.exp(g * lam) / (1 + mpmath.exp(mpmath.pi * lam)))

            val, err = mpmath.quad(lambda x: mpmath.exp(t * x) * m(x),
                                   [-mpmath.inf, 0, mpmath.inf], error=True)
            details["quadrature_error_estimate"] = _num(err)
            if err > tolerance:
                raise TruncationError(f"quadrature error estimate {_num(err)} above {tolerance}")
            odd = mpmath.quad(lambda x: mpmath.exp(t * x) * m(x) - mpmath.exp(-t * x) * m(-x),
                              [0, mpmath.inf])
            details["odd_part_integral"] = _num(odd)
            disc = abs(val - target) / abs(target)
        elif p.phase is PhaseRegion.ANTIFERROELECTRIC:
            target = 1 / mpmath.sinh(g - t) + 1 / mpmath.sinh(g + t)
            r = mpmath.exp(-2 * (g - abs(t)))
            pos = _geometric_sum(lambda k: mpmath.exp((2 * k + 1) * t - (2 * k + 1) * g), r, bits)
            neg = _geometric_sum(lambda k: mpmath.exp(-(2 * k + 1) * t - (2 * k + 1) * g), r, bits)
            disc = abs(2 * (pos + neg) - target) / abs(target)
        else:
            target = 1 / mpmath.sinh(t - g) + 1 / mpmath.sinh(t + g)
            r = mpmath.exp(-(t - g))
            even = 2 * _geometric_sum(
                lambda k: mpmath.exp(-2 * (k + 1) * (t - g)) + mpmath.exp(-2 * (k + 1) * (t + g)),
                r * r, bits)
            odd = 2 * _geometric_sum(
                lambda k: mpmath.exp(-(2 * k + 1) * (t - g)) + mpmath.exp(-(2 * k + 1) * (t + g)),
                r * r, bits)
            d_even = abs(even - target) / abs(target)
            d_odd = abs(odd - target) / abs(target)
            details = {
                "even_exponent_series": {"discrepancy": _num(d_even), "matches": bool(d_even <= tolerance)},
                "odd_exponent_series": {"discrepancy": _num(d_odd), "matches": bool(d_odd <= tolerance)},
            }
            matching = [k for k, v in details.items() if v["matches"]]
            details["matching_series"] = matching
            disc = min(d_even, d_odd)
    return _report(f"laplace[{p.phase.value},g={_num(g)},t={_num(t)}]", p.describe(), disc,
                   mpmath.mpf(tolerance), details, t0)


def check_conservation(size: int):
    """Every DWBC configuration satisfies the four conservation laws."""
    t0 = time.perf_counter()
    hist = enumerator.type_histogram(size)
    total = sum(hist.values())
    bad = sum(c for counts, c in hist.items() if counts.conservation_violations(size))
    return _report(f"conservation[N={size}]", {"N": size}, bad, 0,
                   {"configurations": total, "violating": bad}, t0)


def check_theta_identities(gamma="1.2", bits=256, tolerance=1e-30, seed_points=12):
    """Shift, parity and periodicity identities and theta_1'(0) = theta_2 theta_3 theta_4 at 0."""
    t0 = time.perf_counter()
    ctx = ThetaContext.for_gamma(parse_real(gamma, bits), bits)
    worst = mpmath.mpf(0)
    parts = {}
    with mpmath.workprec(bits):
        zs = [mpmath.mpf(k) / 7 - 1 for k in range(seed_points)]
        pi = mpmath.pi

        def upd(key, v):
            nonlocal worst
            parts[key] = max(parts.get(key, mpmath.mpf(0)), v)
            worst = max(worst, v)

        for z in zs:
            upd("shift", abs(theta(3, z, ctx) - theta(4, z + pi / 2, ctx)))
            upd("parity", abs(theta(1, -z, ctx) + theta(1, z, ctx)))
            for j in (2, 3, 4):
                upd("parity", abs(theta(j, -z, ctx) - theta(j, z, ctx)))
            for j, sgn in ((1, -1), (2, -1), (3, 1), (4, 1)):
                upd("periodicity", abs(theta(j, z + pi, ctx) - sgn * theta(j, z, ctx)))
        upd("theta1_zero", abs(theta(1, 0, ctx)))
        prod = theta(2, 0, ctx) * theta(3, 0, ctx) * theta(4, 0, ctx)
        upd("theta1_prime_product", abs(theta1_prime0(ctx) - prod))
    return _report(f"theta_identities[g={gamma}]", {"gamma": str(gamma), "precision_bits": bits},
                   worst, mpmath.mpf(tolerance), {k: _num(v) for k, v in parts.items()}, t0)


# ---------------------------------------------------------------- asymptotic checks

def check_f_constants(p: PhaseParams, kprod=30, kterm=(10, 60), tolerance=1e-8):
    """Ferroelectric norm ratios against Meixner norms.

    Reports the two partial products (against 1 - e^{-4g} and 1 + e^{-4g})
    and the per-term envelope max_k |h_k^HT/h_k^Q - 1| / e^{-k^0.9}.
    """
    t0 = time.perf_counter()
    kmax = max(kprod, kterm[1])
    out = []
    ratios = {}
    for fam in ("DW", "HT"):
        ns = hankel.norm_sequence(p, fam, kmax)
        ratios[fam] = asy.meixner_ratios(p, ns)
    with mpmath.workprec(p.precision_bits):
        e4 = mpmath.exp(-4 * p.gamma)
        targets = {"DW": 1 - e4, "HT": 1 + e4}
        for fam in ("DW", "HT"):
            prod = mpmath.fprod(ratios[fam][:kprod + 1])
            out.append(_report(f"f_constant_product[{fam},k<={kprod}]", p.describe(),
                               abs(prod - targets[fam]), mpmath.mpf(tolerance),
                               {"product": _num(prod, 15), "target": _num(targets[fam], 15)}, t0))
        worst, where = mpmath.mpf(0), None
        devs = {}
        for k in range(kterm[0], kterm[1] + 1):
            dev = abs(ratios["HT"][k] - 1)
            env = mpmath.exp(-mpmath.mpf(k) ** mpmath.mpf("0.9"))
            devs[k] = dev
            if dev / env > worst:
                worst, where = dev / env, k
    out.append(_report(f"f_per_term_envelope[HT,{kterm[0]}<=k<={kterm[1]}]", p.describe(), worst,
                       mpmath.mpf(1),
                       {"worst_k": where,
                        "deviation_at": {k: _num(devs[k], 4) for k in (kterm[0], 20, 30, 40, kterm[1])
                                         if k in devs}}, t0))
    return out


def check_kappa(p: PhaseParams, family: str, kmax=80, tolerance=0.05):
    """Disordered-phase kappa from the windowed fit of k(h_k/((k!)^2 G^{2k+1}) - 1)."""
    t0 = time.perf_counter()
    ns = hankel.norm_sequence(p, family, kmax)
    G = asy.growth_G(p)
    fit = asy.fit_exponents(ns, "kappa_over_k", G=G, omega=float(asy.d_omega(p)),
                            precision_bits=p.precision_bits)
    with mpmath.workprec(64):
        ref = float(asy.kappa_dw(p.gamma) if family.upper() == "DW" else asy.kappa_ht(p.gamma))
    rel = abs(fit.estimate["kappa"] / ref - 1)
    return _report(f"kappa[{family.upper()},kmax={kmax}]", {**p.describe(), "family": family}, rel,
                   tolerance, {"kappa_fit": fit.estimate["kappa"], "kappa_formula": ref,
                               **fit.details}, t0)


def af_theta_errors(p: PhaseParams, family: str, krange=(10, 60), G=None):
    ns = hankel.norm_sequence(p, family, krange[1])
    G = asy.growth_G(p) if G is None else G
    ks, errs = [], []
    with mpmath.workprec(p.precision_bits):
        for k in range(krange[0], krange[1] + 1):
            pred = mpmath.factorial(k) ** 2 * G ** (2 * k + 1) * asy.theta_ratio(p, family, k)
            ks.append(k)
            errs.append(float(abs(ns.h[k] / pred - 1)))
    return np.array(ks, dtype=float), np.array(errs)


def check_af_theta(p: PhaseParams, family: str, krange=(10, 60), max_slope=-1.8):
    """Slope of log|h_k / prediction - 1| against log k over krange."""
    t0 = time.perf_counter()
    ks, errs = af_theta_errors(p, family, krange)
    slope = float(np.polyfit(np.log(ks), np.log(errs), 1)[0])
    scaled = ks ** 2 * errs
    # same statistic with G halved, for diagnosis
    with mpmath.workprec(p.precision_bits):
        half = asy.growth_G(p) / 2
    ks2, errs2 = af_theta_errors(p, family, krange, G=half)
    slope_half = float(np.polyfit(np.log(ks2), np.log(errs2), 1)[0])
    return _report(f"af_theta_ratio[{family.upper()},{krange[0]}<=k<={krange[1]}]",
                   {**p.describe(), "family": family}, slope, max_slope,
                   {"max_k2_error": float(scaled.max()), "k2_error_first_last": [float(scaled[0]), float(scaled[-1])],
                    "diagnostic_slope_with_G_halved": slope_half,
                    "diagnostic_max_k2_error_with_G_halved": float((ks2 ** 2 * errs2).max())}, t0)


def full_z_fit(p: PhaseParams, ns=range(8, 41)):
    """Fit of log z_ht over ns with the phase's model; returns (fit, prediction)."""
    ns = list(ns)
    zs = hankel.z_ht_table_via_norms(p, ns)
    pred = asy.predict_leading(p)
    if p.phase is PhaseRegion.DISORDERED:
        fit = asy.fit_exponents(zs, "power_law_n", basis=("n2", "logn", "const"))
    elif p.phase is PhaseRegion.ANTIFERROELECTRIC:
        ctx, om = asy.theta_context(p), asy.af_omega(p)
        with mpmath.workprec(p.precision_bits):
            extra = [float(mpmath.log(theta(3, n * om, ctx) * theta(4, n * om, ctx))) for n in ns]
        fit = asy.fit_exponents(zs, "power_law_n", basis=("n2", "const"), extra=extra)
    else:
        fit = asy.fit_exponents(zs, "power_law_n", basis=("n2", "n", "const"))
    return fit, pred, zs


def check_full_z(p: PhaseParams, ns=range(8, 41), tolerance=0.01):
    """Relative errors of the fitted F (and kappa or G) against the closed forms."""
    t0 = time.perf_counter()
    fit, pred, _ = full_z_fit(p, ns)
    tag = f"{p.phase.value},g={_num(p.gamma)},t={_num(p.t)}"
    out = []
    checks = [("F", float(pred.F))]
    if p.phase is PhaseRegion.DISORDERED:
        checks.append(("kappa", float(pred.kappa)))
    if p.phase is PhaseRegion.FERROELECTRIC:
        checks.append(("G", float(pred.G)))
    for key, ref in checks:
        est = fit.estimate[key]
        out.append(_report(f"full_z_{key}[{tag}]", p.describe(), abs(est / ref - 1), tolerance,
                           {"fitted": est, "closed_form": ref, "basis": fit.details["basis"],
                            "max_abs_residual": max(abs(r) for r in fit.residuals)}, t0))
    return out


def check_d_constant_t_dependence(gamma="pi/5", t1="0", t2=None, n=40, bits=256, tolerance=0.03):
    """C(t1)/C(t2) against [cos(pi t1/2g)/cos(pi t2/2g)]^kappa using z_ht at one large n."""
    t0 = time.perf_counter()
    p1 = _p("D", gamma, t1, bits)
    if t2 is None:
        with mpmath.workprec(bits):
            t2 = p1.gamma / 2
    p2 = _p("D", gamma, t2, bits)
    consts = []
    for p in (p1, p2):
        z = hankel.z_ht_table_via_norms(p, [n])[n]
        pred = asy.predict_leading(p)
        with mpmath.workprec(bits):
            consts.append(z / (mpmath.mpf(n) ** pred.kappa * pred.F ** (2 * n * n)))
    with mpmath.workprec(bits):
        kap = asy.kappa_total(p1.gamma)
        c1 = mpmath.cos(mpmath.pi * p1.t / (2 * p1.gamma))
        c2 = mpmath.cos(mpmath.pi * p2.t / (2 * p2.gamma))
        ratio = consts[0] / consts[1]
        target = (c1 / c2) ** kap
        rel = abs(ratio / target - 1)
    return _report(f"d_constant_t_ratio[g={_num(p1.gamma)},t1={_num(p1.t)},t2={_num(p2.t)},n={n}]",
                   {"gamma": _num(p1.gamma, 20), "t1": _num(p1.t, 20), "t2": _num(p2.t, 20), "n": n},
                   rel, mpmath.mpf(tolerance),
                   {"ratio": _num(ratio, 12), "cos_ratio_pow_kappa": _num(target, 12)}, t0)


def check_phase_asymptotics(p: PhaseParams, kmax=None):
    """All asymptotic diagnostics for p's phase."""
    if p.phase is PhaseRegion.FERROELECTRIC:
        return check_f_constants(p, kterm=(10, kmax or 60)) + check_full_z(p)
    if p.phase is PhaseRegion.ANTIFERROELECTRIC:
        kr = (10, kmax or 60)
        return [check_af_theta(p, "DW", kr), check_af_theta(p, "HT", kr)] + check_full_z(p)
    return [check_kappa(p, "DW", kmax or 80), check_kappa(p, "HT", kmax or 80)] + check_full_z(p)


# ---------------------------------------------------------------- suites

@dataclass(frozen=True)
class CheckSpec:
    name: str
    func: Callable
    args: tuple = ()
    kwargs: tuple = ()

    def run(self):
        return _run_spec(self)


def _grid(bits):
    for phase, pts in PARAM_GRID.items():
        for g, t in pts:
            yield _p(phase, g, t, bits)


def _canonical(bits):
    return [_p(ph, g, t, bits) for ph, (g, t) in CANONICAL.items()]


def _phase_asym(phase, bits):
    g, t = CANONICAL[phase]
    return check_phase_asymptotics(_p(phase, g, t, bits))


def _kappa(family):
    g, t = CANONICAL["D"]
    return check_kappa(_p("D", g, t, 1024), family)


def _af(family):
    g, t = CANONICAL["AF"]
    return check_af_theta(_p("AF", g, t, 256), family)


def _fconst():
    g, t = CANONICAL["F"]
    return check_f_constants(_p("F", g, t, 256))


def _fullz(phase):
    g, t = CANONICAL[phase]
    return check_full_z(_p(phase, g, t, 256))


def suite_specs(suite: str = "fast"):
    """Check specs for the ``fast`` or ``full`` profile.

    fast: identities and cross-route equalities with n <= 3.
    full: fast plus cross-route n <= 6 at 512 bits, Toda n <= 5 and the
    asymptotic diagnostics (k <= 80, n <= 40).
    """
    if suite not in ("fast", "full"):
        raise ValueError("suite must be fast or full")
    specs = []
    for p in _grid(256):
        for n in (1, 2, 3):
            specs.append(CheckSpec(f"prop1/{p.phase.value}", check_prop1, (p, n)))
    for n in (1, 2, 3):
        specs.append(CheckSpec("integer_count", check_integer_count, (n,)))
    for size in (2, 4, 6):
        specs.append(CheckSpec("conservation", check_conservation, (size,)))
    for p in _canonical(256):
        specs.append(CheckSpec(f"laplace/{p.phase.value}", check_laplace, (p,)))
        specs.append(CheckSpec(f"toda_series/{p.phase.value}", check_toda_series, (p,)))
    specs.append(CheckSpec("theta_identities", check_theta_identities, ("1.2",)))
    nmax_cross = 3 if suite == "fast" else 6
    bits_cross = 256 if suite == "fast" else 512
    for p in _grid(bits_cross):
        for n in range(1, nmax_cross + 1):
            specs.append(CheckSpec(f"cross_route/{p.phase.value}", check_cross_route,
                                   (p, n, mpmath.ldexp(1, -(bits_cross // 4)))))
    ntoda = 3 if suite == "fast" else 5
    for p in _canonical(256):
        for fam in ("DW", "HT"):
            for n in range(1, ntoda + 1):
                specs.append(CheckSpec(f"toda/{p.phase.value}", check_toda, (p, n, TODA_STEP, fam)))
    if suite == "full":
        specs.append(CheckSpec("f_constants", _fconst))
        for fam in ("DW", "HT"):
            specs.append(CheckSpec("kappa", _kappa, (fam,)))
            specs.append(CheckSpec("af_theta_ratio", _af, (fam,)))
        for phase in ("D", "AF", "F"):
            specs.append(CheckSpec(f"full_z/{phase}", _fullz, (phase,)))
        specs.append(CheckSpec("d_constant_t_ratio", check_d_constant_t_dependence))
    return specs


def _run_spec(spec: CheckSpec):
    t0 = time.perf_counter()
    try:
        res = spec.func(*spec.args, **dict(spec.kwargs))
    except Exception as exc:  # a crashing check is a failing check
        return [CheckReport(spec.name, {}, "error", "n/a", False, round(time.perf_counter() - t0, 3),
                            {"error": f"{type(exc).__name__}: {exc}"})]
    return res if isinstance(res, list) else [res]


def run_checks(specs, jobs: int | None = None):
    """Run specs (in a process pool when jobs > 1); reports sorted by name."""
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(specs) <= 1:
        results = [_run_spec(s) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_spec, specs))
    reports = [r for group in results for r in group]
    return sorted(reports, key=lambda r: r.name)


def select(specs, only: str | None):
    if not only:
        return specs
    return [s for s in specs if s.name == only or s.name.startswith(only + "/") or s.name.startswith(only)]


def run_suite(suite="fast", only=None, jobs=None):
    return run_checks(select(suite_specs(suite), only), jobs)


def reports_json(reports) -> str:
    return json.dumps([asdict(r) for r in reports], indent=2, default=str)
