import json

import mpmath
import pytest

from sixvertex import verify as vf
from sixvertex.core_model import PhaseParams


def passed(reports):
    reports = reports if isinstance(reports, list) else [reports]
    return all(r.passed for r in reports)


def test_report_flag_tracks_tolerance():
    r = vf._report("x", {}, mpmath.mpf(1), mpmath.mpf(2))
    assert r.passed and r.line().startswith("PASS")
    r = vf._report("x", {}, mpmath.mpf(3), mpmath.mpf(2))
    assert not r.passed and r.line().startswith("FAIL")


@pytest.mark.parametrize("phase,g,t,n", [("D", "pi/5", "0.1", 2), ("AF", "1.2", "0.3", 3),
                                         ("F", "0.5", "1.0", 1)])
def test_prop1_examples(phase, g, t, n):
    assert passed(vf.check_prop1(PhaseParams.of(phase, g, t), n))


@pytest.mark.parametrize("size", [2, 4, 6])
def test_conservation(size):
    r = vf.check_conservation(size)
    assert r.passed


def test_laplace_f_names_matching_series():
    r = vf.check_laplace(PhaseParams.of("F", "0.5", "1.0"))
    assert passed(r)
    details = (r[0] if isinstance(r, list) else r).details
    assert "matching_series" in details


def test_toda_n2_512_bits():
    reps = vf.check_toda(PhaseParams.of("D", "pi/5", "0.1", 512), 2)
    assert passed(reps)


def test_select_and_deterministic_order():
    specs = vf.select(vf.suite_specs("fast"), "integer_count")
    assert {s.name for s in specs} == {"integer_count"}
    a = vf.run_checks(specs, jobs=1)
    b = vf.run_checks(specs, jobs=1)
    assert [r.name for r in a] == sorted(r.name for r in a)
    assert [(r.name, r.discrepancy) for r in a] == [(r.name, r.discrepancy) for r in b]
    assert json.loads(vf.reports_json(a))[0]["passed"] is True


def test_crashing_check_is_a_failure():
    def boom():
        raise RuntimeError("nope")
    (r,) = vf._run_spec(vf.CheckSpec("boom", boom))
    assert not r.passed and "RuntimeError" in r.details["error"]


def test_fast_suite_passes():
    reports = vf.run_suite("fast", jobs=1)
    bad = [r.line() for r in reports if not r.passed]
    assert not bad, bad
