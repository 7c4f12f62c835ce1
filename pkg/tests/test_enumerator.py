from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sixvertex import enumerator as en
from sixvertex.errors import ResourceLimitError
from sixvertex.kernel import backends


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429), (6, 7436)])
def test_asm_counts(n, count):
    assert en.count_configurations(n) == count == en.asm_number(n)


@pytest.mark.parametrize("n,count", [(2, 2), (4, 10), (6, 140)])
def test_half_turn_counts(n, count):
    assert en.count_configurations(n, symmetric=True) == count


def test_n2_configs_symmetric_and_asms():
    cfgs = list(en.enumerate_dwbc(2))
    assert all(en.is_half_turn_symmetric(c) for c in cfgs)
    asms = sorted(tuple(map(tuple, en.config_to_asm(c))) for c in cfgs)
    assert asms == [((0, 1), (1, 0)), ((1, 0), (0, 1))]


def test_odd_size_rotation_map():
    # the identity is fixed by the half turn; a non-symmetric 3x3 ASM is not
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert en.is_half_turn_symmetric(en.Configuration.from_asm(ident))
    other = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert not en.is_half_turn_symmetric(en.Configuration.from_asm(other))
    assert en.count_configurations(3, symmetric=True) == 3
    assert en.count_configurations(5, symmetric=True) == 25


def test_n4_symmetric_filter():
    cfgs = list(en.enumerate_dwbc(4))
    assert sum(en.is_half_turn_symmetric(c) for c in cfgs) == 10


def test_vertex_types_small():
    (c1,) = en.enumerate_dwbc(1)
    tc = en.type_counts(c1)
    assert tc.N5 - tc.N6 == 1 and en.vertex_type(c1, 0, 0) in (5, 6)
    ident = en.Configuration.from_asm([[1, 0], [0, 1]])
    tc = en.type_counts(ident)
    assert tc.N5 == 2 and tc.N6 == 0 and tc.N1 + tc.N2 + tc.N3 + tc.N4 == 2


def test_n3_asms_valid_and_distinct():
    asms = [tuple(map(tuple, en.config_to_asm(c))) for c in en.enumerate_dwbc(3)]
    assert len(set(asms)) == 7 and all(en.is_asm(a) for a in asms)
    assert en.config_to_asm(next(iter(en.enumerate_dwbc(1)))) == ((1,),)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_conservation(n):
    for counts in en.type_histogram(n):
        assert counts.conservation_violations(n) == []


def test_partition_examples():
    ones = (1,) * 6
    assert en.partition_ht(2, ones) == 2
    assert en.partition_ht(4, ones) == 10
    assert en.partition_dwbc(1, ones) == 1
    assert en.partition_dwbc(3, ones) == 7
    a, b, c = Fraction(1, 3), Fraction(1, 2), Fraction(2)
    # N=2 HT with w = (sqrt a, sqrt a, ...) equals c(a+b); use perfect squares
    sa, sb, sc = Fraction(1, 2), Fraction(2, 3), Fraction(3, 2)
    val = en.partition_ht(2, (sa, sa, sb, sb, sc, sc))
    assert val == sc ** 2 * (sa ** 2 + sb ** 2)
    assert en.partition_dwbc(2, (a, a, b, b, c, c)) == a * a * c * c + b * b * c * c


def test_partition_rejects_odd_and_large():
    with pytest.raises(ValueError):
        en.partition_ht(3, (1,) * 6)
    with pytest.raises(ResourceLimitError):
        en.count_configurations(9)


def test_backends_agree():
    ks = backends()
    ref = ks["python"]
    for name, mod in ks.items():
        for n in range(1, 7):
            for sym in (False, True):
                assert mod.type_histogram(n, sym) == ref.type_histogram(n, sym), (name, n, sym)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.data())
def test_from_asm_roundtrip(n, data):
    cfgs = list(en.enumerate_dwbc(n))
    cfg = data.draw(st.sampled_from(cfgs))
    assert cfg.is_valid()
    m = en.config_to_asm(cfg)
    assert en.is_asm(m)
    assert en.Configuration.from_asm(m) == cfg
    assert en.type_counts(cfg).conservation_violations(n) == []


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys
    env = {**os.environ, "SIXVERTEX_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c",
                          "import sixvertex, sixvertex.enumerator as e;"
                          "print(sixvertex.BACKEND, e.count_configurations(6, True))"],
                         env=env, capture_output=True, text=True, check=True).stdout.split()
    assert out == ["python", "140"]
