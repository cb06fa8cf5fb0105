import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from asymhecke.chartable import character_table, conjugacy_classes
from asymhecke.coxeter import build_group
from oracles import brute_character_check


@pytest.mark.parametrize(
    "label,degrees",
    [("A2", [1, 1, 2]), ("B2", [1, 1, 1, 1, 2]), ("G2", [1, 1, 1, 1, 2, 2]), ("A3", [1, 1, 2, 3, 3])],
)
def test_degrees(label, degrees):
    t = character_table(build_group(label).mult_table)
    assert list(t.degrees) == degrees


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "H3", "I2(5)", "F4"])
def test_orthogonality_and_sizes(label):
    g = build_group(label)
    t = character_table(g.mult_table)
    assert int(np.sum(t.degrees**2)) == g.order
    assert t.check_orthogonality()
    assert brute_character_check(g.mult_table, t.values, t.classes) < 1e-8
    assert np.allclose(t.values[0], 1)


def test_weyl_tables_are_rational_and_h3_is_not():
    assert character_table(build_group("B3").mult_table).is_rational
    t = character_table(build_group("H3").mult_table)
    assert not t.is_rational
    with pytest.raises(ValueError):
        t.integer_values()


def test_b2_integer_table():
    t = character_table(build_group("B2").mult_table)
    vals = t.integer_values()
    assert vals.shape == (5, 5)
    assert sorted(vals[:, 0]) == [1, 1, 1, 1, 2]


def _cyclic(n):
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


@given(st.integers(1, 12))
def test_cyclic_tables(n):
    t = character_table(_cyclic(n))
    assert len(t.values) == n
    zeta = np.exp(2j * np.pi / n)
    rows = {tuple(np.round(r, 8)) for r in t.values}
    want = {tuple(np.round(zeta ** (k * np.arange(n)), 8)) for k in range(n)}
    assert rows == want


def test_classes_of_s3():
    g = build_group("A2")
    assert sorted(len(c) for c in conjugacy_classes(g.mult_table)) == [1, 2, 3]


def test_decompose_regular_character():
    g = build_group("B2")
    t = character_table(g.mult_table)
    reg = np.zeros(len(t.classes))
    reg[0] = g.order
    assert list(t.decompose(reg)) == list(t.degrees)
