import itertools

import numpy as np
import pytest

from asymhecke.coxeter import CartanDatum, DatumError, GroupSizeError, build_group
from oracles import bruhat_subword

ORDERS = {
    "A1": 2, "A2": 6, "A3": 24, "A4": 120, "B2": 8, "C3": 48, "B3": 48,
    "D4": 192, "G2": 12, "H3": 120, "I2(5)": 10, "I2(8)": 16, "F4": 1152,
}


@pytest.mark.parametrize("label,order", ORDERS.items())
def test_orders(label, order):
    g = build_group(label)
    assert g.order == order
    # w0 is the unique longest element and its length is the number of reflections
    assert int(g.length.max()) == g.length[g.w0]
    assert list(g.length).count(g.length[g.w0]) == 1


@pytest.mark.parametrize("bad", ["Z9", "B1", "D3", "E5", "I2(1)", "A0", ""])
def test_bad_labels(bad):
    with pytest.raises(DatumError):
        CartanDatum.parse(bad)


def test_cap():
    with pytest.raises(GroupSizeError):
        build_group("E6")
    with pytest.raises(GroupSizeError):
        build_group("A4", cap=100)


@pytest.mark.parametrize("label", ["A3", "B3", "G2", "H3", "I2(7)"])
def test_braid_relations(label):
    g = build_group(label)
    m = g.datum.coxeter_matrix
    for s in range(g.rank):
        assert g.element((s, s)) == 0
    for s, t in itertools.combinations(range(g.rank), 2):
        k = int(m[s, t])
        lhs = tuple((s, t)[i % 2] for i in range(k))
        rhs = tuple((t, s)[i % 2] for i in range(k))
        assert g.element(lhs) == g.element(rhs)
        assert g.length[g.element(lhs)] == k


@pytest.mark.parametrize("label", ["A3", "B3", "H3"])
def test_words_are_reduced_and_mult_consistent(label):
    g = build_group(label)
    for w in range(g.order):
        assert len(g.words[w]) == g.length[w]
        assert g.element(g.words[w]) == w
    mt = g.mult_table
    rng = np.random.default_rng(0)
    for x, y in rng.integers(0, g.order, size=(200, 2)):
        assert np.allclose(g.matrices[mt[x, y]], g.matrices[x] @ g.matrices[y])
        assert mt[x, g.inverse[x]] == 0


@pytest.mark.parametrize("label", ["A3", "B3", "G2"])
def test_bruhat_matches_subword_oracle(label):
    g = build_group(label)
    assert np.array_equal(g.bruhat, bruhat_subword(g))


def test_descents():
    g = build_group("A2")
    w = g.element((0, 1))
    assert g.right_descents(w) == frozenset({1})
    assert g.left_descents(w) == frozenset({0})
    assert g.right_descents(g.w0) == frozenset({0, 1})


@pytest.mark.parametrize("label,classes", [("A3", 5), ("B3", 10), ("G2", 6), ("H3", 10), ("F4", 25)])
def test_class_counts(label, classes):
    assert len(build_group(label).conjugacy_classes) == classes


def test_reflection_trace():
    g = build_group("A2")
    assert g.reflection_trace(0) == 2
    assert g.reflection_trace(g.element((0,))) == 0
    assert g.reflection_trace(g.element((0, 1))) == -1


def test_cartan_matrix_b2_is_integral():
    a = CartanDatum.parse("B2").cartan_matrix
    assert a.dtype.kind == "i"
    assert sorted([a[0, 1], a[1, 0]]) == [-2, -1]


def test_json_dump_is_stable():
    a = build_group("B2").to_json()
    b = build_group("B2").to_json()
    assert a == b and '"order": 8' in a
