import json

import numpy as np
import pytest

from asymhecke import wgraph as W
from asymhecke.laurent import LaurentPoly
from asymhecke.perron import CellRing, special_module
from conftest import SMALL_TYPES


def _all_graphs(c):
    for k in range(len(c.cells.two_sided_cells)):
        ring = CellRing(c.jalg, k)
        for g in ring.L:
            mod = special_module(ring, g)
            yield ring, mod, W.extract(mod)


def test_a1_graphs(ctx):
    graphs = [wg for _, _, wg in _all_graphs(ctx("A1"))]
    assert [len(wg.nodes) for wg in graphs] == [1, 1]
    s_cell = graphs[1]
    assert s_cell.labels[s_cell.nodes[0]] == (0,)
    ts = W.generator_matrices(s_cell)[0]
    assert ts[2].tolist() == [[1]] and not ts[0].any() and not ts[1].any()
    doc = json.loads(W.export(s_cell))
    assert len(doc["nodes"]) == 1 and doc["edges"] == []


def test_a2_middle_cell(ctx):
    c = ctx("A2")
    ring = CellRing(c.jalg, 1)
    wg = W.extract(special_module(ring, ring.L[0]))
    assert sorted(wg.labels.values()) == [(0,), (1,)]
    assert sorted(w for _, _, w in wg.edges()) == [1, 1]
    dot = W.export(wg, "dot")
    assert dot.count("->") == 2 and dot.count("label=") == 4
    # the 2-dim Hecke reflection module: tr T_s = v^2 - 1
    for m in W.generator_matrices(wg):
        tr = {k: int(np.trace(a)) for k, a in m.items()}
        assert LaurentPoly.from_dict(tr) == LaurentPoly.from_dict({2: 1, 0: -1})


@pytest.mark.parametrize("label", SMALL_TYPES + ["H3", "I2(5)"])
def test_hecke_relations(ctx, label):
    for _, _, wg in _all_graphs(ctx(label)):
        rep = W.hecke_check(wg)
        assert rep.passed and rep.worst < 1e-8
        assert all(w >= 0 for w in wg.weights.values())


def test_inverse_power_would_break_braid(ctx):
    # f v^-1 in place of f v fails the braid relation in A2
    c = ctx("A2")
    ring = CellRing(c.jalg, 1)
    wg = W.extract(special_module(ring, ring.L[0]))
    mats = W.generator_matrices(wg)
    bad = [{0: m[0], -1: m[1], 2: m[2]} for m in mats]
    lhs = W._braid_word(bad[0], bad[1], 3)
    rhs = W._braid_word(bad[1], bad[0], 3)
    diff = W._mp_add(lhs, rhs, sign=-1)
    assert any(np.any(a != 0) for a in diff.values())


@pytest.mark.parametrize("label", SMALL_TYPES + ["H3"])
def test_cross_check_psi(ctx, label):
    c = ctx(label)
    for _, mod, wg in _all_graphs(c):
        assert all(W.cross_check_psi(wg, mod, c.jalg).values())


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "B3"])
def test_exact_weights_are_integers(ctx, label):
    for _, mod, wg in _all_graphs(ctx(label)):
        assert wg.exact
        assert all(isinstance(w, int) and w > 0 for w in wg.weights.values())


@pytest.mark.parametrize("label", ["B2", "G2", "H3"])
def test_json_roundtrip_and_character(ctx, label):
    c = ctx(label)
    sr = c.special
    words = [c.group.words[r] for r in sr.chars.reps]
    for ring, mod, wg in _all_graphs(c):
        text = W.export(wg)
        assert W.parse_json(text) == wg
        assert W.export(W.parse_json(text)) == text
        tr = np.zeros(c.group.order)
        tr[ring.members] = mod.traces().astype(float)
        want = sr.module_character(tr).values
        got = W.character_at_one(wg, words)
        assert np.allclose(got, [float(np.real(x)) for x in want], atol=1e-6)


def test_unknown_format(ctx):
    c = ctx("A1")
    ring = CellRing(c.jalg, 0)
    wg = W.extract(special_module(ring, ring.L[0]))
    with pytest.raises(ValueError):
        W.export(wg, "yaml")
