import numpy as np
import pytest

from asymhecke.kl import StructuralError
from asymhecke.perron import (
    CellRing,
    ConvergenceError,
    Tolerances,
    all_ones_stationary,
    orthogonality_check,
    perron_line,
    special_module,
    transfer_matrix,
    verify_theorem12,
)
from conftest import SMALL_TYPES


def test_perron_line_known_matrix():
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    x, lam, res = perron_line(m)
    assert np.allclose(x, [1, 1]) and lam == pytest.approx(3.0) and res < 1e-12
    m = np.array([[1.0, 1.0], [1.0, 0.0]])
    x, lam, _ = perron_line(m)
    assert lam == pytest.approx((1 + 5**0.5) / 2)
    assert x[1] == pytest.approx(x[0] / lam)


def test_perron_line_convergence_error():
    m = np.array([[1.0, 1.0], [1.0, 1.000001]])
    with pytest.raises(ConvergenceError):
        perron_line(m, start=np.array([1.0, 0.0]), tol=Tolerances(residual=1e-300, max_iter=3))


@pytest.mark.parametrize("label", SMALL_TYPES + ["H3", "I2(5)"])
def test_transfer_matrices_positive(ctx, label):
    c = ctx(label)
    for k in range(len(c.cells.two_sided_cells)):
        ring = CellRing(c.jalg, k)
        for g in ring.L:
            for gp in ring.L:
                tm = transfer_matrix(ring, g, gp)
                assert tm.matrix.min() >= 1


@pytest.mark.parametrize("label", SMALL_TYPES + ["H3", "I2(5)"])
def test_theorem12_every_cell(ctx, label):
    c = ctx(label)
    for k in range(len(c.cells.two_sided_cells)):
        rep = verify_theorem12(c.jalg, k)
        assert rep.passed, rep.details


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "B3"])
def test_exact_path_in_small_types(ctx, label):
    c = ctx(label)
    for k in range(len(c.cells.two_sided_cells)):
        ring = CellRing(c.jalg, k)
        for g in ring.L:
            assert all_ones_stationary(ring, g)
            mod = special_module(ring, g)
            assert mod.exact
            assert all(isinstance(v, int) and v >= 0 for v in mod.lambdas.values())


def test_g2_middle_cell_is_not_all_ones(ctx):
    c = ctx("G2")
    ring = CellRing(c.jalg, 1)
    assert not all_ones_stationary(ring, ring.L[0])
    with pytest.raises(StructuralError):
        special_module(ring, ring.L[0], exact=True)
    mod = special_module(ring, ring.L[0])
    assert max(mod.residuals.values()) < 1e-12


def test_a2_middle_cell_module(ctx):
    c = ctx("A2")
    ring = CellRing(c.jalg, 1)
    mod = special_module(ring, ring.L[0])
    assert mod.dim == 2
    tr = mod.traces()
    assert all(t >= 0 for t in tr)
    # tr(1_c) = dim M
    assert int(ring.unit @ tr) == 2


def test_b2_orthogonality_of_two_simples(ctx):
    c = ctx("B2")
    sr = c.special
    middle = 1
    ring = CellRing(c.jalg, middle)
    members = sr.irr_of_cell(middle)
    assert len(members) >= 2
    special = sr.special_of_cell(middle)
    mod = special_module(ring, ring.L[0])
    other = [e for e in members if e != special][0]
    tr_other = np.array([float(x) for x in sr.transported_traces(other)])[ring.members]
    tr_special = np.array([float(x) for x in sr.transported_traces(special)])[ring.members]
    assert np.allclose(tr_special, mod.traces().astype(float))
    assert abs(orthogonality_check(ring, mod.traces(), tr_other)) < 1e-6
    # paired with itself the sum is nonzero
    assert orthogonality_check(ring, mod.traces(), mod.traces()) > 0


def test_report_table_lists_clauses(ctx):
    rep = verify_theorem12(ctx("A2").jalg, 1)
    assert set(rep.clauses) == {"a", "a_unique", "b", "c", "d", "e", "f", "traces"}
    assert "cell 1" in rep.table()
