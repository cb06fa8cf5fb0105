from fractions import Fraction

import numpy as np
import pytest

from conftest import SMALL_TYPES

TYPES = SMALL_TYPES + ["H3"]


@pytest.mark.parametrize("label", TYPES)
def test_gamma_cyclic_symmetry(ctx, label):
    gt = ctx(label).kl.gamma_table
    assert np.array_equal(gt, gt.transpose(1, 2, 0))


@pytest.mark.parametrize("label", TYPES)
def test_gamma_support_in_cells(ctx, label):
    c = ctx(label)
    lid = c.cells.left_id
    inv = c.group.inverse
    for x, y, z in zip(*np.nonzero(c.kl.gamma_table)):
        assert lid[x] == lid[inv[y]] and lid[y] == lid[inv[z]] and lid[z] == lid[inv[x]]


@pytest.mark.parametrize("label", TYPES)
def test_product_nonzero_iff_same_left_cell(ctx, label):
    c = ctx(label)
    lid = c.cells.left_id
    inv = c.group.inverse
    st_ = c.jalg.structure
    nonzero = st_.any(axis=2)  # [y, z^-1]
    same = lid[:, None] == lid[None, :]
    assert np.array_equal(nonzero[:, inv], same)


@pytest.mark.parametrize("label", TYPES)
def test_j_is_associative_with_unit(ctx, label):
    c = ctx(label)
    full = c.jalg.structure.astype(np.int64)
    # J is the direct sum of its two-sided cell blocks
    idx = np.concatenate([np.array(m) for m in c.cells.two_sided_cells])
    blocks = np.zeros(full.shape, dtype=bool)
    for m in c.cells.two_sided_cells:
        blocks[np.ix_(m, m, m)] = True
    assert not np.any(full[~blocks])
    for m in c.cells.two_sided_cells:
        st_ = full[np.ix_(m, m, m)]
        lhs = np.einsum("xyk,kzw->xyzw", st_, st_)
        rhs = np.einsum("yzk,xkw->xyzw", st_, st_)
        assert np.array_equal(lhs, rhs)
    assert len(idx) == c.group.order
    assert c.jalg.is_two_sided_unit(c.jalg.unit)
    assert np.all(c.jalg.structure >= 0)


@pytest.mark.parametrize("label", ["A3", "B3", "G2"])
def test_cell_units(ctx, label):
    j = ctx(label).jalg
    total = sum(j.unit_of_cell(k) for k in range(len(j.cells.two_sided_cells)))
    assert np.array_equal(total, j.unit)


def test_a1_psi():
    from asymhecke.core import context

    j = context("A1").jalg
    assert j.psi_c.tolist() == [[1, 0], [1, 2]]
    assert j.psi_group.tolist() == [[1, -1], [1, 1]]
    assert j.psi_inverse.tolist() == [[Fraction(1, 2), Fraction(1, 2)], [Fraction(-1, 2), Fraction(1, 2)]]


@pytest.mark.parametrize("label", TYPES)
def test_psi_is_a_homomorphism(ctx, label):
    c = ctx(label)
    j = c.jalg
    g = c.group
    pg = j.psi_group
    mt = g.mult_table
    rng = np.random.default_rng(2)
    pairs = rng.integers(0, g.order, size=(60, 2))
    for x, y in pairs:
        assert np.array_equal(j.mul(pg[:, x], pg[:, y]), pg[:, mt[x, y]])
    assert np.array_equal(pg[:, 0], j.unit)


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_psi_inverse_is_exact(ctx, label):
    j = ctx(label).jalg
    prod = j.psi_group.astype(object).dot(j.psi_inverse)
    assert np.all(prod == np.eye(j.n, dtype=int))


def test_Psi_specialises_to_psi(ctx):
    j = ctx("B2").jalg
    for x in range(j.n):
        arr = j.Psi_array(x)
        assert np.array_equal(arr.sum(axis=1), j.psi_c[:, x])
        coeffs = j.Psi_coeffs(x)
        for z, p in coeffs.items():
            assert p.eval_one() == j.psi_c[z, x]


def test_theta_is_antiautomorphism(ctx):
    j = ctx("G2").jalg
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.integers(0, 3, j.n)
        b = rng.integers(0, 3, j.n)
        assert np.array_equal(j.theta(j.mul(a, b)), j.mul(j.theta(b), j.theta(a)))
