"""Left, right and two-sided Kazhdan-Lusztig cells."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .kl import KazhdanLusztig, StructuralError

__all__ = ["CellPartition", "cell_partition"]


def _scc_labels(n: int, edges: list[tuple[int, int]]) -> np.ndarray:
    """Strongly connected components relabelled by minimal member."""
    src = [e[0] for e in edges]
    dst = [e[1] for e in edges]
    graph = csr_matrix((np.ones(len(edges)), (src, dst)), shape=(n, n))
    _, raw = connected_components(graph, directed=True, connection="strong")
    order = {}
    for w in range(n):
        order.setdefault(raw[w], len(order))
    return np.array([order[r] for r in raw])


def _members(labels: np.ndarray) -> list[list[int]]:
    out = [[] for _ in range(labels.max() + 1)]
    for w, c in enumerate(labels):
        out[c].append(w)
    return out


@dataclass
class CellPartition:
    """Cell ids are assigned in order of minimal member id."""

    kl: KazhdanLusztig
    left_id: np.ndarray
    right_id: np.ndarray
    two_sided_id: np.ndarray

    @property
    def group(self):
        return self.kl.group

    @property
    def left_cells(self) -> list[list[int]]:
        return _members(self.left_id)

    @property
    def right_cells(self) -> list[list[int]]:
        return _members(self.right_id)

    @property
    def two_sided_cells(self) -> list[list[int]]:
        return _members(self.two_sided_id)

    def left_cells_in(self, c: int) -> list[int]:
        """Left cell ids contained in two-sided cell ``c`` (the set L)."""
        return sorted({int(self.left_id[w]) for w in self.two_sided_cells[c]})

    def s_gamma(self, gamma: int) -> frozenset[int]:
        """Common right-descent set of the members of a left cell."""
        members = self.left_cells[gamma]
        sets = {self.group.right_descents(w) for w in members}
        if len(sets) != 1:
            raise StructuralError(f"left cell {gamma}: members have different right descents")
        return sets.pop()

    @cached_property
    def distinguished(self) -> list[int]:
        """Distinguished involution of each left cell, indexed by left-cell id."""
        return self.kl.distinguished_involutions(self.left_cells)

    def delta(self, gamma: int) -> int:
        return self.distinguished[gamma]

    def a_of_cell(self, c: int) -> int:
        vals = {int(self.kl.a_values[w]) for w in self.two_sided_cells[c]}
        if len(vals) != 1:
            raise StructuralError(f"a not constant on two-sided cell {c}")
        return vals.pop()

    def a_prime(self, c: int) -> int:
        """``a(x w0)`` for ``x`` in the cell, asserted constant."""
        g = self.group
        vals = {int(self.kl.a_values[g.mul(x, g.w0)]) for x in self.two_sided_cells[c]}
        if len(vals) != 1:
            raise StructuralError(f"a(x w0) not constant on two-sided cell {c}")
        return vals.pop()

    def block(self, gamma: int, gamma_p: int) -> list[int]:
        """``Gamma ∩ Gamma'^{-1}`` sorted by id."""
        inv = self.group.inverse
        return [w for w in self.left_cells[gamma] if self.left_id[inv[w]] == gamma_p]

    def to_json(self) -> str:
        g = self.group
        lc = self.left_cells
        doc = {
            "type": g.datum.label,
            "left_cells": [
                {
                    "id": i,
                    "two_sided": int(self.two_sided_id[m[0]]),
                    "members": sorted(g.word_str(w) for w in m),
                    "S": sorted(s + 1 for s in self.s_gamma(i)),
                    "delta": g.word_str(self.delta(i)),
                }
                for i, m in enumerate(lc)
            ],
            "two_sided_cells": [
                {
                    "id": c,
                    "members": sorted(g.word_str(w) for w in m),
                    "left_cells": self.left_cells_in(c),
                    "a": self.a_of_cell(c),
                    "a_prime": self.a_prime(c),
                }
                for c, m in enumerate(self.two_sided_cells)
            ],
        }
        return json.dumps(doc, indent=1, sort_keys=True)


def cell_partition(kl: KazhdanLusztig) -> CellPartition:
    """Cells from the preorder generated by left multiplication with ``c_s``."""
    g = kl.group
    n = g.order
    inv = g.inverse
    left_edges = kl.left_edges()
    left_id = _scc_labels(n, left_edges)
    right_edges = [(int(inv[w]), int(inv[y])) for w, y in left_edges]
    right_id = _scc_labels(n, right_edges)
    two_id = _scc_labels(n, left_edges + right_edges)
    return CellPartition(kl, left_id, right_id, two_id)
