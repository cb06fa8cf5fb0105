"""W-graph data of a special module and the Hecke representation it defines.

For ``s`` in ``S_{Gamma'}`` the generator ``T_s`` fixes the line of
``e~_{Gamma'}`` with eigenvalue ``v^2``.  Otherwise

    T_s e~_{Gamma'} = -e~_{Gamma'} + sum_{Gamma~ : s in S_{Gamma~}} f_{Gamma~,Gamma'} v e~_{Gamma~}

with ``f_{Gamma~,Gamma'} = sum_{u in Gamma' ∩ Gamma~^-1} mu(u, delta_{Gamma'}) lambda_{u,Gamma',Gamma~}``.
The power of ``v`` follows from ``T_s = v c_s - 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .jalg import JAlgebra
from .kl import StructuralError
from .laurent import LaurentPoly
from .perron import SpecialModule

__all__ = [
    "WGraphData",
    "HeckeReport",
    "extract",
    "generator_matrices",
    "hecke_check",
    "cross_check_psi",
    "character_at_one",
    "export",
    "parse_json",
    "SAMPLE_POINTS",
]

SAMPLE_POINTS = (Fraction(2), Fraction(1, 3), Fraction(7, 5))


@dataclass
class WGraphData:
    type_label: str
    coxeter_matrix: list[list[int]]
    cell: int
    gamma: int
    nodes: list[int]  # left-cell ids, the set L
    labels: dict[int, tuple[int, ...]]  # S_{Gamma'} as sorted 0-based generators
    weights: dict[tuple[int, int], float | int]  # (Gamma~, Gamma') -> f, nonzero only
    exact: bool

    @property
    def rank(self) -> int:
        return len(self.coxeter_matrix)

    def f(self, target: int, source: int):
        return self.weights.get((target, source), 0)

    def edges(self) -> list[tuple[int, int, float | int]]:
        """``(source, target, weight)`` for recorded s-moves, sorted."""
        out = []
        for (tgt, src), w in self.weights.items():
            if set(self.labels[tgt]) - set(self.labels[src]):
                out.append((src, tgt, w))
        return sorted(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WGraphData):
            return NotImplemented
        return (
            self.type_label == other.type_label
            and [list(r) for r in self.coxeter_matrix] == [list(r) for r in other.coxeter_matrix]
            and (self.cell, self.gamma, list(self.nodes)) == (other.cell, other.gamma, list(other.nodes))
            and {k: tuple(v) for k, v in self.labels.items()} == {k: tuple(v) for k, v in other.labels.items()}
            and self.edges() == other.edges()
            and self.exact == other.exact
        )


def extract(module: SpecialModule, floor: float = -1e-10) -> WGraphData:
    """Read off node labels and edge weights from ``module``."""
    ring = module.ring
    jalg = ring.jalg
    cells = jalg.cells
    g = jalg.group
    mu = jalg.kl.mu_matrix  # symmetric: the u = s*delta term has u > delta
    labels = {gp: tuple(sorted(cells.s_gamma(gp))) for gp in ring.L}
    weights: dict[tuple[int, int], float | int] = {}
    for gp in ring.L:
        delta = cells.delta(gp)
        for gt in ring.L:
            if not set(labels[gt]) - set(labels[gp]):
                continue
            total = 0
            for i in ring.blocks(gp, gt):
                m = int(mu[ring.members[i], delta])
                if m:
                    total = total + m * module.lambdas[(i, gp)]
            if not module.exact:
                total = float(total)
                if total < floor:
                    raise StructuralError(f"negative W-graph weight f({gt},{gp}) = {total}")
                if abs(total) <= abs(floor):
                    total = 0
            elif total < 0 or (isinstance(total, Fraction) and total.denominator != 1):
                raise StructuralError(f"W-graph weight f({gt},{gp}) = {total} is not in Z>=0")
            else:
                total = int(total)
            if total:
                weights[(gt, gp)] = total
    return WGraphData(
        g.datum.label,
        g.datum.coxeter_matrix.astype(int).tolist(),
        ring.c,
        module.gamma,
        list(ring.L),
        labels,
        weights,
        module.exact,
    )


# -- matrices over Z[v, v^-1] as {degree: array} ------------------------------
MatPoly = dict[int, np.ndarray]


def _mp_mul(a: MatPoly, b: MatPoly) -> MatPoly:
    out: MatPoly = {}
    for i, x in a.items():
        for j, y in b.items():
            p = x @ y
            out[i + j] = out[i + j] + p if i + j in out else p
    return out


def _mp_add(a: MatPoly, b: MatPoly, sign: int = 1) -> MatPoly:
    out = {k: v.copy() for k, v in a.items()}
    for k, v in b.items():
        out[k] = out[k] + sign * v if k in out else sign * v
    return out


def _mp_eval(a: MatPoly, v) -> np.ndarray:
    return sum(m * v**k for k, m in a.items())


def generator_matrices(wg: WGraphData) -> list[MatPoly]:
    """``T_s`` for each generator; column ``Gamma'`` is the image of ``e~_{Gamma'}``."""
    pos = {gp: k for k, gp in enumerate(wg.nodes)}
    d = len(wg.nodes)
    dtype = object if wg.exact else float
    out = []
    for s in range(wg.rank):
        m0 = np.zeros((d, d), dtype=dtype)
        m1 = np.zeros((d, d), dtype=dtype)
        m2 = np.zeros((d, d), dtype=dtype)
        for gp in wg.nodes:
            j = pos[gp]
            if s in wg.labels[gp]:
                m2[j, j] = 1
                continue
            m0[j, j] = -1
            for gt in wg.nodes:
                if s in wg.labels[gt]:
                    m1[pos[gt], j] = wg.f(gt, gp)
        out.append({0: m0, 1: m1, 2: m2})
    return out


@dataclass
class HeckeReport:
    quadratic: dict[int, bool] = field(default_factory=dict)
    braid: dict[tuple[int, int], bool] = field(default_factory=dict)
    worst: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.quadratic.values()) and all(self.braid.values())


def _braid_word(s: MatPoly, t: MatPoly, m: int) -> MatPoly:
    out = s
    for k in range(1, m):
        out = _mp_mul(out, t if k % 2 else s)
    return out


def hecke_check(wg: WGraphData, rel: float = 1e-8) -> HeckeReport:
    """Quadratic and braid relations, symbolically on the exact path, else at sample ``v``."""
    mats = generator_matrices(wg)
    d = len(wg.nodes)
    eye = np.eye(d, dtype=object if wg.exact else float)
    rep = HeckeReport()

    def vanish(poly: MatPoly, scale: MatPoly) -> bool:
        if wg.exact:
            return all(not np.any(m != 0) for m in poly.values())
        ok = True
        for v in SAMPLE_POINTS:
            err = np.abs(_mp_eval(poly, float(v))).max(initial=0.0)
            size = max(1.0, np.abs(_mp_eval(scale, float(v))).max(initial=0.0))
            rep.worst = max(rep.worst, err / size)
            ok &= err <= rel * size
        return ok

    for s, ts in enumerate(mats):
        plus = _mp_add(ts, {0: eye})
        minus = _mp_add(ts, {2: eye}, sign=-1)
        rep.quadratic[s] = vanish(_mp_mul(plus, minus), _mp_mul(ts, ts))
    for s in range(wg.rank):
        for t in range(s + 1, wg.rank):
            m = wg.coxeter_matrix[s][t]
            lhs = _braid_word(mats[s], mats[t], m)
            rhs = _braid_word(mats[t], mats[s], m)
            rep.braid[(s, t)] = vanish(_mp_add(lhs, rhs, sign=-1), lhs)
    return rep


def _closed_form(wg: WGraphData, s: int, gp: int) -> dict[int, dict[int, float | int]]:
    """``Psi(c_s) e~_{Gamma'}`` as ``{Gamma~: {degree: coefficient}}``."""
    if s in wg.labels[gp]:
        return {gp: {1: 1, -1: 1}}
    return {gt: {0: wg.f(gt, gp)} for gt in wg.nodes if s in wg.labels[gt] and wg.f(gt, gp)}


def cross_check_psi(wg: WGraphData, module: SpecialModule, jalg: JAlgebra, rel: float = 1e-8) -> dict:
    """Compare ``Psi(c_s)`` acting through ``J`` with the closed forms, per ``(s, Gamma')``."""
    ring = module.ring
    g = jalg.group
    results: dict[tuple[int, int], bool] = {}
    for s in range(g.rank):
        coeffs = jalg.Psi_coeffs(g.element((s,)))
        for gp in wg.nodes:
            direct: dict[int, dict[int, float | int]] = {}
            for z, poly in coeffs.items():
                i = ring.local.get(z)
                if i is None:
                    continue
                lam_ = module.lambdas[(i, gp)]
                if not lam_:
                    continue
                target = int(ring.left_of[ring.inv[i]])
                bucket = direct.setdefault(target, {})
                for k, c in poly.items():
                    bucket[k] = bucket.get(k, 0) + c * lam_
            want = _closed_form(wg, s, gp)
            ok = True
            for gt in set(direct) | set(want):
                a, b = direct.get(gt, {}), want.get(gt, {})
                for k in set(a) | set(b):
                    x, y = a.get(k, 0), b.get(k, 0)
                    if module.exact:
                        ok &= x == y
                    else:
                        ok &= abs(float(x) - float(y)) <= rel * max(1.0, abs(float(y)))
            results[(s, gp)] = bool(ok)
    return results


def character_at_one(wg: WGraphData, words: list[tuple[int, ...]]) -> list[float]:
    """Traces of the specialised representation (``v = 1``) on the given words."""
    mats = [_mp_eval(m, 1) for m in generator_matrices(wg)]
    d = len(wg.nodes)
    out = []
    for word in words:
        acc = np.eye(d)
        for s in word:
            acc = acc @ mats[s].astype(float)
        out.append(float(np.trace(acc)))
    return out


# -- serialisation ---------------------------------------------------------------
def _num(x):
    return int(x) if isinstance(x, (int, np.integer)) else float(x)


def to_dict(wg: WGraphData) -> dict:
    return {
        "type": wg.type_label,
        "coxeter_matrix": wg.coxeter_matrix,
        "cell": wg.cell,
        "gamma": wg.gamma,
        "exact": wg.exact,
        "nodes": [{"id": gp, "S": [s + 1 for s in wg.labels[gp]]} for gp in wg.nodes],
        "edges": [{"source": a, "target": b, "weight": _num(w)} for a, b, w in wg.edges()],
    }


def parse_json(text: str) -> WGraphData:
    doc = json.loads(text)
    weights = {(e["target"], e["source"]): e["weight"] for e in doc["edges"]}
    return WGraphData(
        doc["type"],
        doc["coxeter_matrix"],
        doc["cell"],
        doc["gamma"],
        [n["id"] for n in doc["nodes"]],
        {n["id"]: tuple(s - 1 for s in n["S"]) for n in doc["nodes"]},
        weights,
        doc["exact"],
    )


def _dot(wg: WGraphData) -> str:
    lines = [f'digraph "{wg.type_label} cell {wg.cell}" {{']
    for gp in wg.nodes:
        lab = ",".join(str(s + 1) for s in wg.labels[gp])
        lines.append(f'  n{gp} [label="{gp}: {{{lab}}}"];')
    for a, b, w in wg.edges():
        lines.append(f'  n{a} -> n{b} [label="{w if wg.exact else format(w, ".12g")}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(wg: WGraphData, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_dict(wg), indent=1, sort_keys=True) + "\n"
    if fmt == "dot":
        return _dot(wg)
    raise ValueError(f"unknown W-graph format {fmt!r}")


def laurent_matrix(mat: MatPoly) -> list[list[LaurentPoly]]:
    """Entrywise Laurent view of an exact matrix polynomial."""
    d = next(iter(mat.values())).shape[0]
    return [[LaurentPoly.from_dict({k: int(m[i, j]) for k, m in mat.items()}) for j in range(d)] for i in range(d)]
