"""Positive special modules of a cell ring J_c built from Perron lines.

For a two-sided cell ``c`` and a base left cell ``Gamma`` the module ``M_Gamma``
is the sum over ``Gamma'`` of the dominant (Perron) lines of the transfer
matrices: right multiplication by ``sum_{y in Gamma ∩ Gamma^-1} t_y`` on the
block ``J_{Gamma ∩ Gamma'^-1}``.  Those matrices are strictly positive, so the
line is unique.

Two numeric paths exist.  If the all-ones vector is an exact eigenvector of
every transfer matrix (checked in integers) it is used as the basis and all
action constants come out as exact integers.  Otherwise power iteration in
binary64 gives the lines and every comparison is made at a relative tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .jalg import JAlgebra
from .kl import StructuralError

__all__ = [
    "CellRing",
    "ConvergenceError",
    "SpecialModule",
    "TransferMatrix",
    "Tolerances",
    "Report",
    "transfer_matrix",
    "perron_line",
    "special_module",
    "lam",
    "module_trace",
    "orthogonality_check",
    "verify_theorem12",
]


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-12
    rel: float = 1e-8
    max_iter: int = 100_000
    trace_floor: float = -1e-10
    orthogonality: float = 1e-6


DEFAULT_TOL = Tolerances()


class CellRing:
    """The block ``J_c`` with local indices ``0..|c|-1``."""

    def __init__(self, jalg: JAlgebra, c: int):
        cells = jalg.cells
        self.jalg = jalg
        self.c = c
        self.members = list(cells.two_sided_cells[c])
        self.m = len(self.members)
        self.local = {w: i for i, w in enumerate(self.members)}
        idx = np.array(self.members)
        self.structure = jalg.structure[np.ix_(idx, idx, idx)]
        inv = jalg.group.inverse
        self.inv = np.array([self.local[int(inv[w])] for w in self.members])
        self.L = cells.left_cells_in(c)
        self.left_of = np.array([int(cells.left_id[w]) for w in self.members])

    def blocks(self, gamma: int, gamma_p: int) -> list[int]:
        """Local indices of ``Gamma ∩ Gamma'^{-1}``."""
        return [i for i in range(self.m) if self.left_of[i] == gamma and self.left_of[self.inv[i]] == gamma_p]

    def cell_pair(self, i: int) -> tuple[int, int]:
        """``(Gamma~, Gamma~')`` with ``u`` in ``Gamma~ ∩ Gamma~'^{-1}``."""
        return int(self.left_of[i]), int(self.left_of[self.inv[i]])

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        st = self.structure if a.dtype != object and b.dtype != object else self.structure.astype(object)
        return np.tensordot(b, np.tensordot(a, st, axes=(0, 0)), axes=(0, 0))

    def left_mul(self, i: int, a: np.ndarray) -> np.ndarray:
        """``t_u a`` for local index ``i``."""
        st = self.structure[i]
        if a.dtype == object:
            st = st.astype(object)
        return a @ st

    def right_mul(self, a: np.ndarray, i: int) -> np.ndarray:
        st = self.structure[:, i, :]
        if a.dtype == object:
            st = st.astype(object)
        return a @ st

    def theta(self, a: np.ndarray) -> np.ndarray:
        out = np.zeros_like(a)
        out[self.inv] = a
        return out

    @cached_property
    def unit(self) -> np.ndarray:
        e = np.zeros(self.m, dtype=np.int64)
        for gam in self.L:
            e[self.local[self.jalg.cells.delta(gam)]] = 1
        return e


@dataclass
class TransferMatrix:
    gamma: int
    gamma_p: int
    index: list[int]  # local indices of the block
    matrix: np.ndarray  # integer, entry (z, x)


def transfer_matrix(ring: CellRing, gamma: int, gamma_p: int) -> TransferMatrix:
    block = ring.blocks(gamma, gamma_p)
    diag = ring.blocks(gamma, gamma)
    st = ring.structure
    # entry (z, x) = sum_{y in Gamma ∩ Gamma^-1} (coefficient of t_z in t_x t_y)
    m = st[np.ix_(block, diag, block)].sum(axis=1).T
    if m.size == 0 or m.min() < 1:
        raise StructuralError(f"transfer matrix ({gamma},{gamma_p}) has a zero entry")
    return TransferMatrix(gamma, gamma_p, block, m.astype(np.int64))


def perron_line(
    m: np.ndarray | TransferMatrix, start: np.ndarray | None = None, tol: Tolerances = DEFAULT_TOL
) -> tuple[np.ndarray, float, float]:
    """Power iteration from the all-ones vector (or ``start``).

    Returns the eigenvector normalised to max entry 1, the eigenvalue and the
    residual ``||M x - lambda x||_inf``.
    """
    if isinstance(m, TransferMatrix):
        m = m.matrix
    a = np.asarray(m, dtype=float)
    x = np.ones(a.shape[0]) if start is None else np.asarray(start, dtype=float).copy()
    x /= x.max()
    res = np.inf
    lam_ = 0.0
    for _ in range(tol.max_iter):
        y = a @ x
        lam_ = y.max()
        x = y / lam_
        res = np.abs(a @ x - lam_ * x).max()
        if res < tol.residual:
            return x, float(lam_), float(res)
    raise ConvergenceError(f"power iteration stalled with residual {res:.3g}")


@dataclass
class SpecialModule:
    """Basis ``e~_{Gamma'}`` of ``M_Gamma`` as local vectors of ``J_c``."""

    ring: CellRing
    gamma: int
    basis: dict[int, np.ndarray]
    eigenvalues: dict[int, float]
    residuals: dict[int, float]
    exact: bool
    tol: Tolerances = DEFAULT_TOL
    lambdas: dict[tuple[int, int], float | int] = field(default_factory=dict)
    actions: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def L(self) -> list[int]:
        return self.ring.L

    @property
    def dim(self) -> int:
        return len(self.L)

    def action_matrix(self, i: int) -> np.ndarray:
        """Matrix of ``t_u`` (local index ``i``) in the basis ordered by ``L``."""
        return self.actions[i]

    def trace(self, i: int):
        return np.trace(self.actions[i])

    def traces(self) -> np.ndarray:
        return np.array([self.trace(i) for i in range(self.ring.m)])


def _ratio(w: np.ndarray, e: np.ndarray, support: list[int], exact: bool, rel: float, what: str):
    """Scalar ``lam`` with ``w = lam * e`` where ``e`` is supported on ``support``."""
    outside = np.ones(len(w), dtype=bool)
    outside[support] = False
    scale = max(1.0, float(np.abs(w).max()) if len(w) else 1.0)
    if exact:
        if np.any(w[outside] != 0):
            raise StructuralError(f"{what}: product leaves the target line's block")
        ratios = {Fraction(int(w[i]), int(e[i])) for i in support}
        if len(ratios) != 1:
            raise StructuralError(f"{what}: component ratios differ {sorted(ratios)}")
        r = ratios.pop()
        return int(r) if r.denominator == 1 else r
    if np.abs(w[outside]).max(initial=0.0) > rel * scale:
        raise StructuralError(f"{what}: product leaves the target line's block")
    ratios = w[support] / e[support]
    r = float(ratios.mean())
    if np.abs(ratios - r).max() > rel * max(1.0, abs(r)):
        raise StructuralError(f"{what}: component ratios differ {ratios}")
    return r


def all_ones_stationary(ring: CellRing, gamma: int) -> bool:
    for gp in ring.L:
        tm = transfer_matrix(ring, gamma, gp).matrix
        rows = tm.sum(axis=1)
        if not np.all(rows == rows[0]):
            return False
    return True


def special_module(
    ring: CellRing,
    gamma: int,
    tol: Tolerances = DEFAULT_TOL,
    exact: bool | None = None,
    start: dict[int, np.ndarray] | None = None,
) -> SpecialModule:
    """Assemble ``M_Gamma`` and its lambda table.

    ``exact=None`` picks the integer all-ones path whenever it applies.
    ``start`` optionally overrides the power-iteration start per block.
    """
    if exact is None:
        exact = all_ones_stationary(ring, gamma)
    elif exact and not all_ones_stationary(ring, gamma):
        raise StructuralError("all-ones vector is not stationary; exact path unavailable")
    basis, eig, res = {}, {}, {}
    for gp in ring.L:
        tm = transfer_matrix(ring, gamma, gp)
        if exact:
            vec = np.zeros(ring.m, dtype=np.int64)
            vec[tm.index] = 1
            eig[gp] = int(tm.matrix.sum(axis=1)[0])
            res[gp] = 0.0
        else:
            s0 = None if start is None else start.get(gp)
            x, lam_, r = perron_line(tm, s0, tol)
            vec = np.zeros(ring.m)
            vec[tm.index] = x
            eig[gp], res[gp] = lam_, r
        basis[gp] = vec
    mod = SpecialModule(ring, gamma, basis, eig, res, exact, tol)
    _fill_lambdas(mod)
    return mod


def _fill_lambdas(mod: SpecialModule) -> None:
    ring = mod.ring
    pos = {g: k for k, g in enumerate(ring.L)}
    for i in range(ring.m):
        gt, gtp = ring.cell_pair(i)
        a = np.zeros((mod.dim, mod.dim), dtype=object if mod.exact else float)
        for gp in ring.L:
            w = ring.left_mul(i, mod.basis[gp])
            if gt != gp:
                if np.any(w != 0):
                    raise StructuralError(f"t_u e_{gp} nonzero although u is not in that left cell")
                lam_ = 0
            else:
                target = ring.blocks(mod.gamma, gtp)
                lam_ = _ratio(w, mod.basis[gtp], target, mod.exact, mod.tol.rel, f"t_{i} e_{gp}")
                if not lam_ > 0:
                    raise StructuralError(f"lambda for u={i}, Gamma'={gp} is not positive")
                a[pos[gtp], pos[gp]] = lam_
            mod.lambdas[(i, gp)] = lam_
        mod.actions[i] = a if not mod.exact else np.array(a.tolist(), dtype=object)


def lam(i: int, gamma_p: int, mod: SpecialModule):
    """``lambda_{u, Gamma', Gamma~'}`` for local index ``i`` of ``u``; zero off the matching cell."""
    return mod.lambdas[(i, gamma_p)]


def module_trace(i: int, mod: SpecialModule):
    tr = mod.trace(i)
    if tr < mod.tol.trace_floor:
        raise StructuralError(f"negative trace {tr} for local element {i}")
    return tr


def orthogonality_check(ring: CellRing, traces_a, traces_b) -> float:
    """``sum_{u in c} tr(t_u, A) tr(t_{u^-1}, B)`` for two trace vectors over ``c``."""
    ta = np.asarray(traces_a, dtype=float)
    tb = np.asarray(traces_b, dtype=float)
    return float(np.dot(ta, tb[ring.inv]))


# ----------------------------------------------------------------------
# verification of the positivity clauses
# ----------------------------------------------------------------------
@dataclass
class Report:
    cell: int
    clauses: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.clauses[name] = bool(ok) and self.clauses.get(name, True)
        if detail and not ok:
            self.details.setdefault(name, detail)

    def table(self) -> str:
        return "\n".join(f"cell {self.cell}  {k:<14} {'pass' if v else 'FAIL'}" for k, v in self.clauses.items())


def _proportional(w, e, exact: bool, rel: float) -> tuple[bool, float]:
    """Is ``w`` a positive multiple of ``e`` (same support)?"""
    supp = np.nonzero(e)[0]
    try:
        r = _ratio(w, e, list(supp), exact, rel, "line")
    except StructuralError:
        return False, 0.0
    return r > 0, float(r)


def verify_theorem12(jalg: JAlgebra, c: int, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> Report:
    ring = CellRing(jalg, c)
    rep = Report(c)
    L = ring.L
    n_l = len(L)
    try:
        mods = {g: special_module(ring, g, tol) for g in L}
    except (StructuralError, ConvergenceError) as exc:
        rep.record("a", False, str(exc))
        return rep
    rep.data["exact"] = all(m.exact for m in mods.values())
    rep.data["residuals"] = {g: max(m.residuals.values()) for g, m in mods.items()}
    rep.data["lambdas"] = {
        g: {f"{u},{gp}": (int(v) if m.exact else float(v)) for (u, gp), v in m.lambdas.items() if v}
        for g, m in mods.items()
    }

    # (a) positive, transfer-stable lines
    for g, m in mods.items():
        for gp in L:
            e = m.basis[gp]
            blk = ring.blocks(g, gp)
            positive = bool(np.all(e[blk] > 0)) and np.count_nonzero(e) == len(blk)
            tm = transfer_matrix(ring, g, gp).matrix
            te = tm @ e[blk]
            if m.exact:
                stable = bool(np.all(te == m.eigenvalues[gp] * e[blk]))
            else:
                stable = np.abs(te - m.eigenvalues[gp] * e[blk]).max() < tol.residual * max(1.0, m.eigenvalues[gp]) * 10
                stable = stable and m.residuals[gp] < tol.residual
            rep.record("a", positive and stable, f"Gamma={g} Gamma'={gp}")
    # uniqueness: a perturbed random start gives the same lines
    rng = np.random.default_rng(seed)
    for g, m in mods.items():
        starts = {gp: 0.5 + rng.random(len(ring.blocks(g, gp))) for gp in L}
        other = special_module(ring, g, tol, exact=False, start=starts)
        for gp in L:
            e = m.basis[gp].astype(float)
            e = e / e.max()
            dev = np.abs(other.basis[gp] - e).max()
            rep.record("a_unique", dev < tol.rel, f"Gamma={g} Gamma'={gp} deviation {dev:.3g}")

    # (b) action rules; the lambda table was asserted while building, re-check delta
    for g, m in mods.items():
        for gp in L:
            d = ring.local[jalg.cells.delta(gp)]
            ok = abs(float(m.lambdas[(d, gp)]) - 1.0) <= tol.rel
            rep.record("b", ok, f"lambda_(delta,{gp},{gp}) = {m.lambdas[(d, gp)]}")

    # (c) the action map nu: J_c -> End(M_Gamma) is surjective
    for g, m in mods.items():
        stack = np.array([m.actions[i].astype(float).ravel() for i in range(ring.m)])
        rank = np.linalg.matrix_rank(stack, tol=tol.rel * max(1.0, np.abs(stack).max()))
        rep.record("c", rank == n_l * n_l, f"Gamma={g} rank {rank} != {n_l**2}")

    # (d) I = sum of all M_Gamma is a two-sided ideal on which nu is bijective
    exact_all = rep.data["exact"]
    lines = {(g, gp): mods[g].basis[gp] for g in L for gp in L}
    for (g, gp), e in lines.items():
        for i in range(ring.m):
            w = ring.right_mul(e, i)
            rep.record("d", _in_ideal(ring, w, lines, exact_all, tol.rel), f"e[{g},{gp}] t_{i} not in I")
    for g, m in mods.items():
        img = []
        for (g2, gp2), e in lines.items():
            a = sum(float(e[i]) * m.actions[i].astype(float) for i in np.nonzero(e)[0])
            img.append(np.ravel(a))
        rank = np.linalg.matrix_rank(np.array(img), tol=tol.rel * max(1.0, np.abs(np.array(img)).max()))
        rep.record("d", rank == n_l * n_l, f"nu restricted to I has rank {rank}")

    # (e) products of lines
    for (g, gp), e1 in lines.items():
        for (gt, gtp), e2 in lines.items():
            prod = ring.mul(e1, e2)
            if g != gtp:
                rep.record("e", not np.any(prod != 0), f"M[{g},{gp}] M[{gt},{gtp}] != 0")
            else:
                ok, _ = _proportional(prod, lines[(gt, gp)], exact_all, tol.rel)
                rep.record("e", ok, f"M[{g},{gp}] M[{gt},{g}] not a positive multiple of M[{gt},{gp}]")

    # (f) theta maps M[G,G'] onto M[G',G] preserving positivity
    for (g, gp), e in lines.items():
        ok, _ = _proportional(ring.theta(e), lines[(gp, g)], exact_all, tol.rel)
        rep.record("f", ok, f"theta(M[{g},{gp}]) != M[{gp},{g}]")

    # traces (nonnegative; positive on distinguished involutions)
    for g, m in mods.items():
        tr = m.traces().astype(float)
        rep.record("traces", tr.min() >= tol.trace_floor, f"Gamma={g} min trace {tr.min()}")
        for gp in L:
            d = ring.local[jalg.cells.delta(gp)]
            rep.record("traces", tr[d] > 0, f"tr(t_delta) = {tr[d]}")
        rep.record("traces", abs(float(ring.unit @ tr) - n_l) < tol.rel * n_l, "tr(unit) != |L|")
    return rep


def _in_ideal(ring: CellRing, w: np.ndarray, lines: dict, exact: bool, rel: float) -> bool:
    """Is ``w`` in the span of the given lines (each living on its own block)?"""
    covered = np.zeros(ring.m, dtype=bool)
    scale = max(1.0, float(np.abs(w.astype(float)).max()))
    for (g, gp), e in lines.items():
        supp = np.nonzero(e)[0]
        covered[supp] = True
        part = w[supp]
        if exact:
            if np.any(part != 0):
                ok, _ = _proportional(w * _mask(supp, ring.m), e, True, rel)
                if not ok:
                    return False
        elif np.abs(part.astype(float)).max() > rel * scale:
            r = float(np.dot(part, e[supp]) / np.dot(e[supp], e[supp]))
            if np.abs(part - r * e[supp]).max() > rel * scale:
                return False
    return not np.any(np.abs(w[~covered].astype(float)) > (0 if exact else rel * scale))


def _mask(supp, m):
    out = np.zeros(m, dtype=np.int64)
    out[supp] = 1
    return out
