"""Enumeration of finite Coxeter groups.

Elements are realised as matrices of the geometric (reflection)
representation on the simple-root basis and interned to dense integer ids.
Ids are ordered by length and then by the lexicographically smallest reduced
word, so every table below is deterministic.

>>> g = build_group(CartanDatum.parse("A2"))
>>> g.order, g.length[g.w0]
(6, 3)
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "CartanDatum",
    "CoxeterGroup",
    "DatumError",
    "GroupSizeError",
    "build_group",
]

DEFAULT_CAP = 1200

# float keys are rounded to this many decimals before interning
_KEY_DECIMALS = 9
_SEPARATION = 1e-6


class DatumError(ValueError):
    pass


class GroupSizeError(ValueError):
    pass


def _known_order(kind: str, n: int, m: int | None) -> int:
    if kind == "A":
        return math.factorial(n + 1)
    if kind in "BC":
        return 2**n * math.factorial(n)
    if kind == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12, "H3": 120, "H4": 14400}.get(
        f"{kind}{n}", 2 * (m or 0)
    )


@dataclass(frozen=True)
class CartanDatum:
    """A Coxeter type label with its Cartan (or symmetrised geometric) matrix."""

    kind: str
    rank: int
    m: int | None = None  # only for I2(m)

    @classmethod
    def parse(cls, label: str) -> "CartanDatum":
        label = label.strip()
        mi = re.fullmatch(r"I2\((\d+)\)", label)
        if mi:
            m = int(mi.group(1))
            if m < 2:
                raise DatumError(f"bad dihedral order in {label!r}")
            return cls("I", 2, m)
        mt = re.fullmatch(r"([A-H])_?(\d+)", label)
        if not mt:
            raise DatumError(f"unknown type label {label!r}")
        kind, n = mt.group(1), int(mt.group(2))
        ok = (
            (kind == "A" and n >= 1)
            or (kind in "BC" and n >= 2)
            or (kind == "D" and n >= 4)
            or (kind == "E" and n in (6, 7, 8))
            or (kind == "F" and n == 4)
            or (kind == "G" and n == 2)
            or (kind == "H" and n in (3, 4))
        )
        if not ok:
            raise DatumError(f"unknown type label {label!r}")
        return cls(kind, n)

    @property
    def label(self) -> str:
        return f"I2({self.m})" if self.kind == "I" else f"{self.kind}{self.rank}"

    @property
    def crystallographic(self) -> bool:
        return self.kind not in "HI" or (self.kind == "I" and self.m in (2, 3, 4, 6))

    @property
    def expected_order(self) -> int:
        return _known_order(self.kind, self.rank, self.m)

    @cached_property
    def coxeter_matrix(self) -> np.ndarray:
        n = self.rank
        m = np.full((n, n), 2, dtype=int)
        np.fill_diagonal(m, 1)

        def edge(i, j, k):
            m[i, j] = m[j, i] = k

        if self.kind == "A":
            for i in range(n - 1):
                edge(i, i + 1, 3)
        elif self.kind in "BC":
            for i in range(n - 2):
                edge(i, i + 1, 3)
            edge(n - 2, n - 1, 4)
        elif self.kind == "D":
            for i in range(n - 2):
                edge(i, i + 1, 3)
            edge(n - 3, n - 1, 3)
        elif self.kind == "E":
            # Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
            edge(0, 2, 3)
            edge(2, 3, 3)
            edge(1, 3, 3)
            for i in range(3, n - 1):
                edge(i, i + 1, 3)
        elif self.kind == "F":
            edge(0, 1, 3)
            edge(1, 2, 4)
            edge(2, 3, 3)
        elif self.kind == "G":
            edge(0, 1, 6)
        elif self.kind == "H":
            edge(0, 1, 5)
            for i in range(1, n - 1):
                edge(i, i + 1, 3)
        elif self.kind == "I":
            edge(0, 1, self.m)
        return m

    @cached_property
    def cartan_matrix(self) -> np.ndarray:
        """Integer Cartan matrix when crystallographic, else ``-2cos(pi/m)`` entries."""
        mm = self.coxeter_matrix
        n = self.rank
        if self.crystallographic:
            a = np.zeros((n, n), dtype=np.int64)
            for i in range(n):
                for j in range(n):
                    if i == j:
                        a[i, j] = 2
                    elif mm[i, j] == 3:
                        a[i, j] = -1
                    elif mm[i, j] in (4, 6):
                        # long root has the smaller index
                        k = 2 if mm[i, j] == 4 else 3
                        a[i, j] = -1 if i < j else -k
            return a
        a = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                a[i, j] = 2.0 if i == j else -2.0 * math.cos(math.pi / mm[i, j])
        return a

    def reflection_matrices(self) -> list[np.ndarray]:
        """Matrices of the simple reflections acting on the simple-root basis."""
        a = self.cartan_matrix
        n = self.rank
        out = []
        for i in range(n):
            s = np.eye(n, dtype=a.dtype)
            # s_i(alpha_j) = alpha_j - a_ij alpha_i
            s[i, :] -= a[i, :]
            out.append(s)
        return out


@dataclass
class CoxeterGroup:
    """Dense tables for a finite Coxeter group; ids follow (length, ShortLex)."""

    datum: CartanDatum
    length: np.ndarray
    words: list[tuple[int, ...]]
    right: np.ndarray  # right[w, s] = ws
    left: np.ndarray  # left[s, w] = sw
    inverse: np.ndarray
    matrices: np.ndarray  # geometric representation, shape (|W|, n, n)
    w0: int
    _mult: np.ndarray | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.length)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def identity(self) -> int:
        return 0

    @property
    def generators(self) -> list[int]:
        return [int(self.right[0, s]) for s in range(self.rank)]

    def right_descents(self, w: int) -> frozenset[int]:
        return frozenset(s for s in range(self.rank) if self.length[self.right[w, s]] < self.length[w])

    def left_descents(self, w: int) -> frozenset[int]:
        return frozenset(s for s in range(self.rank) if self.length[self.left[s, w]] < self.length[w])

    @cached_property
    def right_descent_mask(self) -> np.ndarray:
        """Boolean array ``[w, s]``: ``ws < w``."""
        return self.length[self.right] < self.length[:, None]

    @cached_property
    def left_descent_mask(self) -> np.ndarray:
        """Boolean array ``[s, w]``: ``sw < w``."""
        return self.length[self.left] < self.length[None, :]

    def element(self, word) -> int:
        """Id of the product of the generators in ``word`` (0-based indices)."""
        w = 0
        for s in word:
            w = int(self.right[w, s])
        return w

    def mul(self, x: int, y: int) -> int:
        for s in self.words[y]:
            x = int(self.right[x, s])
        return x

    @property
    def mult_table(self) -> np.ndarray:
        if self._mult is None:
            n = self.order
            tab = np.empty((n, n), dtype=np.int32)
            tab[:, 0] = np.arange(n)
            for y in range(1, n):
                word = self.words[y]
                tab[:, y] = self.right[tab[:, self.element(word[:-1])], word[-1]]
            self._mult = tab
        return self._mult

    def word_str(self, w: int) -> str:
        return "".join(str(s + 1) for s in self.words[w]) or "e"

    @cached_property
    def bruhat(self) -> np.ndarray:
        """Boolean matrix ``[y, w]``: ``y <= w`` in Bruhat order.

        Uses ``y <= w  iff  min(y, ys) <= ws`` for a right descent ``s`` of ``w``.
        """
        n = self.order
        b = np.zeros((n, n), dtype=bool)
        b[0, 0] = True
        for w in range(1, n):
            s = self.words[w][-1]
            ws = self.right[w, s]
            below = b[:, ws]
            col = below.copy()
            col[self.right[below, s]] = True
            b[:, w] = col
        return b

    def bruhat_leq(self, y: int, w: int) -> bool:
        return bool(self.bruhat[y, w])

    @cached_property
    def conjugacy_classes(self) -> list[list[int]]:
        """Classes sorted by minimal member; each class sorted."""
        n = self.order
        label = np.full(n, -1)
        classes = []
        for x in range(n):
            if label[x] >= 0:
                continue
            cls = {x}
            frontier = [x]
            while frontier:
                new = []
                for y in frontier:
                    for s in range(self.rank):
                        z = int(self.left[s, self.right[y, s]])
                        if z not in cls:
                            cls.add(z)
                            new.append(z)
                frontier = new
            members = sorted(cls)
            label[members] = len(classes)
            classes.append(members)
        return classes

    @cached_property
    def class_of(self) -> np.ndarray:
        lab = np.empty(self.order, dtype=int)
        for i, c in enumerate(self.conjugacy_classes):
            lab[c] = i
        return lab

    def reflection_trace(self, w: int) -> float | int:
        t = np.trace(self.matrices[w])
        return int(t) if self.datum.crystallographic else float(t)

    def to_json(self) -> str:
        doc = {
            "type": self.datum.label,
            "order": self.order,
            "w0": int(self.w0),
            "elements": [
                {
                    "id": w,
                    "length": int(self.length[w]),
                    "word": [s + 1 for s in self.words[w]],
                    "inverse": int(self.inverse[w]),
                    "left_descents": sorted(s + 1 for s in self.left_descents(w)),
                    "right_descents": sorted(s + 1 for s in self.right_descents(w)),
                }
                for w in range(self.order)
            ],
        }
        return json.dumps(doc, indent=1, sort_keys=True)


def _key(mat: np.ndarray, exact: bool):
    if exact:
        return mat.tobytes()
    # + 0.0 folds -0.0 into 0.0
    return (np.round(mat, _KEY_DECIMALS) + 0.0).tobytes()


def build_group(datum: CartanDatum | str, cap: int = DEFAULT_CAP) -> CoxeterGroup:
    if isinstance(datum, str):
        datum = CartanDatum.parse(datum)
    if datum.expected_order > cap:
        raise GroupSizeError(f"{datum.label} has order {datum.expected_order} > cap {cap}")
    exact = datum.crystallographic
    gens = datum.reflection_matrices()
    n = datum.rank
    tol = 0 if exact else 1e-9

    # breadth-first by length; ws > w iff w(alpha_s) is a positive root
    mats = [np.eye(n, dtype=gens[0].dtype)]
    lengths = [0]
    index = {_key(mats[0], exact): 0}
    layer = [0]
    while layer:
        nxt = []
        for w in layer:
            mw = mats[w]
            for s in range(n):
                if np.all(mw[:, s] >= -tol):
                    m2 = mw @ gens[s]
                    k = _key(m2, exact)
                    if k not in index:
                        index[k] = len(mats)
                        mats.append(m2)
                        lengths.append(lengths[w] + 1)
                        nxt.append(index[k])
                        if len(mats) > cap:
                            raise GroupSizeError(f"{datum.label}: more than {cap} elements")
        layer = nxt
    order = len(mats)
    if order != datum.expected_order:
        raise DatumError(f"{datum.label}: enumerated {order} elements, expected {datum.expected_order}")
    stack = np.array(mats)
    if not exact:
        flat = stack.reshape(order, -1)
        d = np.sqrt(((flat[:, None, :] - flat[None, :, :]) ** 2).sum(-1))
        d[np.arange(order), np.arange(order)] = np.inf
        if d.min() <= _SEPARATION:
            raise DatumError(f"{datum.label}: interning keys not separated (min distance {d.min():.3g})")

    def lookup(m):
        return index[_key(m, exact)]

    right = np.array([[lookup(stack[w] @ gens[s]) for s in range(n)] for w in range(order)])
    left = np.array([[lookup(gens[s] @ stack[w]) for w in range(order)] for s in range(n)])
    lengths = np.array(lengths)

    # lexicographically least reduced word: smallest left descent, then recurse
    by_len = sorted(range(order), key=lambda w: lengths[w])
    lexword: dict[int, tuple[int, ...]] = {}
    for w in by_len:
        if lengths[w] == 0:
            lexword[w] = ()
            continue
        s = min(t for t in range(n) if lengths[left[t, w]] < lengths[w])
        lexword[w] = (s,) + lexword[int(left[s, w])]
    perm = sorted(range(order), key=lambda w: (lengths[w], lexword[w]))
    new_id = np.empty(order, dtype=int)
    new_id[perm] = np.arange(order)

    right_n = new_id[right[perm]]
    left_n = new_id[left[:, perm]]
    words = [lexword[w] for w in perm]
    length_n = lengths[perm]
    mats_n = stack[perm]

    inverse = np.empty(order, dtype=int)
    for w in range(order):
        x = 0
        for s in reversed(words[w]):
            x = right_n[x, s]
        inverse[w] = x
    w0 = int(np.argmax(length_n))
    return CoxeterGroup(datum, length_n, words, right_n, left_n, inverse, mats_n, w0)
