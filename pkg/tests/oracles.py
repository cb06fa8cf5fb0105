"""Independent slow implementations used as test oracles.

Nothing here reuses the KL recursion, the c-basis multiplication or the
character machinery of the package; only the group tables are shared.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from asymhecke.laurent import LaurentPoly

ONE = LaurentPoly.monomial(0)
V2 = LaurentPoly.monomial(2)


# -- Hecke algebra in the T-basis --------------------------------------------------
def ts_times(g, s, elem):
    """``T_s * elem`` with ``T_s^2 = (v^2 - 1) T_s + v^2``."""
    out = {}
    for w, c in elem.items():
        sw = int(g.left[s, w])
        if g.length[sw] > g.length[w]:
            out[sw] = out.get(sw, LaurentPoly()) + c
        else:
            out[w] = out.get(w, LaurentPoly()) + c * (V2 - 1)
            out[sw] = out.get(sw, LaurentPoly()) + c * V2
    return {w: c for w, c in out.items() if not c.is_zero()}


def t_mul(g, a, b):
    out = {}
    for x, cx in a.items():
        prod = {y: cx * cy for y, cy in b.items()}
        for s in reversed(g.words[x]):
            prod = ts_times(g, s, prod)
        for w, c in prod.items():
            out[w] = out.get(w, LaurentPoly()) + c
    return {w: c for w, c in out.items() if not c.is_zero()}


def kl_polys_classical(g):
    """``P[(x, w)]`` as coefficient lists in ``q`` via the textbook recursion."""
    n = g.order
    order = sorted(range(n), key=lambda w: g.length[w])
    leq = _bruhat_subword(g)
    P: dict[tuple[int, int], list[int]] = {}

    def get(x, w):
        return P.get((x, w), [])

    def mu(z, w):
        d = g.length[w] - g.length[z]
        if d % 2 == 0 or not leq[z, w]:
            return 0
        p = get(z, w)
        k = (d - 1) // 2
        return p[k] if k < len(p) else 0

    for w in order:
        if w == 0:
            P[(0, 0)] = [1]
            continue
        s = g.words[w][0]
        v = int(g.left[s, w])  # w = s v, v < w
        for x in order:
            if not leq[x, w]:
                continue
            sx = int(g.left[s, x])
            c = 1 if g.length[sx] < g.length[x] else 0
            acc: dict[int, int] = {}

            def add(poly, shift, sign=1):
                for k, a in enumerate(poly):
                    acc[k + shift] = acc.get(k + shift, 0) + sign * a

            add(get(sx, v), 1 - c)
            add(get(x, v), c)
            for z in order:
                if g.length[z] >= g.length[v] or int(g.length[g.left[s, z]]) > g.length[z]:
                    continue
                m = mu(z, v)
                if m:
                    add([m * a for a in get(x, z)], (g.length[w] - g.length[z]) // 2, -1)
            top = max((k for k, a in acc.items() if a), default=-1)
            P[(x, w)] = [acc.get(k, 0) for k in range(top + 1)]
    return P


def _bruhat_subword(g):
    """``y <= w`` iff some reduced word of ``w`` has a subword for ``y``."""
    n = g.order
    leq = np.zeros((n, n), dtype=bool)
    for w in range(n):
        word = g.words[w]
        reach = {0}
        for s in word:
            reach |= {int(g.right[x, s]) for x in reach}
        leq[list(reach), w] = True
    return leq


bruhat_subword = _bruhat_subword


def c_element(g, P, w):
    """``c_w = v^{-l(w)} sum_y P_{y,w}(v^2) T_y``."""
    out = {}
    for y in range(g.order):
        p = P.get((y, w))
        if p:
            out[y] = LaurentPoly.from_dict({2 * k - int(g.length[w]): a for k, a in enumerate(p) if a})
    return out


def to_c_basis(g, P, elem):
    """Triangular elimination from the top length down."""
    elem = dict(elem)
    out = {}
    while elem:
        z = max(elem, key=lambda w: (g.length[w], w))
        coef = elem[z] * LaurentPoly.monomial(int(g.length[z]))
        out[z] = coef
        for y, c in c_element(g, P, z).items():
            elem[y] = elem.get(y, LaurentPoly()) - coef * c
            if elem[y].is_zero():
                del elem[y]
    return out


# -- symmetric group combinatorics ------------------------------------------------
def permutation(word, n):
    """Product of adjacent transpositions ``s_i = (i, i+1)`` (0-based ``i``), left to right."""
    perm = list(range(n))
    for s in word:
        perm[s], perm[s + 1] = perm[s + 1], perm[s]
    return tuple(perm)


def rs_tableaux(perm):
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for i, x in enumerate(perm):
        row = 0
        while True:
            if row == len(P):
                P.append([x])
                Q.append([i])
                break
            r = P[row]
            bigger = [j for j, y in enumerate(r) if y > x]
            if not bigger:
                r.append(x)
                Q[row].append(i)
                break
            j = bigger[0]
            r[j], x = x, r[j]
            row += 1
    return tuple(map(tuple, P)), tuple(map(tuple, Q))


def partition_of(keys):
    groups: dict = {}
    for w, k in enumerate(keys):
        groups.setdefault(k, []).append(w)
    return sorted(sorted(v) for v in groups.values())


# -- Molien series ------------------------------------------------------------------
def molien_multiplicities(g, chi_elem, n_terms):
    """``<S^k V, E>`` for ``k < n_terms`` from ``(1/|W|) sum_w conj(chi(w)) / det(1 - t w)``."""
    total = np.zeros(n_terms, dtype=complex)
    for w in range(g.order):
        charpoly = np.poly(g.matrices[w])  # det(x - M) = x^r + a1 x^(r-1) + ...
        den = np.asarray(charpoly, dtype=complex)  # det(1 - t M) = 1 + a1 t + ...
        series = np.zeros(n_terms, dtype=complex)
        series[0] = 1.0
        for k in range(1, n_terms):
            series[k] = -sum(den[j] * series[k - j] for j in range(1, min(k, len(den) - 1) + 1))
        total += np.conj(chi_elem[w]) * series
    return (total / g.order).real


# -- small finite groups ---------------------------------------------------------------
def brute_character_check(mult, values, classes):
    """Return max deviation from the column orthogonality relations."""
    n = mult.shape[0]
    sizes = np.array([len(c) for c in classes])
    col = values.conj().T @ values
    return float(np.abs(col - np.diag(n / sizes)).max())


def all_pairs(n):
    return itertools.product(range(n), repeat=2)


def frac(x):
    return Fraction(x)
