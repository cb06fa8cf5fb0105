"""Exact Laurent polynomials in ``v`` with integer coefficients.

A polynomial is stored as its lowest exponent together with a dense tuple of
coefficients.  Python integers are unbounded, so nothing here can overflow.

>>> a = LaurentPoly.from_dict({1: 1, -1: 1})
>>> str(a * a)
'1*v^-2 + 2*v^0 + 1*v^2'
>>> (a * a).eval_one()
4
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "LaurentPoly",
    "lp_mul",
    "lp_coeff",
    "lp_eval_one",
    "ZERO",
    "ONE",
    "V",
    "V_INV",
]


@dataclass(frozen=True, init=False)
class LaurentPoly:
    lowest: int
    coeffs: tuple[int, ...]

    def __init__(self, lowest: int = 0, coeffs: Sequence[int] = ()):
        coeffs = [int(c) for c in coeffs]
        lo, hi = 0, len(coeffs)
        while lo < hi and coeffs[lo] == 0:
            lo += 1
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "lowest", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "lowest", int(lowest) + lo)
            object.__setattr__(self, "coeffs", tuple(coeffs[lo:hi]))

    # -- constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls(k, (c,))

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "LaurentPoly":
        d = {k: c for k, c in d.items() if c}
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        return cls(lo, [d.get(k, 0) for k in range(lo, hi + 1)])

    @classmethod
    def from_array(cls, arr, offset: int) -> "LaurentPoly":
        """Build from a dense array whose entry ``i`` is the coefficient of ``v^(i - offset)``."""
        return cls(-offset, [int(c) for c in np.asarray(arr).tolist()])

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: parses ``'1*v^-1 + 1*v^1'``."""
        text = text.replace(" ", "")
        if text == "0":
            return cls()
        d: dict[int, int] = {}
        for sign, c, k in re.findall(r"([+-]?)(\d+)\*v\^(-?\d+)", text):
            val = int(c) * (-1 if sign == "-" else 1)
            d[int(k)] = d.get(int(k), 0) + val
        return cls.from_dict(d)

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def highest(self) -> int:
        """Top exponent; raises on zero."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.lowest + len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        i = k - self.lowest
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def items(self) -> Iterable[tuple[int, int]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lowest + i, c

    def to_dict(self) -> dict[int, int]:
        return dict(self.items())

    def eval_one(self) -> int:
        return sum(self.coeffs)

    def __call__(self, v):
        """Evaluate at a number; Fractions and ints stay exact."""
        if isinstance(v, int):
            v = Fraction(v)
        return sum((c * v**k for k, c in self.items()), 0 * v)

    def bar(self) -> "LaurentPoly":
        """Substitute ``v -> v^-1``."""
        if not self.coeffs:
            return self
        return LaurentPoly(-self.highest, self.coeffs[::-1])

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.lowest, other.lowest)
        hi = max(self.highest, other.highest)
        out = [0] * (hi - lo + 1)
        for k, c in self.items():
            out[k - lo] += c
        for k, c in other.items():
            out[k - lo] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.lowest, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(self.lowest + other.lowest, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) == 1 and self.coeffs[0] in (1, -1):
                return LaurentPoly(-self.lowest * -n, (self.coeffs[0] ** -n,))
            raise ValueError("only monomial units can be inverted")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.lowest == other.lowest and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lowest, self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in self.items():
            if not parts:
                parts.append(f"{c}*v^{k}")
            else:
                parts.append(f"{'-' if c < 0 else '+'} {abs(c)}*v^{k}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, np.integer)):
        return LaurentPoly(0, (int(x),))
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly(0, (1,))
V = LaurentPoly(1, (1,))
V_INV = LaurentPoly(-1, (1,))


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_coeff(a: LaurentPoly, k: int) -> int:
    return a.coeff(k)


def lp_eval_one(a: LaurentPoly) -> int:
    return a.eval_one()
