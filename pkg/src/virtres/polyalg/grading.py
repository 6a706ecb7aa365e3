"""Class-group degrees and graded polynomial rings."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from ..intlat import AbelianGroupPresentation
from .polynomial import Polynomial, parse_polynomial


@dataclass(frozen=True, order=False)
class MultiDegree:
    """An element of Z^r + Z/n_1 + ... + Z/n_t."""

    free: tuple
    torsion: tuple = ()
    moduli: tuple = ()

    def __post_init__(self):
        if len(self.torsion) != len(self.moduli):
            raise ValueError("torsion part and moduli differ in length")
        reduced = tuple(a % n for a, n in zip(self.torsion, self.moduli))
        if reduced != self.torsion:
            object.__setattr__(self, "torsion", reduced)

    @classmethod
    def zero(cls, group: AbelianGroupPresentation) -> "MultiDegree":
        t = group.torsion_invariants
        return cls((0,) * group.free_rank, (0,) * len(t), tuple(t))

    @classmethod
    def of(cls, values: Sequence[int], group: AbelianGroupPresentation) -> "MultiDegree":
        r = group.free_rank
        return cls(tuple(values[:r]), tuple(values[r:]), tuple(group.torsion_invariants))

    def __add__(self, other: "MultiDegree") -> "MultiDegree":
        return MultiDegree(tuple(a + b for a, b in zip(self.free, other.free)),
                           tuple(a + b for a, b in zip(self.torsion, other.torsion)),
                           self.moduli)

    def __neg__(self) -> "MultiDegree":
        return MultiDegree(tuple(-a for a in self.free), tuple(-a for a in self.torsion),
                           self.moduli)

    def __sub__(self, other: "MultiDegree") -> "MultiDegree":
        return self + (-other)

    def scaled(self, k: int) -> "MultiDegree":
        return MultiDegree(tuple(k * a for a in self.free), tuple(k * a for a in self.torsion),
                           self.moduli)

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def sort_key(self):
        """Canonical twist order: total degree, then free part, then torsion."""
        return (sum(self.free), self.free, self.torsion)

    def as_list(self) -> list:
        return list(self.free) + list(self.torsion)

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.as_list()) + ")"


class PolynomialRing:
    """k[x_0, ..., x_{n-1}] over the rationals."""

    def __init__(self, nvars: int, names: Sequence[str] | None = None):
        self.nvars = nvars
        self.names = list(names) if names is not None else [f"x{i}" for i in range(nvars)]
        if len(self.names) != nvars:
            raise ValueError("wrong number of variable names")

    def gens(self) -> list:
        return [Polynomial.var(i, self.nvars) for i in range(self.nvars)]

    def __call__(self, text) -> Polynomial:
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, (int, Fraction)):
            return Polynomial.constant(text, self.nvars)
        return parse_polynomial(text, self.names)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.nvars)

    def one(self) -> Polynomial:
        return Polynomial.constant(1, self.nvars)

    def format(self, f: Polynomial, order=None) -> str:
        return f.to_str(self.names, order)

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(self.names)})"


class GradedPolynomialRing(PolynomialRing):
    """A polynomial ring graded by a finitely generated abelian group."""

    def __init__(self, degrees: Sequence[MultiDegree], class_group: AbelianGroupPresentation,
                 names: Sequence[str] | None = None):
        super().__init__(len(degrees), names)
        self.degrees = list(degrees)
        self.class_group = class_group
        self._functional = None
        self._tails: dict = {}

    @property
    def grading(self) -> dict:
        return dict(zip(self.names, self.degrees))

    def zero_degree(self) -> MultiDegree:
        return MultiDegree.zero(self.class_group)

    def degree_of_exponent(self, e: Sequence[int]) -> MultiDegree:
        d = self.zero_degree()
        for a, g in zip(e, self.degrees):
            if a:
                d = d + g.scaled(a)
        return d

    def homogeneous_degree(self, f: Polynomial):
        """Degree of f if f is homogeneous (and nonzero), else None."""
        degs = {self.degree_of_exponent(e) for e in f.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, f: Polynomial) -> bool:
        return f.is_zero() or self.homogeneous_degree(f) is not None

    def positive_functional(self) -> tuple:
        """Integer vector w with w . deg(x_i) > 0 for every variable."""
        if self._functional is None:
            w = positivity_witness([d.free for d in self.degrees], self.class_group.free_rank)
            if w is None:
                raise ValueError("grading is not positive")
            self._functional = w
        return self._functional

    def weight(self, d: MultiDegree) -> Fraction:
        w = self.positive_functional()
        return sum(a * b for a, b in zip(w, d.free))

    def monomials_up_to_weight(self, bound) -> list:
        """All exponents with functional value <= bound."""
        w = self.positive_functional()
        vw = [sum(a * b for a, b in zip(w, d.free)) for d in self.degrees]
        out = []
        n = self.nvars
        e = [0] * n

        def rec(i, left):
            if i == n:
                out.append(tuple(e))
                return
            k = 0
            while k * vw[i] <= left:
                e[i] = k
                rec(i + 1, left - k * vw[i])
                k += 1
            e[i] = 0

        rec(0, bound)
        return out

    def monomials_of_degree(self, d: MultiDegree) -> list:
        """All exponents of degree exactly d."""
        return self._tails_of(0, d.free, d.torsion)

    def _tails_of(self, i: int, free: tuple, tors: tuple) -> list:
        # exponent tails in variables i.. of degree (free, tors), memoized across calls
        k = (i, free, tors)
        hit = self._tails.get(k)
        if hit is not None:
            return hit
        w = self.positive_functional()
        if i == self.nvars:
            out = [()] if not any(free) and not any(tors) else []
        else:
            out = []
            g = self.degrees[i]
            mod = g.moduli
            a = 0
            while sum(x * y for x, y in zip(w, free)) >= 0:
                out.extend((a,) + t for t in self._tails_of(i + 1, free, tors))
                free = tuple(x - y for x, y in zip(free, g.free))
                tors = tuple((x - y) % m for x, y, m in zip(tors, g.torsion, mod))
                a += 1
        self._tails[k] = out
        return out


def positivity_witness(columns: Sequence[Sequence[int]], rank: int):
    """Integer w with w . c > 0 for all columns c, or None if none exists.

    The LP is solved in floating point and the rounded certificate is then
    checked exactly; a failed rounding falls back to an exact check of the
    dual certificate (a nonnegative combination summing to zero).
    """
    cols = [tuple(c) for c in columns]
    if not cols:
        return (0,) * rank
    if any(not any(c) for c in cols):
        return None
    if rank == 0:
        return None
    A = np.array(cols, dtype=float)
    res = linprog(np.zeros(rank), A_ub=-A, b_ub=-np.ones(len(cols)),
                  bounds=[(None, None)] * rank, method="highs")
    if res.status == 0:
        for den in (1, 2, 3, 4, 6, 12, 60, 840, 10**6):
            w = [Fraction(x).limit_denominator(den) for x in res.x]
            if all(sum(a * b for a, b in zip(w, c)) > 0 for c in cols):
                lcm = 1
                for x in w:
                    lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
                return tuple(int(x * lcm) for x in w)
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def check_positive_grading(ring: GradedPolynomialRing) -> bool:
    """True iff the only monomial of degree 0 is 1 (torsion is ignored)."""
    return positivity_witness([d.free for d in ring.degrees], ring.class_group.free_rank) is not None
