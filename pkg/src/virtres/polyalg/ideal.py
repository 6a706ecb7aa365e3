"""Ideals: Groebner bases, saturation, elimination, Krull dimension."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import UnitIdeal, ZeroDivisorInput
from . import groebner as gb
from .orders import DEFAULT_ORDER, MonomialOrder, ideal_term_key
from .polynomial import Polynomial


@dataclass(frozen=True)
class Ideal:
    ring: object
    generators: tuple

    def __init__(self, ring, generators: Iterable = ()):
        gens = tuple(ring(g) if not isinstance(g, Polynomial) else g for g in generators)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(g for g in gens if g))
        object.__setattr__(self, "_gb_cache", {})

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def is_homogeneous(self) -> bool:
        return all(self.ring.is_homogeneous(g) for g in self.generators)

    def groebner(self, order: MonomialOrder = DEFAULT_ORDER) -> list:
        if order not in self._gb_cache:
            self._gb_cache[order] = groebner_basis(self, order)
        return list(self._gb_cache[order])

    def contains(self, f: Polynomial, order: MonomialOrder = DEFAULT_ORDER) -> bool:
        return reduce_polynomial(f, self.groebner(order), order).is_zero()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.nvars == other.nvars and self.groebner() == other.groebner()

    def __hash__(self):
        return hash(tuple(self.groebner()))

    def __repr__(self):
        return "Ideal(" + ", ".join(self.ring.format(g) for g in self.generators) + ")"


def _groebner_polys(polys: Sequence[Polynomial], nvars: int, order: MonomialOrder) -> list:
    key = ideal_term_key(order)
    out = gb.groebner((gb.poly_to_vector(p) for p in polys), key, ideal=True)
    return [Polynomial._raw({e: c for (_, e), c in v.items()}, nvars) for v in out]


def groebner_basis(gens, order: MonomialOrder = DEFAULT_ORDER):
    """Reduced Groebner basis of an Ideal (list of Polynomial) or a SubmoduleOfFree."""
    from .module import SubmoduleOfFree, module_groebner_basis
    if isinstance(gens, SubmoduleOfFree):
        return module_groebner_basis(gens, order)
    if isinstance(gens, Ideal):
        return _groebner_polys(gens.generators, gens.nvars, order)
    gens = list(gens)
    if not gens:
        return []
    return _groebner_polys(gens, gens[0].nvars, order)


def reduce_polynomial(f: Polynomial, basis: Sequence[Polynomial],
                      order: MonomialOrder = DEFAULT_ORDER) -> Polynomial:
    key = ideal_term_key(order)
    r = gb.normal_form(gb.poly_to_vector(f), [gb.poly_to_vector(g) for g in basis], key)
    return Polynomial._raw({e: c for (_, e), c in r.items()}, f.nvars)


def _eliminate_polys(polys, nvars: int, block: Sequence[int]) -> list:
    """Generators of (polys) intersected with the subring avoiding ``block``."""
    block = sorted(set(block))
    rest = [i for i in range(nvars) if i not in block]
    perm = {v: k for k, v in enumerate(block + rest)}
    positions = [perm[i] for i in range(nvars)]
    moved = [p.embed(nvars, positions) for p in polys]
    order = MonomialOrder.block(len(block))
    G = _groebner_polys(moved, nvars, order)
    k = len(block)
    out = []
    for g in G:
        if all(not any(e[:k]) for e in g.terms):
            inv = {}
            for e, c in g.terms.items():
                inv[tuple(e[perm[i]] for i in range(nvars))] = c
            out.append(Polynomial._raw(inv, nvars))
    return out


def eliminate(I: Ideal, first_block: Iterable[int]) -> Ideal:
    """I intersected with the subring in the variables outside ``first_block``.

    The result keeps the ambient ring; its generators do not involve the
    eliminated variables.
    """
    return Ideal(I.ring, _groebner_polys(_eliminate_polys(I.generators, I.nvars, list(first_block)),
                                         I.nvars, DEFAULT_ORDER))


def _saturate_polys(polys: Sequence[Polynomial], f: Polynomial) -> list:
    n = f.nvars
    if not f:
        raise ZeroDivisorInput("cannot saturate by the zero polynomial")
    shifted = [p.embed(n + 1, list(range(1, n + 1))) for p in polys]
    tf = f.embed(n + 1, list(range(1, n + 1))).mul_monomial((1,) + (0,) * n) \
        - Polynomial.constant(1, n + 1)
    G = _groebner_polys(shifted + [tf], n + 1, MonomialOrder.block(1))
    out = []
    for g in G:
        if all(e[0] == 0 for e in g.terms):
            out.append(Polynomial._raw({e[1:]: c for e, c in g.terms.items()}, n))
    return out


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f^infinity) via an extra variable t and the relation t*f - 1."""
    f = I.ring(f)
    if not f:
        raise ZeroDivisorInput("cannot saturate by the zero polynomial")
    if f.is_constant():
        return Ideal(I.ring, _groebner_polys(I.generators, I.nvars, DEFAULT_ORDER))
    return Ideal(I.ring, _groebner_polys(_saturate_polys(I.generators, f), I.nvars, DEFAULT_ORDER))


def saturate_by_variables(I: Ideal, variables: Iterable[int] | None = None) -> Ideal:
    """Saturate by each variable in turn; equals saturation by their product."""
    n = I.nvars
    variables = range(n) if variables is None else variables
    polys = list(I.generators)
    for i in variables:
        polys = _saturate_polys(polys, Polynomial.var(i, n))
    return Ideal(I.ring, _groebner_polys(polys, n, DEFAULT_ORDER))


def lattice_basis_binomials(ring, basis: Iterable[Sequence[int]]) -> list:
    out = []
    for u in basis:
        plus = tuple(max(a, 0) for a in u)
        minus = tuple(max(-a, 0) for a in u)
        out.append(Polynomial.binomial(plus, minus))
    return out


def lattice_ideal(ring, basis: Iterable[Sequence[int]]) -> Ideal:
    """I_L for the lattice spanned by ``basis``.

    The basis binomials x^{u+} - x^{u-} generate an ideal whose saturation by
    the product of all variables is I_L.
    """
    gens = lattice_basis_binomials(ring, basis)
    if not gens:
        return Ideal(ring, [])
    return saturate_by_variables(Ideal(ring, gens))


def leading_monomials(I: Ideal, order: MonomialOrder = DEFAULT_ORDER) -> list:
    return [g.leading_term(order)[0] for g in I.groebner(order)]


def krull_dimension(I: Ideal) -> int:
    """dim S/I as the largest set of variables independent modulo in(I)."""
    G = I.groebner()
    n = I.nvars
    if any(g.is_constant() for g in G):
        raise UnitIdeal("the ideal contains 1")
    supports = [frozenset(i for i, a in enumerate(g.leading_term(DEFAULT_ORDER)[0]) if a)
                for g in G]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            Us = frozenset(U)
            if not any(s <= Us for s in supports):
                return size
    return 0
