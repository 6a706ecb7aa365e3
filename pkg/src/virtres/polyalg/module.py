"""Graded submodules of free modules and their syzygies."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import groebner as gb
from .grading import MultiDegree
from .orders import DEFAULT_ORDER, MonomialOrder, pot_term_key, top_term_key
from .polynomial import Polynomial


class SubmoduleOfFree:
    """Submodule of F = sum_j S(-twists[j]) generated by g-tuples of polynomials.

    A generator v is homogeneous of degree d when every term x^a e_j has
    deg(x^a) + twists[j] = d.
    """

    def __init__(self, ring, rank: int, twists: Sequence[MultiDegree], generators: Sequence):
        self.ring = ring
        self.rank = rank
        self.twists = list(twists)
        if len(self.twists) != rank:
            raise ValueError("need one twist per component")
        gens = []
        for g in generators:
            g = tuple(ring(x) for x in g)
            if len(g) != rank:
                raise ValueError(f"generator of length {len(g)} in a rank-{rank} module")
            if any(g):
                gens.append(g)
        self.generators = gens

    def __repr__(self):
        cols = ["(" + ", ".join(self.ring.format(p) for p in g) + ")" for g in self.generators]
        return f"SubmoduleOfFree(rank={self.rank}, gens=[{', '.join(cols)}])"

    def vectors(self) -> list:
        return [gb.tuple_to_vector(g) for g in self.generators]

    def degree_of(self, v) -> MultiDegree | None:
        """Degree of a homogeneous tuple or vector, None if inhomogeneous or zero."""
        if isinstance(v, tuple):
            v = gb.tuple_to_vector(v)
        degs = {self.ring.degree_of_exponent(e) + self.twists[c] for c, e in v}
        return degs.pop() if len(degs) == 1 else None

    def generator_degrees(self) -> list:
        return [self.degree_of(g) for g in self.generators]

    def is_homogeneous(self) -> bool:
        return all(d is not None for d in self.generator_degrees())

    def groebner(self, order: MonomialOrder = DEFAULT_ORDER) -> list:
        return module_groebner_basis(self, order)

    def contains(self, v: Sequence[Polynomial], order: MonomialOrder = DEFAULT_ORDER) -> bool:
        key = top_term_key(order)
        G = gb.groebner(self.vectors(), key)
        return not gb.normal_form(gb.tuple_to_vector(tuple(v)), G, key)

    def is_zero(self) -> bool:
        return not self.generators


def module_groebner_basis(m: SubmoduleOfFree, order: MonomialOrder = DEFAULT_ORDER) -> list:
    key = top_term_key(order)
    G = gb.groebner(m.vectors(), key)
    return [gb.vector_to_tuple(v, m.rank, m.ring.nvars) for v in G]


def minimal_generators(m: SubmoduleOfFree) -> SubmoduleOfFree:
    """A minimal homogeneous generating set (graded Nakayama).

    Generators are scanned by increasing weight of their degree; one is kept
    only if it is not in the span of those kept before it.
    """
    key = top_term_key(DEFAULT_ORDER)
    items = []
    for idx, g in enumerate(m.generators):
        d = m.degree_of(g)
        if d is None:
            raise ValueError("minimal generators need homogeneous input")
        items.append((m.ring.weight(d), d.sort_key(), idx, g))
    items.sort(key=lambda t: t[:3])
    kept: list = []
    G: list = []
    for _, _, _, g in items:
        v = gb.tuple_to_vector(g)
        if G and not gb.normal_form(v, G, key):
            continue
        kept.append(g)
        G = gb.groebner([gb.tuple_to_vector(k) for k in kept], key)
    return SubmoduleOfFree(m.ring, m.rank, m.twists, kept)


def syzygy_module(m: SubmoduleOfFree, minimal: bool = True) -> SubmoduleOfFree:
    """Kernel of sum_i S(-deg m_i) -> F, e_i -> m_i.

    Computed from a Groebner basis of the graph module {(m_i, e_i)} in
    F + S^k under a position-over-term order that ranks F's components
    highest: basis elements with no F part generate the kernel.
    """
    g = m.rank
    k = len(m.generators)
    degs = m.generator_degrees()
    if any(d is None for d in degs):
        raise ValueError("syzygies need homogeneous generators")
    if k == 0:
        return SubmoduleOfFree(m.ring, 0, [], [])
    graph = []
    for i, v in enumerate(m.vectors()):
        w = dict(v)
        w[(g + i, (0,) * m.ring.nvars)] = Fraction(1)
        graph.append(w)
    key = pot_term_key(DEFAULT_ORDER)
    G = gb.groebner(graph, key)
    syz = []
    for v in G:
        if all(c >= g for c, _ in v):
            shifted = {(c - g, e): a for (c, e), a in v.items()}
            syz.append(gb.vector_to_tuple(shifted, k, m.ring.nvars))
    out = SubmoduleOfFree(m.ring, k, degs, syz)
    return minimal_generators(out) if minimal else out
