"""Normalization of the toric coordinate ring k[Q] and its presentation.

Q = q(N^n) is the semigroup of S/I. Its saturation Q^sat = cone(Q) cap group(Q)
gives the normalization R = k[Q^sat], which is finitely generated as an
S-module by the monomials of Q^sat that cannot be shifted back by a
generator of Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import NonFiniteGeneratorSet
from .intlat import (IntegerMatrix, PushoutData, hermite_normal_form, kernel_basis, rank,
                     section, smith_normal_form)
from .polyalg import GradedPolynomialRing, Ideal, MultiDegree, PolynomialRing, SubmoduleOfFree
from .polyalg import groebner as gb
from .polyalg.ideal import lattice_ideal
from .polyalg.module import minimal_generators
from .polyalg.orders import DEFAULT_ORDER

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class AffineSemigroup:
    ambient_rank: int
    generators: tuple

    def __init__(self, ambient_rank: int, generators: Sequence[Sequence[int]]):
        gens = tuple(tuple(int(a) for a in g) for g in generators)
        if any(len(g) != ambient_rank for g in gens):
            raise ValueError("generator of the wrong length")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "generators", gens)


@dataclass
class NormalizationData:
    hilbert_basis: list
    module_generators: list
    generator_degrees: list
    presentation: SubmoduleOfFree = field(repr=False)


class _Cone:
    """Q written in coordinates of group(Q), where its cone is full dimensional."""

    def __init__(self, Q: AffineSemigroup, ambient_lattice: bool = False):
        gens = [g for g in dict.fromkeys(Q.generators) if any(g)]
        self.ambient = Q.ambient_rank
        if not gens:
            self.basis = []
        elif ambient_lattice:
            # span(Q) cap Z^r instead of the group generated by Q
            perp = kernel_basis(IntegerMatrix.from_rows(gens, Q.ambient_rank))
            sat = kernel_basis(perp.T) if perp.ncols else IntegerMatrix.identity(Q.ambient_rank)
            self.basis = hermite_normal_form(sat.columns(), Q.ambient_rank)
        else:
            self.basis = hermite_normal_form(gens, Q.ambient_rank)
        self.k = len(self.basis)
        self.gens = [self.coords(g) for g in gens]
        self.facets = self._facets()

    def coords(self, v):
        """Coordinates of v in the HNF basis of group(Q), None if v is outside it."""
        v = list(v)
        out = []
        for row in self.basis:
            piv = next(j for j, a in enumerate(row) if a)
            c, r = divmod(v[piv], row[piv])
            if r:
                return None
            out.append(c)
            v = [a - c * b for a, b in zip(v, row)]
        return tuple(out) if not any(v) else None

    def lift(self, c) -> tuple:
        v = [0] * self.ambient
        for a, row in zip(c, self.basis):
            v = [x + a * y for x, y in zip(v, row)]
        return tuple(v)

    def _facets(self):
        k = self.k
        if k == 0:
            return []
        found = set()
        for sub in combinations(self.gens, k - 1):
            M = IntegerMatrix.from_rows(sub, k) if sub else IntegerMatrix.zeros(0, k)
            if sub and rank(M) != k - 1:
                continue
            K = kernel_basis(M)
            if K.ncols != 1:
                continue
            n = K.column(0)
            vals = [sum(a * b for a, b in zip(n, g)) for g in self.gens]
            if all(v >= 0 for v in vals):
                found.add(n)
            elif all(v <= 0 for v in vals):
                found.add(tuple(-a for a in n))
        return sorted(found)

    def in_cone(self, c) -> bool:
        return all(sum(a * b for a, b in zip(n, c)) >= 0 for n in self.facets)

    def positive_functional(self):
        w = [sum(col) for col in zip(*self.facets)] if self.facets else [0] * self.k
        return tuple(w)


def _inverse(M: list) -> list:
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(M)
    A = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c])
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [a / piv for a in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def parallelepiped_points(vectors: Sequence[Sequence[int]]) -> list:
    """Lattice points of the half-open parallelepiped sum [0,1) v_i.

    The vectors must form a basis of Q^k. One point per coset of the
    sublattice they span, found through the Smith form.
    """
    k = len(vectors)
    M = IntegerMatrix.from_columns(vectors, k)
    D, U, _ = smith_normal_form(M)
    Uinv = _inverse([list(r) for r in U.rows])
    Minv = _inverse([list(r) for r in M.rows])
    ds = [D[i, i] for i in range(k)]
    points = []

    def rec(i, c):
        if i == k:
            z = [sum(Uinv[r][j] * c[j] for j in range(k)) for r in range(k)]
            lam = [sum(Minv[r][j] * z[j] for j in range(k)) for r in range(k)]
            frac = [l - (l.numerator // l.denominator) for l in lam]
            x = tuple(int(sum(M[r, j] * frac[j] for j in range(k))) for r in range(k))
            points.append(x)
            return
        for a in range(ds[i]):
            rec(i + 1, c + [a])

    rec(0, [])
    return points


def _full_rank_subsets(gens, k):
    for sub in combinations(gens, k):
        if rank(IntegerMatrix.from_rows(sub, k)) == k:
            yield sub


def _candidates(cone: _Cone, cap: int) -> set:
    out = set()
    count = 0
    for sub in _full_rank_subsets(cone.gens, cone.k):
        pts = parallelepiped_points(sub)
        count += len(pts)
        if count > cap:
            raise NonFiniteGeneratorSet(f"more than {cap} candidate points")
        out.update(pts)
    return out


def saturate_semigroup(Q: AffineSemigroup, cap: int = DEFAULT_CAP,
                       ambient_lattice: bool = False) -> list:
    """Hilbert basis of cone(Q) cap group(Q), sorted by (weight, vector).

    With ``ambient_lattice`` the cone is cut with span(Q) cap Z^r instead of
    the group generated by Q.
    """
    cone = _Cone(Q, ambient_lattice)
    if cone.k == 0:
        return []
    cands = (_candidates(cone, cap) | set(cone.gens)) - {(0,) * cone.k}
    hb = []
    for x in cands:
        reducible = any(
            h != x and cone.in_cone(tuple(a - b for a, b in zip(x, h))) for h in cands)
        if not reducible:
            hb.append(x)
    w = cone.positive_functional()
    hb.sort(key=lambda c: (sum(a * b for a, b in zip(w, c)), c))
    return [cone.lift(c) for c in hb]


def in_saturation(Q: AffineSemigroup, v: Sequence[int], ambient_lattice: bool = False) -> bool:
    cone = _Cone(Q, ambient_lattice)
    c = cone.coords(v)
    return c is not None and cone.in_cone(c)


def module_generators(Q: AffineSemigroup, qsat_gens=None, cap: int = DEFAULT_CAP,
                      ambient_lattice: bool = False) -> list:
    """Minimal generators of k[Q^sat] as a k[Q]-module, the zero vector first.

    These are the m in Q^sat with m - a outside Q^sat for every generator a
    of Q. Each lies in a half-open parallelepiped spanned by linearly
    independent generators of Q, which bounds the search.
    """
    cone = _Cone(Q, ambient_lattice)
    if cone.k == 0:
        return [(0,) * Q.ambient_rank]
    zero = (0,) * cone.k
    cands = _candidates(cone, cap) | {zero}
    out = []
    for m in cands:
        if not cone.in_cone(m):
            continue
        if any(cone.in_cone(tuple(a - b for a, b in zip(m, g))) for g in cone.gens):
            continue
        out.append(m)
    w = cone.positive_functional()
    out.sort(key=lambda c: (sum(a * b for a, b in zip(w, c)), c))
    return [cone.lift(c) for c in out]


def semigroup_of(po: PushoutData) -> AffineSemigroup:
    return AffineSemigroup(po.q_free.nrows, po.q_free.columns())


def degree_map(po: PushoutData, ring: GradedPolynomialRing) -> IntegerMatrix:
    """The map M' -> Cl(X) on free coordinates of M', as an integer matrix."""
    s = section(po.q_free)
    degs = IntegerMatrix.from_columns([d.as_list() for d in ring.degrees],
                                      ring.class_group.ngens)
    return degs @ s


def generator_degree(c: Sequence[int], po: PushoutData, ring: GradedPolynomialRing) -> MultiDegree:
    """Class group degree of the monomial x^c, c in M'."""
    phi = degree_map(po, ring)
    return MultiDegree.of(phi @ tuple(c), ring.class_group)


def nonnegative_solve(columns: Sequence[Sequence[int]], target: Sequence[int]):
    """Lexicographically smallest lambda in N^h with sum lambda_j columns[j] = target."""
    h = len(columns)
    cone = _Cone(AffineSemigroup(len(target), columns))
    w = cone.positive_functional()
    tc = cone.coords(target)
    if tc is None:
        return None
    cs = [cone.coords(c) for c in columns]
    wt = [sum(a * b for a, b in zip(w, c)) for c in cs]
    budget = sum(a * b for a, b in zip(w, tc))
    lam = [0] * h

    def rec(j, rest, left):
        if j == h:
            return not any(rest)
        if wt[j] <= 0:
            return False
        for a in range(left // wt[j] + 1):
            lam[j] = a
            r = tuple(x - a * y for x, y in zip(rest, cs[j]))
            if rec(j + 1, r, left - a * wt[j]):
                return True
        lam[j] = 0
        return False

    return tuple(lam) if rec(0, tc, budget) else None


def present_normalization(ring: GradedPolynomialRing, ideal: Ideal, po: PushoutData,
                          gens: Sequence[Sequence[int]], degrees: Sequence[MultiDegree],
                          hilbert_basis: Sequence[Sequence[int]] | None = None
                          ) -> SubmoduleOfFree:
    """Kernel of S^g -> R, e_j -> x^{c_j}, minimalized.

    R is realized as k[y]/I_{Q^sat} over the Hilbert basis; each q(e_i) and
    each c_j is written as a y-monomial, and the kernel is read off a Groebner
    basis of the graph module in k[y, x]^{1+g} under an order that eliminates
    the extra component and the y variables.
    """
    n = ring.nvars
    g = len(gens)
    Q = semigroup_of(po)
    if g == 1 and not any(gens[0]):
        # R = S/I
        return SubmoduleOfFree(ring, 1, list(degrees), [(f,) for f in ideal.groebner()])
    H = list(hilbert_basis) if hilbert_basis is not None else saturate_semigroup(Q)
    h = len(H)
    ymat = IntegerMatrix.from_columns(H, Q.ambient_rank)
    iq = lattice_ideal(PolynomialRing(h), kernel_basis(ymat).columns())
    N = h + n

    def ymono(lam):
        return tuple(lam) + (0,) * n

    graph = []
    for f in iq.generators:
        graph.append({(0, e + (0,) * n): c for e, c in f.terms.items()})
    for i in range(n):
        lam = nonnegative_solve(H, Q.generators[i])
        xe = tuple(int(j == i) for j in range(n))
        graph.append({(0, (0,) * h + xe): Fraction(1), (0, ymono(lam)): Fraction(-1)})
    for j, c in enumerate(gens):
        lam = nonnegative_solve(H, c)
        if lam is None:
            raise ValueError(f"{c} is not in the saturation")
        graph.append({(0, ymono(lam)): Fraction(1), (j + 1, (0,) * N): Fraction(-1)})

    ykey = DEFAULT_ORDER.key

    def key(t):
        comp, e = t
        return (comp == 0, ykey(e[:h]), ykey(e[h:]), -comp)

    G = gb.groebner(graph, key)
    rels = []
    for v in G:
        if all(comp > 0 and not any(e[:h]) for comp, e in v):
            rels.append(gb.vector_to_tuple({(comp - 1, e[h:]): a for (comp, e), a in v.items()},
                                           g, n))
    return minimal_generators(SubmoduleOfFree(ring, g, list(degrees), rels))


def normalize(ring: GradedPolynomialRing, ideal: Ideal, po: PushoutData,
              cap: int = DEFAULT_CAP) -> NormalizationData:
    Q = semigroup_of(po)
    H = saturate_semigroup(Q, cap)
    gens = module_generators(Q, H, cap)
    degs = [generator_degree(c, po, ring) for c in gens]
    pres = present_normalization(ring, ideal, po, gens, degs, H)
    return NormalizationData(H, gens, degs, pres)
