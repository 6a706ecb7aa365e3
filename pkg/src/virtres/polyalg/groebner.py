"""Buchberger's algorithm for submodules of free modules.

The engine works on *vectors*: dicts mapping a term ``(component, exponent)``
to a nonzero Fraction. An ideal is a submodule of S^1 (component 0 only).
A term order is any function ``term -> sortable key``.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Vector = dict


def leading_term(f: Vector, key: Callable):
    return max(f, key=key)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _shift(a: tuple, b: tuple) -> tuple:
    return tuple(y - x for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def axpy(f: Vector, c: Fraction, shift: tuple, g: Vector) -> None:
    """In place: f -= c * x^shift * g."""
    for (comp, e), a in g.items():
        t = (comp, tuple(x + y for x, y in zip(e, shift)))
        v = f.get(t)
        if v is None:
            f[t] = -c * a
        else:
            v -= c * a
            if v:
                f[t] = v
            else:
                del f[t]


def scale(f: Vector, c: Fraction) -> Vector:
    return {t: a * c for t, a in f.items()}


def monic(f: Vector, key: Callable) -> Vector:
    lt = leading_term(f, key)
    c = f[lt]
    return f if c == 1 else scale(f, 1 / c)


class Basis:
    """A list of monic vectors with a lead-term index for fast division."""

    def __init__(self, key: Callable):
        self.key = key
        self.elems: list = []
        self.leads: list = []
        self._by_comp = defaultdict(list)

    def __len__(self):
        return len(self.elems)

    def add(self, f: Vector) -> int:
        f = monic(f, self.key)
        lt = leading_term(f, self.key)
        self.elems.append(f)
        self.leads.append(lt)
        self._by_comp[lt[0]].append(len(self.elems) - 1)
        return len(self.elems) - 1

    def divisor(self, t, skip=()):
        comp, e = t
        for i in self._by_comp.get(comp, ()):
            if i in skip:
                continue
            if _divides(self.leads[i][1], e):
                return i
        return None


def reduce(f: Vector, basis: Basis, full: bool = True, quotients: dict | None = None,
           skip=()) -> Vector:
    """Normal form of ``f`` modulo ``basis``.

    With ``full`` every term is reduced, otherwise only the leading term.
    If ``quotients`` is a dict it accumulates ``index -> {shift: coeff}`` with
    f = sum quotients[i] * basis[i] + remainder.
    """
    key = basis.key
    f = dict(f)
    rem: Vector = {}
    while f:
        lt = max(f, key=key)
        c = f[lt]
        i = basis.divisor(lt, skip)
        if i is None:
            if not full:
                rem.update(f)
                return rem
            rem[lt] = c
            del f[lt]
            continue
        shift = _shift(basis.leads[i][1], lt[1])
        axpy(f, c, shift, basis.elems[i])
        if quotients is not None:
            q = quotients.setdefault(i, {})
            v = q.get(shift, 0) + c
            if v:
                q[shift] = v
            else:
                q.pop(shift, None)
    return rem


def spoly(basis: Basis, i: int, j: int):
    """S-vector x^mi g_i - x^mj g_j of basis elements i, j, with mi and mj."""
    li, lj = basis.leads[i][1], basis.leads[j][1]
    l = _lcm(li, lj)
    mi, mj = _shift(li, l), _shift(lj, l)
    s: Vector = {}
    axpy(s, Fraction(-1), mi, basis.elems[i])
    axpy(s, Fraction(1), mj, basis.elems[j])
    return s, mi, mj


def groebner(gens: Iterable[Vector], key: Callable, ideal: bool = False) -> list:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    Pairs are processed by the normal strategy (smallest total degree of the
    lcm, ties broken by pair index). Buchberger's chain criterion is applied
    always; the coprime-lead criterion only for ideals (``ideal=True``).
    Returns monic vectors sorted by increasing leading term.
    """
    B = Basis(key)
    pending: list = []
    live = set()

    def push_pairs(j):
        cj, ej = B.leads[j]
        for i in range(j):
            ci, ei = B.leads[i]
            if ci != cj:
                continue
            if ideal and all(not (a and b) for a, b in zip(ei, ej)):
                continue
            l = _lcm(ei, ej)
            heapq.heappush(pending, (sum(l), i, j, l))
            live.add((i, j))

    for g in gens:
        if not g:
            continue
        h = reduce(g, B)
        if h:
            push_pairs(B.add(h))

    while pending:
        _, i, j, l = heapq.heappop(pending)
        live.discard((i, j))
        comp = B.leads[i][0]
        chain = False
        for k in B._by_comp[comp]:
            if k == i or k == j:
                continue
            if ((min(i, k), max(i, k)) in live) or ((min(j, k), max(j, k)) in live):
                continue
            if _divides(B.leads[k][1], l):
                chain = True
                break
        if chain:
            continue
        s, _, _ = spoly(B, i, j)
        h = reduce(s, B)
        if h:
            push_pairs(B.add(h))

    return interreduce(B.elems, key)


def interreduce(elems: Sequence[Vector], key: Callable) -> list:
    """Minimalize and fully reduce a Groebner basis; output is canonical."""
    leads = [leading_term(f, key) for f in elems]
    keep = []
    for i, (ci, ei) in enumerate(leads):
        redundant = False
        for j, (cj, ej) in enumerate(leads):
            if j == i or cj != ci or not _divides(ej, ei):
                continue
            if ej != ei or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    B = Basis(key)
    for i in keep:
        B.add(elems[i])
    out = []
    for idx in range(len(B)):
        r = reduce(B.elems[idx], B, skip=(idx,))
        out.append(monic(r, key))
    out.sort(key=lambda f: key(leading_term(f, key)))
    return out


def normal_form(f: Vector, gb: Sequence[Vector], key: Callable) -> Vector:
    B = Basis(key)
    for g in gb:
        B.add(g)
    return reduce(f, B)


def is_groebner(gb: Sequence[Vector], key: Callable) -> bool:
    """Every S-vector reduces to zero (the Buchberger criterion)."""
    B = Basis(key)
    for g in gb:
        B.add(g)
    for j in range(len(B)):
        for i in range(j):
            if B.leads[i][0] != B.leads[j][0]:
                continue
            s, _, _ = spoly(B, i, j)
            if reduce(s, B):
                return False
    return True


def poly_to_vector(p, comp: int = 0) -> Vector:
    return {(comp, e): c for e, c in p.terms.items()}


def tuple_to_vector(polys) -> Vector:
    v: Vector = {}
    for comp, p in enumerate(polys):
        for e, c in p.terms.items():
            v[(comp, e)] = c
    return v


def vector_to_tuple(v: Vector, rank: int, nvars: int):
    from .polynomial import Polynomial
    parts = [dict() for _ in range(rank)]
    for (comp, e), c in v.items():
        parts[comp][e] = c
    return tuple(Polynomial._raw(d, nvars) for d in parts)
