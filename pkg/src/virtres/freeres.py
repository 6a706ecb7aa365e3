"""Graded free complexes: Schreyer resolutions, minimization, Betti tables.

A complex F_0 <- F_1 <- ... <- F_len stores, for each F_i, the list of
twists a with F_i = sum S(-a), and for each i >= 1 the matrix of
d_i: F_i -> F_{i-1} as rows of polynomials (one column per basis element of
F_i). The entry in row r, column c is homogeneous of degree a_c - a_r.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .polyalg import Polynomial, SubmoduleOfFree
from .polyalg import groebner as gb
from .polyalg.grading import MultiDegree
from .polyalg.orders import DEFAULT_ORDER, schreyer_term_key, top_term_key


@dataclass
class FreeComplex:
    ring: object
    terms: list
    differentials: list

    def __post_init__(self):
        if len(self.differentials) != max(len(self.terms) - 1, 0):
            raise ValueError("need one differential between consecutive terms")
        for i, d in enumerate(self.differentials, start=1):
            if len(d) != len(self.terms[i - 1]) or any(len(r) != len(self.terms[i]) for r in d):
                raise ValueError(f"d_{i} has the wrong shape")

    @property
    def length(self) -> int:
        """Index of the last nonzero term."""
        n = len(self.terms) - 1
        while n > 0 and not self.terms[n]:
            n -= 1
        return n

    def ranks(self) -> list:
        return [len(t) for t in self.terms[: self.length + 1]]

    def d(self, i: int):
        """Matrix of d_i (rows of F_{i-1}, columns of F_i); empty when out of range."""
        if 1 <= i <= len(self.differentials):
            return self.differentials[i - 1]
        rows = len(self.terms[i - 1]) if 0 <= i - 1 < len(self.terms) else 0
        return [[] for _ in range(rows)]

    def rank_at(self, i: int) -> int:
        return len(self.terms[i]) if 0 <= i < len(self.terms) else 0

    def to_dict(self) -> dict:
        """Twists as integer lists and differentials as rows of polynomial strings."""
        fmt = self.ring.format
        return {
            "terms": [[a.as_list() for a in t] for t in self.terms],
            "differentials": [[[fmt(p) for p in row] for row in d] for d in self.differentials],
        }

    @classmethod
    def from_dict(cls, ring, d: dict) -> "FreeComplex":
        group = ring.class_group
        terms = [[MultiDegree.of(a, group) for a in t] for t in d["terms"]]
        diffs = [[[ring(p) for p in row] for row in m] for m in d["differentials"]]
        # a zero-column differential loses its row count in JSON
        for i, m in enumerate(diffs, start=1):
            if not m and terms[i - 1]:
                diffs[i - 1] = [[] for _ in terms[i - 1]]
        return cls(ring, terms, diffs)


@dataclass(frozen=True)
class BettiTable:
    """(homological index, twist) -> rank."""

    entries: tuple

    @classmethod
    def from_mapping(cls, m: dict) -> "BettiTable":
        items = sorted(((i, tuple(t)), r) for (i, t), r in m.items() if r)
        return cls(tuple(items))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def total_ranks(self) -> list:
        if not self.entries:
            return []
        top = max(i for (i, _), _ in self.entries)
        out = [0] * (top + 1)
        for (i, _), r in self.entries:
            out[i] += r
        return out

    def at(self, i: int) -> dict:
        return {t: r for (j, t), r in self.entries if j == i}

    def to_dict(self) -> dict:
        return {"entries": [{"i": i, "twist": list(t), "rank": r}
                            for (i, t), r in self.entries]}

    @classmethod
    def from_dict(cls, d: dict) -> "BettiTable":
        m: Counter = Counter()
        for e in d["entries"]:
            m[(int(e["i"]), tuple(int(a) for a in e["twist"]))] += int(e["rank"])
        return cls.from_mapping(m)


def betti_table(c: FreeComplex) -> BettiTable:
    counts: Counter = Counter()
    for i in range(c.length + 1):
        for a in c.terms[i]:
            counts[(i, tuple(a.as_list()))] += 1
    return BettiTable.from_mapping(counts)


# ---------------------------------------------------------------------------
# Schreyer resolution


def _vec_degree(ring, twists, v) -> MultiDegree:
    comp, e = next(iter(v))
    return ring.degree_of_exponent(e) + twists[comp]


def _sort_for_schreyer(vectors, key):
    """Order basis elements by lead component, then lex-descending lead monomial.

    With this ordering the next syzygies have lead monomials free of one
    more variable, so the iteration stops after at most nvars steps.
    """
    dec = []
    for v in vectors:
        comp, e = gb.leading_term(v, key)
        dec.append(((comp, tuple(-a for a in e)), v))
    dec.sort(key=lambda t: t[0])
    return [v for _, v in dec]


def _next_syzygies(G: list, key) -> list:
    """Schreyer syzygies of the Groebner basis G; a Groebner basis themselves."""
    B = gb.Basis(key)
    for g in G:
        B.add(g)
    out = []
    for i in range(len(B)):
        ci, ei = B.leads[i]
        cands = []
        for j in range(i + 1, len(B)):
            cj, ej = B.leads[j]
            if cj != ci:
                continue
            mi = tuple(max(a, b) - a for a, b in zip(ei, ej))
            cands.append((mi, j))
        kept = []
        for mi, j in cands:
            if any(gb._divides(mk, mi) and (mk != mi or k < j) for mk, k in cands if k != j):
                continue
            kept.append(j)
        for j in kept:
            s, mi, mj = gb.spoly(B, i, j)
            q: dict = {}
            r = gb.reduce(s, B, quotients=q)
            if r:
                raise ArithmeticError("S-vector did not reduce to zero; input is not a Groebner basis")
            syz = {(i, mi): Fraction(1), (j, mj): Fraction(-1)}
            for l, terms in q.items():
                for e, c in terms.items():
                    t = (l, e)
                    v = syz.get(t, 0) - c
                    if v:
                        syz[t] = v
                    else:
                        syz.pop(t, None)
            out.append(syz)
    return out


def schreyer_resolution(presentation: SubmoduleOfFree, max_steps: int | None = None) -> FreeComplex:
    """Free resolution of coker(presentation) by iterated Schreyer syzygies.

    Not minimal in general; see :func:`minimize`.
    """
    ring = presentation.ring
    nvars = ring.nvars
    max_steps = max_steps if max_steps is not None else nvars + 2
    key = top_term_key(DEFAULT_ORDER)
    terms = [list(presentation.twists)]
    diffs = []
    G = gb.groebner(presentation.vectors(), key)
    G = _sort_for_schreyer(G, key)
    steps = 0
    while G:
        prev_twists = terms[-1]
        twists = [_vec_degree(ring, prev_twists, g) for g in G]
        rank_prev = len(prev_twists)
        cols = [gb.vector_to_tuple(g, rank_prev, nvars) for g in G]
        diffs.append([[cols[c][r] for c in range(len(G))] for r in range(rank_prev)])
        terms.append(twists)
        leads = [gb.leading_term(g, key) for g in G]
        new_key = schreyer_term_key(key, leads)
        S = _next_syzygies(G, key)
        S = [gb.monic(s, new_key) for s in S]
        key = new_key
        G = _sort_for_schreyer(S, key)
        steps += 1
        if steps > max_steps:
            raise RuntimeError("Schreyer iteration did not terminate")
    return FreeComplex(ring, terms, diffs)


# ---------------------------------------------------------------------------
# minimization


def _to_sparse(c: FreeComplex):
    mats = []
    for i in range(1, len(c.terms)):
        D = c.d(i)
        cols = {}
        for col in range(len(c.terms[i])):
            entries = {r: D[r][col] for r in range(len(c.terms[i - 1])) if D[r][col]}
            cols[col] = entries
        mats.append(cols)
    return mats


def _find_unit(mats):
    for i, cols in enumerate(mats, start=1):
        for col in sorted(cols):
            for r in sorted(cols[col]):
                p = cols[col][r]
                if p.is_constant():
                    return i, r, col
    return None


def minimize(c: FreeComplex) -> FreeComplex:
    """Cancel unit entries one at a time; the result has no constant entries.

    Each cancellation splits off a trivial complex 0 -> S(-a) -> S(-a) -> 0,
    so the homotopy type (and all homology) is unchanged.
    """
    ring = c.ring
    mats = _to_sparse(c)
    alive = [list(range(len(t))) for t in c.terms]
    while True:
        hit = _find_unit(mats)
        if hit is None:
            break
        i, r, col = hit
        D = mats[i - 1]
        pivot_col = D.pop(col)
        u = pivot_col[r].constant_value()
        for other, entries in D.items():
            f = entries.get(r)
            if f is None:
                continue
            factor = f / u
            for row, g in pivot_col.items():
                v = entries.get(row, Polynomial.zero(ring.nvars)) - g * factor
                if v:
                    entries[row] = v
                else:
                    entries.pop(row, None)
            entries.pop(r, None)
        if i < len(mats):
            for entries in mats[i].values():
                entries.pop(col, None)
        if i >= 2:
            mats[i - 2].pop(r, None)
        alive[i].remove(col)
        alive[i - 1].remove(r)
    # canonical ordering of each basis: by twist, then by old position
    order = []
    for i, idx in enumerate(alive):
        order.append(sorted(idx, key=lambda k, i=i: (c.terms[i][k].sort_key(), k)))
    terms = [[c.terms[i][k] for k in order[i]] for i in range(len(order))]
    while len(terms) > 1 and not terms[-1]:
        terms.pop()
    zero = Polynomial.zero(ring.nvars)
    diffs = []
    for i in range(1, len(terms)):
        cols = mats[i - 1]
        diffs.append([[cols[k].get(r, zero) for k in order[i]] for r in order[i - 1]])
    return FreeComplex(ring, terms, diffs)


def minimal_free_resolution(presentation: SubmoduleOfFree, column_twists=None) -> FreeComplex:
    """Minimal graded free resolution of coker(presentation)."""
    if column_twists is not None and list(column_twists) != list(presentation.twists):
        presentation = SubmoduleOfFree(presentation.ring, presentation.rank, column_twists,
                                       presentation.generators)
    return minimize(schreyer_resolution(presentation))


def is_minimal(c: FreeComplex) -> bool:
    return all(not p.is_constant() for i in range(1, len(c.terms)) for row in c.d(i) for p in row
               if p)


# ---------------------------------------------------------------------------
# verification


@dataclass
class ComplexCheck:
    composition_failures: list = field(default_factory=list)
    homogeneity_failures: list = field(default_factory=list)
    minimal: bool = True

    @property
    def ok(self) -> bool:
        return not self.composition_failures and not self.homogeneity_failures


def matmul(A, B, nvars: int):
    """Product of polynomial matrices given as lists of rows."""
    zero = Polynomial.zero(nvars)
    if not A or not B:
        ncols = len(B[0]) if B else 0
        return [[zero] * ncols for _ in A]
    inner = len(B)
    ncols = len(B[0])
    out = []
    for row in A:
        new = []
        for j in range(ncols):
            acc = zero
            for k in range(inner):
                if row[k] and B[k][j]:
                    acc = acc + row[k] * B[k][j]
            new.append(acc)
        out.append(new)
    return out


def verify_complex(c: FreeComplex) -> ComplexCheck:
    """Check d_i d_{i+1} = 0, homogeneity of every entry, and minimality."""
    ring = c.ring
    rep = ComplexCheck()
    for i in range(1, len(c.terms) - 1):
        prod = matmul(c.d(i), c.d(i + 1), ring.nvars)
        for r, row in enumerate(prod):
            for col, p in enumerate(row):
                if p:
                    rep.composition_failures.append((i, r, col))
    for i in range(1, len(c.terms)):
        D = c.d(i)
        for r, row in enumerate(D):
            for col, p in enumerate(row):
                if not p:
                    continue
                want = c.terms[i][col] - c.terms[i - 1][r]
                got = ring.homogeneous_degree(p)
                if got != want:
                    rep.homogeneity_failures.append(
                        (i, r, col, want.as_list(), None if got is None else got.as_list()))
                if p.is_constant():
                    rep.minimal = False
    return rep


# ---------------------------------------------------------------------------
# truncated exactness oracle

_PRIME = 2**61 - 1


def _components(cols: list, nrows: int):
    """Group columns of a sparse matrix into connected blocks."""
    parent = list(range(nrows))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for col in cols:
        rows = list(col)
        for r in rows[1:]:
            a, b = find(rows[0]), find(r)
            if a != b:
                parent[a] = b
    blocks: dict = {}
    for col in cols:
        if col:
            blocks.setdefault(find(next(iter(col))), []).append(col)
    return blocks.values()


def _to_mod(a) -> int:
    a = Fraction(a)
    den = a.denominator % _PRIME
    if den == 0:
        raise ZeroDivisionError
    return a.numerator * pow(den, -1, _PRIME) % _PRIME


def _rank_block(cols: list, exact: bool) -> int:
    """Rank by column elimination; modular entries must already be ints mod the prime."""
    rank = 0
    pivots: dict = {}
    for col in cols:
        v = dict(col)
        while v:
            r = min(v)
            if r not in pivots:
                pivots[r] = v
                rank += 1
                break
            p = pivots[r]
            if exact:
                f = v[r] / p[r]
                for k, a in p.items():
                    nv = v.get(k, 0) - f * a
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
            else:
                f = v[r] * pow(p[r], -1, _PRIME) % _PRIME
                for k, a in p.items():
                    nv = (v.get(k, 0) - f * a) % _PRIME
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
    return rank


def _rank(cols: list, nrows: int, exact: bool) -> int:
    return sum(_rank_block(block, exact) for block in _components(cols, nrows))


def sparse_rank(cols: list, nrows: int, exact: bool = True) -> int:
    """Rank of a sparse matrix given as a list of {row: value} columns.

    With ``exact=False`` the rank is taken modulo a 61-bit prime, which can
    only undercount the rational rank.
    """
    if exact:
        return _rank([{r: Fraction(a) for r, a in c.items()} for c in cols], nrows, True)
    try:
        mod = [{r: m for r, a in c.items() if (m := _to_mod(a))} for c in cols]
    except ZeroDivisionError:
        return sparse_rank(cols, nrows, True)
    return _rank(mod, nrows, False)


def oracle_degrees(c: FreeComplex, bound: int) -> list:
    """Degrees d with every free coordinate in [-bound, bound] met by some strand."""
    ring = c.ring
    group = ring.class_group
    twists = {a for t in c.terms for a in t}
    torsion = list(product(*(range(m) for m in group.torsion_invariants)))
    out = []
    for free in product(range(-bound, bound + 1), repeat=group.free_rank):
        for tors in torsion:
            d = MultiDegree.of(list(free) + list(tors), group)
            if any(ring.monomials_of_degree(d - a) for a in twists):
                out.append(d)
    return sorted(out, key=lambda d: (ring.weight(d), d.sort_key()))


class _Strands:
    def __init__(self, c: FreeComplex, bound: int):
        self.c = c
        self.cache: dict = {}
        # per differential and column: (row, exponent, rational coeff, coeff mod p)
        self.entries = []
        self.modular_ok = True
        for i in range(1, len(c.terms)):
            D = c.d(i)
            percol = []
            for j in range(len(c.terms[i])):
                items = []
                for r in range(len(D)):
                    for e, coef in D[r][j].terms.items():
                        try:
                            m = _to_mod(coef)
                        except ZeroDivisionError:
                            m = None
                            self.modular_ok = False
                        items.append((r, e, coef, m))
                percol.append(items)
            self.entries.append(percol)

    def basis(self, i: int, d: MultiDegree) -> list:
        if not 0 <= i < len(self.c.terms):
            return []
        out = []
        for j, a in enumerate(self.c.terms[i]):
            for m in self.c.ring.monomials_of_degree(d - a):
                out.append((j, m))
        return out

    def matrix(self, i: int, d: MultiDegree, exact: bool = True):
        """Columns of d_i restricted to degree d, or None if some image leaves the strand."""
        src = self.basis(i, d)
        tgt = {b: k for k, b in enumerate(self.basis(i - 1, d))}
        percol = self.entries[i - 1]
        cols = []
        for j, m in src:
            col: dict = {}
            for r, e, coef, cmod in percol[j]:
                k = tgt.get((r, tuple(a + b for a, b in zip(m, e))))
                if k is None:
                    return None
                if exact:
                    v = col.get(k, 0) + coef
                else:
                    v = (col.get(k, 0) + cmod) % _PRIME
                if v:
                    col[k] = v
                else:
                    col.pop(k, None)
            cols.append(col)
        return cols, len(tgt)

    def rank(self, i: int, d: MultiDegree, exact: bool):
        exact = exact or not self.modular_ok
        k = (i, d, exact)
        if k not in self.cache:
            if i < 1 or i >= len(self.c.terms):
                self.cache[k] = 0
            else:
                m = self.matrix(i, d, exact)
                self.cache[k] = None if m is None else _rank(m[0], m[1], exact)
        return self.cache[k]


def exactness_failures(c: FreeComplex, bound: int = 6, first_only: bool = False) -> list:
    """Degrees and positions where a graded strand of ``c`` fails to be exact.

    Position 0 is never checked. A failure is reported as (degree, i, reason)
    with reason one of "not a complex", "inhomogeneous" or "homology".
    """
    ring = c.ring
    out = []
    for i in range(1, len(c.terms) - 1):
        prod = matmul(c.d(i), c.d(i + 1), ring.nvars)
        if any(p for row in prod for p in row):
            out.append((None, i, "not a complex"))
            return out
    strands = _Strands(c, bound)
    top = len(c.terms) - 1
    for d in oracle_degrees(c, bound):
        for i in range(1, top + 1):
            dim = len(strands.basis(i, d))
            if dim == 0:
                continue
            r_in = strands.rank(i, d, False)
            r_out = strands.rank(i + 1, d, False)
            failure = None
            if r_in is None or r_out is None:
                failure = (d, i if r_in is None else i + 1, "inhomogeneous")
            elif r_in + r_out != dim:
                # modular ranks may undercount; confirm over the rationals
                if strands.rank(i, d, True) + strands.rank(i + 1, d, True) != dim:
                    failure = (d, i, "homology")
            if failure:
                out.append(failure)
                if first_only:
                    return out
    return out


def truncated_exactness(c: FreeComplex, bound: int = 6) -> bool:
    """True iff every strand of degree within ``bound`` is exact away from position 0.

    Independent of how the complex was built: strand matrices are expanded
    monomial by monomial and ranked with exact arithmetic (a modular rank
    that already proves exactness is accepted, since it bounds the rational
    rank from below while d^2 = 0 bounds the sum from above).
    """
    return not exactness_failures(c, bound, first_only=True)
