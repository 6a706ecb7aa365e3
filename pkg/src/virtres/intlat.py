"""Exact integer linear algebra.

Smith and Hermite normal forms, kernels and cokernels of integer matrices,
and the pushout of the character lattice map p: M_X -> M_Y along the ray map
M_X -> Z^n. Everything uses Python integers, so there is no overflow at any
size.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NonInjectiveLatticeMap, NonSurjectiveLatticeMap


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense integer matrix stored row-major as nested tuples."""

    rows: tuple
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged integer matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None):
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]], nrows: int):
        cols = [tuple(c) for c in cols]
        return cls(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def identity(cls, n: int):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int):
        return cls(tuple((0,) * n for _ in range(m)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix.from_columns(self.rows, self.ncols)

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return IntegerMatrix(
                tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
                other.ncols,
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def submatrix(self, rows=None, cols=None) -> "IntegerMatrix":
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        return IntegerMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return IntegerMatrix(tuple(a + b for a, b in zip(self.rows, other.rows)),
                             self.ncols + other.ncols)

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in vstack")
        return IntegerMatrix(self.rows + other.rows, self.ncols)

    def __neg__(self):
        return IntegerMatrix(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Z^free_rank + Z/n_1 + ... + Z/n_t with n_1 | n_2 | ... | n_t."""

    free_rank: int
    torsion_invariants: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = self.torsion_invariants
        if any(n < 2 for n in t):
            raise ValueError("torsion invariants must be >= 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion invariants must form a divisibility chain")

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion_invariants)


def is_torsion_free(g: AbelianGroupPresentation) -> bool:
    return not g.torsion_invariants


@dataclass(frozen=True)
class Cokernel:
    """coker(A) for A: Z^k -> Z^m, with the projection Z^m -> coker.

    ``free_projection`` (free_rank x m) gives the free coordinates and is in
    Hermite normal form, so it is canonical. ``torsion_projection`` has one row
    per torsion invariant, read modulo that invariant.
    """

    group: AbelianGroupPresentation
    free_projection: IntegerMatrix
    torsion_projection: IntegerMatrix

    def project(self, v: Sequence[int]) -> tuple:
        free = self.free_projection @ v
        tors = tuple(a % n for a, n in zip(self.torsion_projection @ v,
                                           self.group.torsion_invariants))
        return free + tors


@dataclass(frozen=True)
class PushoutData:
    """M' = (Z^n + M_Y) / <(iota(m), -p(m))> with the maps q and M_Y -> M'."""

    mprime: AbelianGroupPresentation
    q_free: IntegerMatrix
    q_torsion: IntegerMatrix
    kernel_lattice: IntegerMatrix
    incl_free: IntegerMatrix
    incl_torsion: IntegerMatrix
    iota: IntegerMatrix
    p: IntegerMatrix

    def q(self, u: Sequence[int]) -> tuple:
        free = self.q_free @ u
        tors = tuple(a % n for a, n in zip(self.q_torsion @ u, self.mprime.torsion_invariants))
        return free + tors

    def incl(self, m: Sequence[int]) -> tuple:
        free = self.incl_free @ m
        tors = tuple(a % n for a, n in zip(self.incl_torsion @ m, self.mprime.torsion_invariants))
        return free + tors


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: IntegerMatrix):
    """Return (D, U, V) with D = U @ A @ V diagonal and d_1 | d_2 | ...

    Pivoting always moves the smallest nonzero entry (in absolute value) of
    the active block into pivot position. U and V are unimodular.
    """
    m, n = A.shape
    D = [list(r) for r in A.rows]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for M in (D, V):
                for r in M:
                    r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for M in (D, V):
            for r in M:
                r[dst] += c * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = D[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            piv = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // piv))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // piv))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return (IntegerMatrix.from_rows(D, n), IntegerMatrix.from_rows(U, m),
            IntegerMatrix.from_rows(V, n))


def invariant_factors(A: IntegerMatrix) -> list:
    D, _, _ = smith_normal_form(A)
    return [D[i, i] for i in range(min(A.shape)) if D[i, i]]


def rank(A: IntegerMatrix) -> int:
    return len(invariant_factors(A))


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int | None = None) -> list:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: pivots positive and strictly increasing in
    column, entries above a pivot reduced into [0, pivot).
    """
    M = [list(r) for r in rows]
    if not M:
        return []
    ncols = len(M[0]) if ncols is None else ncols
    m = len(M)
    pr = 0
    for col in range(ncols):
        if pr == m:
            break
        found = False
        while True:
            nz = [i for i in range(pr, m) if M[i][col]]
            if not nz:
                break
            found = True
            i0 = min(nz, key=lambda i: (abs(M[i][col]), i))
            M[pr], M[i0] = M[i0], M[pr]
            piv = M[pr][col]
            clean = True
            for i in range(pr + 1, m):
                if M[i][col]:
                    c = M[i][col] // piv
                    M[i] = [a - c * b for a, b in zip(M[i], M[pr])]
                    if M[i][col]:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if M[pr][col] < 0:
            M[pr] = [-a for a in M[pr]]
        piv = M[pr][col]
        for i in range(pr):
            c = M[i][col] // piv
            if c:
                M[i] = [a - c * b for a, b in zip(M[i], M[pr])]
        pr += 1
    return [tuple(r) for r in M[:pr]]


def kernel_basis(A: IntegerMatrix) -> IntegerMatrix:
    """Lattice basis of ker A, one basis vector per column, in row-HNF."""
    D, _, V = smith_normal_form(A)
    r = sum(1 for i in range(min(A.shape)) if D[i, i])
    vecs = [V.column(j) for j in range(r, A.ncols)]
    vecs = hermite_normal_form(vecs, A.ncols)
    return IntegerMatrix.from_columns(vecs, A.ncols)


def cokernel_presentation(A: IntegerMatrix) -> Cokernel:
    """coker of A: Z^cols -> Z^rows."""
    m = A.nrows
    D, U, _ = smith_normal_form(A)
    diag = [D[i, i] for i in range(min(A.shape))]
    r = sum(1 for d in diag if d)
    free_rows = hermite_normal_form([U.rows[i] for i in range(r, m)], m)
    tors_idx = [i for i in range(r) if diag[i] > 1]
    torsion = tuple(diag[i] for i in tors_idx)
    tors_rows = [tuple(a % diag[i] for a in U.rows[i]) for i in tors_idx]
    return Cokernel(
        AbelianGroupPresentation(m - r, torsion),
        IntegerMatrix.from_rows(free_rows, m),
        IntegerMatrix.from_rows(tors_rows, m),
    )


def is_saturated(basis: IntegerMatrix) -> bool:
    """True iff the column span of ``basis`` equals its rational span cut with Z^n."""
    return all(d == 1 for d in invariant_factors(basis))


def pushout_cox(iota: IntegerMatrix, p: IntegerMatrix) -> PushoutData:
    """Pushout of p: M_X -> M_Y along iota: M_X -> Z^n.

    ``iota`` is n x dim M_X (rows are the rays), ``p`` is dim M_Y x dim M_X.
    """
    n, dx = iota.shape
    dy = p.nrows
    if p.ncols != dx:
        raise ValueError(f"p has {p.ncols} columns, expected {dx}")
    if rank(iota) != dx:
        raise NonInjectiveLatticeMap("rays do not span the lattice N_R")
    fp = invariant_factors(p)
    if len(fp) != dy or any(d != 1 for d in fp):
        raise NonSurjectiveLatticeMap(
            f"p: Z^{dx} -> Z^{dy} is not onto (invariant factors {fp})")
    relations = iota.vstack(-p)
    cok = cokernel_presentation(relations)
    # L = ker q = iota(ker p)
    kp = kernel_basis(p)
    L = [iota @ c for c in kp.columns()]
    L = hermite_normal_form(L, n)
    return PushoutData(
        mprime=cok.group,
        q_free=cok.free_projection.submatrix(cols=range(n)),
        q_torsion=cok.torsion_projection.submatrix(cols=range(n)),
        kernel_lattice=IntegerMatrix.from_columns(L, n),
        incl_free=cok.free_projection.submatrix(cols=range(n, n + dy)),
        incl_torsion=cok.torsion_projection.submatrix(cols=range(n, n + dy)),
        iota=iota,
        p=p,
    )


def section(qfree: IntegerMatrix) -> IntegerMatrix:
    """Integer right inverse s of a surjective q (q @ s = identity)."""
    r = qfree.nrows
    D, U, V = smith_normal_form(qfree)
    if any(D[i, i] != 1 for i in range(r)):
        raise NonSurjectiveLatticeMap("map is not onto; no integral section")
    # q = U^-1 D V^-1 with D = [I 0]; s = V[:, :r] U
    return V.submatrix(cols=range(r)) @ U


def solve_integer(A: IntegerMatrix, b: Sequence[int]):
    """An integer x with A x = b, or None if there is none."""
    D, U, V = smith_normal_form(A)
    c = U @ tuple(b)
    y = [0] * A.ncols
    for i, ci in enumerate(c):
        dii = D[i, i] if i < min(D.shape) else 0
        if dii == 0:
            if ci:
                return None
        elif ci % dii:
            return None
        else:
            y[i] = ci // dii
    return V @ tuple(y)
