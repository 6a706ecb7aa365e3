"""Fans, Cox rings, toric embeddings and their defining ideals."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .errors import (InconsistentDimensions, InvalidFan, NonPositiveGrading, NotSimplicial,
                     TorsionClassGroupUnsupported)
from .intlat import (AbelianGroupPresentation, IntegerMatrix, PushoutData,
                     cokernel_presentation, is_torsion_free, pushout_cox, rank)
from .polyalg import GradedPolynomialRing, Ideal, MultiDegree, Polynomial, krull_dimension
from .polyalg.grading import check_positive_grading
from .polyalg.ideal import lattice_ideal


@dataclass(frozen=True)
class Fan:
    """A simplicial fan given by rays and maximal cones (sets of ray indices)."""

    lattice_rank: int
    rays: tuple
    max_cones: tuple
    names: tuple = None

    def __init__(self, lattice_rank: int, rays: Sequence[Sequence[int]],
                 max_cones: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        rays = tuple(tuple(int(a) for a in r) for r in rays)
        cones = tuple(tuple(sorted(set(int(i) for i in c))) for c in max_cones)
        object.__setattr__(self, "lattice_rank", int(lattice_rank))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if names is None:
            names = tuple(f"x{i}" for i in range(len(rays)))
        object.__setattr__(self, "names", tuple(names))
        self._validate()

    def _validate(self):
        for r in self.rays:
            if len(r) != self.lattice_rank:
                raise InvalidFan(f"ray {r} does not live in Z^{self.lattice_rank}")
            g = 0
            for a in r:
                g = gcd(g, a)
            if g != 1:
                raise InvalidFan(f"ray {r} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise InvalidFan("rays must be distinct")
        if len(self.names) != len(self.rays):
            raise InvalidFan("one variable name per ray required")
        for c in self.max_cones:
            for i in c:
                if not 0 <= i < len(self.rays):
                    raise InvalidFan(f"cone {c} references missing ray {i}")
            if c and rank(IntegerMatrix.from_rows([self.rays[i] for i in c])) != len(c):
                raise NotSimplicial(f"rays of cone {c} are linearly dependent")

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def ray_matrix(self) -> IntegerMatrix:
        """The map M -> Z^rays, m -> (<m, u_rho>)_rho."""
        return IntegerMatrix.from_rows(self.rays, self.lattice_rank) if self.rays \
            else IntegerMatrix.zeros(0, self.lattice_rank)


def point_fan() -> Fan:
    return Fan(0, [], [[]])


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    cones = [[j for j in range(n + 1) if j != i] for i in range(n + 1)]
    return Fan(n, rays, cones)


def product_fan(f1: Fan, f2: Fan) -> Fan:
    """Fan of the product; variables of the first factor come first.

    Variable names become x_i for the first factor and y_i for the second,
    unless one factor is the point fan (then the other's names are kept).
    """
    d1, d2 = f1.lattice_rank, f2.lattice_rank
    rays = [r + (0,) * d2 for r in f1.rays] + [(0,) * d1 + r for r in f2.rays]
    n1 = f1.nrays
    cones = [c1 + tuple(n1 + j for j in c2) for c1 in f1.max_cones for c2 in f2.max_cones]
    if not f2.rays:
        names = f1.names
    elif not f1.rays:
        names = f2.names
    else:
        names = tuple(f"x{i}" for i in range(n1)) + tuple(f"y{i}" for i in range(f2.nrays))
    return Fan(d1 + d2, rays, cones, names)


@dataclass
class CoxData:
    fan: Fan
    ring: GradedPolynomialRing
    irrelevant_ideal: Ideal
    class_group: AbelianGroupPresentation
    iota: IntegerMatrix
    degree_matrix: IntegerMatrix = field(repr=False)

    @property
    def nvars(self) -> int:
        return self.ring.nvars


def cox_data(fan: Fan) -> CoxData:
    """Cox ring of the toric variety of ``fan`` with its class group grading."""
    iota = fan.ray_matrix()
    cok = cokernel_presentation(iota)
    group = cok.group
    n = fan.nrays
    degs = [MultiDegree.of(cok.free_projection.column(i) + cok.torsion_projection.column(i), group)
            for i in range(n)]
    ring = GradedPolynomialRing(degs, group, fan.names)
    if not check_positive_grading(ring):
        raise NonPositiveGrading(
            "the Cox ring is not positively graded (is the fan complete/projective?)")
    B = []
    for c in fan.max_cones:
        e = tuple(0 if i in c else 1 for i in range(n))
        B.append(Polynomial.monomial(e))
    degree_matrix = cok.free_projection.vstack(cok.torsion_projection)
    return CoxData(fan, ring, Ideal(ring, B), group, iota, degree_matrix)


@dataclass
class ToricEmbedding:
    """A toric morphism Y -> X given by a surjection p: M_X -> M_Y.

    The closed-immersion property is taken on trust.
    """

    ambient: CoxData
    domain_lattice_rank: int
    p: IntegerMatrix
    _pushout: PushoutData = field(default=None, repr=False)

    @property
    def dim_X(self) -> int:
        return self.ambient.fan.lattice_rank

    @property
    def dim_Y(self) -> int:
        return self.domain_lattice_rank

    def pushout(self) -> PushoutData:
        if self._pushout is None:
            self._pushout = pushout_cox(self.ambient.iota, self.p)
        return self._pushout


def embedding(ambient_fan: Fan, domain_rank: int, p: Sequence[Sequence[int]]) -> ToricEmbedding:
    P = IntegerMatrix.from_rows(p, ambient_fan.lattice_rank) if domain_rank \
        else IntegerMatrix.zeros(0, ambient_fan.lattice_rank)
    if P.nrows != domain_rank:
        raise ValueError(f"p must have {domain_rank} rows")
    return ToricEmbedding(cox_data(ambient_fan), domain_rank, P)


def identity_embedding(fan: Fan) -> ToricEmbedding:
    d = fan.lattice_rank
    return embedding(fan, d, IntegerMatrix.identity(d).rows)


def diagonal_embedding(fan: Fan) -> ToricEmbedding:
    """X embedded diagonally in X x X: p(m1, m2) = m1 + m2."""
    d = fan.lattice_rank
    p = [tuple(int(i == j) for j in range(d)) * 2 for i in range(d)]
    return embedding(product_fan(fan, fan), d, p)


def require_torsion_free(po: PushoutData) -> None:
    if not is_torsion_free(po.mprime):
        raise TorsionClassGroupUnsupported(po.mprime.torsion_invariants)


def defining_ideal(e: ToricEmbedding) -> Ideal:
    """Lattice ideal of L = ker(q: Z^rays -> M'); prime since M' is torsion-free."""
    po = e.pushout()
    require_torsion_free(po)
    return lattice_ideal(e.ambient.ring, po.kernel_lattice.columns())


def codim(e: ToricEmbedding, ideal: Ideal | None = None) -> int:
    """rank L, checked against dim X - dim Y and dim S - dim S/I."""
    po = e.pushout()
    rank_l = po.kernel_lattice.ncols
    I = defining_ideal(e) if ideal is None else ideal
    via_ideal = e.ambient.nvars - krull_dimension(I)
    via_dims = e.dim_X - e.dim_Y
    if not rank_l == via_ideal == via_dims:
        raise InconsistentDimensions(
            f"rank L = {rank_l}, dim S - dim S/I = {via_ideal}, dim X - dim Y = {via_dims}")
    return rank_l
