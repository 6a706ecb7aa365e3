"""Virtuality checks: the normalization R resolves S/I up to B-torsion.

The minimal free resolution F of R = k[Q^sat] is a virtual resolution of
S/I when the cokernel Q of S/I -> R is annihilated by a power of the
irrelevant ideal B, i.e. when Q sheafifies to zero.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Sequence

from .errors import CapExceeded, VirtresError
from .freeres import FreeComplex, minimal_free_resolution, truncated_exactness, verify_complex
from .intlat import IntegerMatrix, invariant_factors, smith_normal_form, solve_integer
from .normalize import NormalizationData, normalize
from .polyalg import Ideal, Polynomial, SubmoduleOfFree
from .polyalg import groebner as gb
from .polyalg.orders import DEFAULT_ORDER, top_term_key
from .toricdata import ToricEmbedding, codim, defining_ideal

DEFAULT_TORSION_CAP = 8
DEFAULT_ORACLE_BOUND = 6

NON_CARTIER_NOTE = (
    "ambient fan is not smooth: some twists may fail to be Cartier, so the "
    "sheafified complex need not consist of locally free sheaves")


@dataclass
class VerificationReport:
    resolution_length: int | None
    codim: int | None
    lengths_equal: bool
    b_torsion_ok: bool
    truncated_exactness_ok: bool
    b_torsion_exponent: int | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lengths_equal and self.b_torsion_ok and self.truncated_exactness_ok

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(**{**d, "notes": list(d.get("notes", []))})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


def quotient_module(S, I: Ideal, normdata: NormalizationData) -> SubmoduleOfFree:
    """Presentation of Q = R / (S/I), the image of the generator 1 struck out.

    The generator of degree zero (the zero vector of Q^sat) is always listed
    first; dropping its column from every relation presents Q.
    """
    pres = normdata.presentation
    if not normdata.module_generators or any(normdata.module_generators[0]):
        raise ValueError("the first module generator must be the unit 1")
    rels = [g[1:] for g in pres.generators]
    return SubmoduleOfFree(S, pres.rank - 1, pres.twists[1:], rels)


def _relations_basis(Qmod: SubmoduleOfFree):
    key = top_term_key(DEFAULT_ORDER)
    return gb.groebner(Qmod.vectors(), key), key


def annihilates(Qmod: SubmoduleOfFree, f: Polynomial) -> bool:
    """True when f kills every generator of Qmod."""
    G, key = _relations_basis(Qmod)
    for j in range(Qmod.rank):
        v = {(j, e): c for e, c in f.terms.items()}
        if v and gb.normal_form(v, G, key):
            return False
    return True


def _patch_lattice(ring, support):
    """Columns spanning the subgroup of Cl generated by the degrees of ``support``."""
    group = ring.class_group
    r = group.free_rank
    cols = [tuple(ring.degrees[i].as_list()) for i in support]
    for k, m in enumerate(group.torsion_invariants):
        cols.append(tuple(m if t == r + k else 0 for t in range(group.ngens)))
    return IntegerMatrix.from_columns(cols, group.ngens)


def _patch_order(A: IntegerMatrix, v: Sequence[int], limit: int) -> int:
    for t in range(1, limit + 1):
        if solve_integer(A, tuple(t * a for a in v)) is not None:
            return t
    raise ValueError("degree has infinite order modulo the patch subgroup")


def patch_generators(Qmod: SubmoduleOfFree, b: Polynomial) -> list:
    """Terms mu*e_j generating the part of Qmod in degrees that are units on D(b).

    On the patch D(b) only degrees in the subgroup G_b spanned by the degrees
    of the variables dividing b contribute degree-zero sections. Any element
    of Qmod with degree in G_b is an S-combination (through the Veronese
    subring of degrees in G_b) of mu*e_j where mu uses each remaining
    variable fewer times than the order of its degree modulo G_b.
    """
    ring = Qmod.ring
    (e,) = b.terms
    support = [i for i, a in enumerate(e) if a]
    A = _patch_lattice(ring, support)
    D, _, _ = smith_normal_form(A)
    diag = [D[i, i] for i in range(min(D.shape)) if D[i, i]]
    if len(diag) < ring.class_group.free_rank:
        raise ValueError("patch subgroup has infinite index; is the fan complete?")
    index = 1
    for d in diag:
        index *= abs(d)
    free_vars = [i for i in range(ring.nvars) if i not in support]
    orders = [_patch_order(A, ring.degrees[i].as_list(), index) for i in free_vars]
    out = []
    for j, tw in enumerate(Qmod.twists):
        for exps in product(*(range(o) for o in orders)):
            mu = [0] * ring.nvars
            for i, a in zip(free_vars, exps):
                mu[i] = a
            deg = ring.degree_of_exponent(mu) + tw
            if solve_integer(A, deg.as_list()) is not None:
                out.append((j, tuple(mu)))
    return out


def b_torsion_exponents(Qmod: SubmoduleOfFree, B: Ideal, cap: int = DEFAULT_TORSION_CAP,
                        patchwise: bool = True) -> list:
    """For each generator b of B, the least N <= cap certifying Qmod~ = 0 on D(b).

    With ``patchwise`` (the default) b^N must kill every generator from
    :func:`patch_generators`, i.e. the degree-zero part of the localization
    Qmod_b vanishes. Without it b^N must kill all of Qmod (strict B-torsion),
    which is sufficient but not necessary when X is not smooth. A constant
    generator (B the unit ideal) imposes no condition and gets 0. Raises
    CapExceeded naming the first generator with no witness.
    """
    if Qmod.rank == 0:
        return [0] * len(B.generators)
    G, key = _relations_basis(Qmod)
    out = []
    for b in B.generators:
        if not b.is_monomial():
            raise ValueError("B must be generated by monomials")
        if b.is_constant():
            out.append(0)
            continue
        (e,) = b.terms
        if patchwise:
            terms = patch_generators(Qmod, b)
        else:
            terms = [(j, (0,) * len(e)) for j in range(Qmod.rank)]
        need = 0
        for j, mu in terms:
            for N in range(0, cap + 1):
                t = (j, tuple(a * N + m for a, m in zip(e, mu)))
                if not gb.normal_form({t: 1}, G, key):
                    need = max(need, N)
                    break
            else:
                raise CapExceeded(Qmod.ring.format(b), cap)
        out.append(need)
    return out


def is_b_torsion(Qmod: SubmoduleOfFree, B: Ideal, cap: int = DEFAULT_TORSION_CAP,
                 patchwise: bool = True) -> bool:
    """True when the sheaf of Qmod vanishes, certified generator by generator of B.

    See :func:`b_torsion_exponents`; ``patchwise=False`` asks for strict
    module-level B-torsion instead.
    """
    b_torsion_exponents(Qmod, B, cap, patchwise)
    return True


def _is_smooth(fan) -> bool:
    for c in fan.max_cones:
        if not c:
            continue
        M = IntegerMatrix.from_rows([fan.rays[i] for i in c])
        if any(abs(d) != 1 for d in invariant_factors(M)):
            return False
    return True


@dataclass
class PipelineResult:
    """Everything computed for one embedding."""

    embedding: ToricEmbedding
    ideal: Ideal
    normalization: NormalizationData
    resolution: FreeComplex
    quotient: SubmoduleOfFree
    report: VerificationReport


def run_pipeline(e: ToricEmbedding, oracle_bound: int = DEFAULT_ORACLE_BOUND,
                 torsion_cap: int = DEFAULT_TORSION_CAP, skip_oracle: bool = False) -> PipelineResult:
    """defining ideal -> normalization -> minimal resolution -> checks.

    A torsion class group aborts (the precondition fails); an inconclusive
    torsion search or a failed check is recorded in the report notes.
    """
    S = e.ambient.ring
    I = defining_ideal(e)
    notes = []
    try:
        c = codim(e, I)
    except VirtresError as exc:
        notes.append(f"codim: {exc}")
        c = None
    nd = normalize(S, I, e.pushout())
    F = minimal_free_resolution(nd.presentation)
    length = F.length
    check = verify_complex(F)
    if not check.ok:
        notes.append(f"complex check failed: {check}")
    if skip_oracle:
        exact = check.ok
        notes.append("truncated exactness oracle skipped")
    else:
        exact = check.ok and truncated_exactness(F, oracle_bound)
    Q = quotient_module(S, I, nd)
    exponent = None
    try:
        exps = b_torsion_exponents(Q, e.ambient.irrelevant_ideal, torsion_cap)
        exponent = max(exps, default=0)
        torsion_ok = True
        try:
            b_torsion_exponents(Q, e.ambient.irrelevant_ideal, torsion_cap, patchwise=False)
        except CapExceeded as exc:
            notes.append(f"Q is not B-torsion as a module ({exc}); its sheaf still "
                         "vanishes since every patch has zero degree-zero part")
    except CapExceeded as exc:
        notes.append(f"B-torsion inconclusive: {exc}")
        torsion_ok = False
    if Q.rank == 0:
        notes.append("S/I is normal: R = S/I and Q = 0")
    if not _is_smooth(e.ambient.fan):
        notes.append(NON_CARTIER_NOTE)
    report = VerificationReport(
        resolution_length=length, codim=c, lengths_equal=(c is not None and length == c),
        b_torsion_ok=torsion_ok, truncated_exactness_ok=bool(exact),
        b_torsion_exponent=exponent, notes=notes)
    return PipelineResult(e, I, nd, F, Q, report)


def check_theorem(e: ToricEmbedding, oracle_bound: int = DEFAULT_ORACLE_BOUND,
                  torsion_cap: int = DEFAULT_TORSION_CAP,
                  skip_oracle: bool = False) -> VerificationReport:
    return run_pipeline(e, oracle_bound, torsion_cap, skip_oracle).report
