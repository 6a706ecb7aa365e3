import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from virtres.errors import UnitIdeal, ZeroDivisorInput
from virtres.intlat import AbelianGroupPresentation
from virtres.polyalg import (DEFAULT_ORDER, GradedPolynomialRing, Ideal, MonomialOrder,
                             MultiDegree, Polynomial, PolynomialRing, SubmoduleOfFree,
                             check_positive_grading, eliminate, groebner_basis, krull_dimension,
                             lattice_ideal, minimal_generators, parse_polynomial, saturate,
                             saturate_by_variables, syzygy_module)
from virtres.polyalg import groebner as gb
from virtres.polyalg.orders import ideal_term_key

R3 = PolynomialRing(3, ["x", "y", "z"])
SYMS = sympy.symbols("x y z")


def to_sympy(f: Polynomial, names=("x", "y", "z")):
    return sympy.sympify(f.to_str(list(names)).replace("^", "**"))


def sympy_gb(polys, names=("x", "y", "z")):
    syms = sympy.symbols(" ".join(names))
    G = sympy.groebner([to_sympy(p, names) for p in polys], *syms, order="grevlex")
    return {sympy.expand(g / sympy.Poly(g, *syms).LC(order="grevlex")) for g in G.exprs}


def test_parse_and_format_roundtrip():
    f = R3("x^2*y - 3/2*z + 1")
    assert f == parse_polynomial(R3.format(f), R3.names)
    assert R3("(x + y)^2") == R3("x^2 + 2*x*y + y^2")
    assert R3("x - x").is_zero()


def test_arithmetic():
    x, y, z = R3.gens()
    assert (x + y) * (x - y) == x * x - y * y
    assert (x + 1) ** 3 == R3("x^3 + 3*x^2 + 3*x + 1")
    assert (2 * x) / 2 == x
    assert x.total_degree() == 1 and R3.one().is_constant()


def test_degrevlex_matches_sympy_leading_term():
    f = R3("x*z^2 + y^3 + x^2*y")
    lt = f.leading_term(DEFAULT_ORDER)[0]
    spoly = sympy.Poly(to_sympy(f), *SYMS)
    assert spoly.monoms(order="grevlex")[0] == lt


@pytest.mark.parametrize("gens", [
    ["x^2 - y", "x*y - z"],
    ["x*y - z^2", "x^2 - y*z", "y^2 - x*z"],
    ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
    ["x + y + z", "x*y + y*z + x*z", "x*y*z - 1"],
])
def test_groebner_matches_sympy(gens):
    polys = [R3(g) for g in gens]
    ours = groebner_basis(polys)
    assert {sympy.expand(to_sympy(g)) for g in ours} == sympy_gb(polys)
    key = ideal_term_key(DEFAULT_ORDER)
    assert gb.is_groebner([gb.poly_to_vector(g) for g in ours], key)


def test_lex_groebner_matches_sympy():
    polys = [R3("x^2 + y^2 + z^2 - 1"), R3("x - y"), R3("y - z^2")]
    ours = groebner_basis(polys, MonomialOrder.lex())
    G = sympy.groebner([to_sympy(p) for p in polys], *SYMS, order="lex")
    theirs = {sympy.expand(g / sympy.Poly(g, *SYMS).LC(order="lex")) for g in G.exprs}
    assert {sympy.expand(to_sympy(g)) for g in ours} == theirs


binomial_ideals = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.tuples(*[st.integers(0, 2)] * 3)),
    min_size=1, max_size=4)


@settings(max_examples=30)
@given(binomial_ideals, st.randoms(use_true_random=False))
def test_groebner_unique_under_permutation(pairs, rnd):
    polys = [Polynomial.binomial(a, b) for a, b in pairs if a != b]
    if not polys:
        return
    G = groebner_basis(polys)
    shuffled = list(polys)
    rnd.shuffle(shuffled)
    assert groebner_basis(shuffled) == G
    key = ideal_term_key(DEFAULT_ORDER)
    assert gb.is_groebner([gb.poly_to_vector(g) for g in G], key)


def test_membership_and_equality():
    I = Ideal(R3, ["x*y - z^2", "x^2 - y*z"])
    assert I.contains(R3("x*(x*y - z^2) + z*(x^2 - y*z)"))
    assert not I.contains(R3("x"))
    assert I == Ideal(R3, ["x^2 - y*z", "x*y - z^2"])


def test_saturation():
    I = Ideal(R3, ["x^2*y", "x*z"])
    J = saturate(I, R3("x"))
    assert J == Ideal(R3, ["y", "z"])
    with pytest.raises(ZeroDivisorInput):
        saturate(I, R3.zero())


@settings(max_examples=20)
@given(binomial_ideals, st.integers(0, 2))
def test_saturation_idempotent(pairs, var):
    polys = [Polynomial.binomial(a, b) for a, b in pairs if a != b]
    if not polys:
        return
    f = Polynomial.var(var, 3)
    J = saturate(Ideal(R3, polys), f)
    assert saturate(J, f) == J


def test_elimination():
    I = Ideal(R3, ["x - y^2", "z - y^3"])
    E = eliminate(I, [1])
    assert E == Ideal(R3, ["x^3 - z^2"])


def test_twisted_cubic_lattice_ideal():
    # kernel of (a, b, c) -> a + 2b + 3c inside a 4-variable ring
    S = PolynomialRing(4, ["a", "b", "c", "d"])
    L = [(1, -2, 1, 0), (0, 1, -2, 1)]
    I = lattice_ideal(S, L)
    expected = Ideal(S, ["a*c - b^2", "b*d - c^2", "a*d - b*c"])
    assert I == expected
    assert krull_dimension(I) == 2


def _random_unimodular(n, rnd):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rnd.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        k = rnd.choice([-1, 1])
        M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    return M


def test_lattice_ideal_basis_independent_p2():
    S = PolynomialRing(6)
    basis = [(1, -1, 0, -1, 1, 0), (1, 0, -1, -1, 0, 1)]
    base = lattice_ideal(S, basis)
    rnd = random.Random(7)
    for _ in range(5):
        U = _random_unimodular(2, rnd)
        new = [tuple(sum(U[i][k] * basis[k][j] for k in range(2)) for j in range(6))
               for i in range(2)]
        assert lattice_ideal(S, new) == base


def test_krull_dimension_edge_cases():
    assert krull_dimension(Ideal(R3, [])) == 3
    assert krull_dimension(Ideal(R3, ["x", "y", "z"])) == 0
    with pytest.raises(UnitIdeal):
        krull_dimension(Ideal(R3, ["x", "x + 1"]))


def _z2_ring():
    group = AbelianGroupPresentation(2, ())
    degs = [MultiDegree.of(d, group) for d in [(1, 0), (1, 0), (0, 1), (0, 1)]]
    return GradedPolynomialRing(degs, group, ["x0", "x1", "y0", "y1"])


def test_grading():
    S = _z2_ring()
    f = S("x0*y1 - x1*y0")
    assert S.homogeneous_degree(f) == MultiDegree.of((1, 1), S.class_group)
    assert not S.is_homogeneous(S("x0 + y0"))
    assert len(S.monomials_of_degree(MultiDegree.of((2, 1), S.class_group))) == 6
    assert S.monomials_of_degree(MultiDegree.of((-1, 0), S.class_group)) == []
    assert check_positive_grading(S)


def test_non_positive_grading():
    group = AbelianGroupPresentation(1, ())
    S = GradedPolynomialRing([MultiDegree.of((1,), group), MultiDegree.of((-1,), group)], group)
    assert not check_positive_grading(S)


@settings(max_examples=20)
@given(st.lists(st.tuples(st.tuples(*[st.integers(0, 2)] * 4),
                          st.tuples(*[st.integers(0, 2)] * 4)), min_size=1, max_size=3))
def test_groebner_of_homogeneous_is_homogeneous(pairs):
    S = _z2_ring()
    polys = []
    for a, b in pairs:
        da, db = S.degree_of_exponent(a), S.degree_of_exponent(b)
        if da == db and a != b:
            polys.append(Polynomial.binomial(a, b))
    for g in groebner_basis(polys):
        assert S.is_homogeneous(g)


def test_koszul_syzygies():
    S = _z2_ring()
    zero = S.zero_degree()
    m = SubmoduleOfFree(S, 1, [zero], [(S("x0"),), (S("y0"),)])
    syz = syzygy_module(m)
    assert len(syz.generators) == 1
    (a, b), = syz.generators
    assert a * S("x0") + b * S("y0") == 0
    assert {S.format(a), S.format(b)} in ({"y0", "-x0"}, {"-y0", "x0"})


def test_minimal_generators_drops_redundant():
    S = _z2_ring()
    zero = S.zero_degree()
    m = SubmoduleOfFree(S, 1, [zero], [(S("x0"),), (S("x0*y0"),), (S("x1"),)])
    assert len(minimal_generators(m).generators) == 2


def test_module_groebner_basis_contains():
    S = _z2_ring()
    zero = S.zero_degree()
    shift = MultiDegree.of((1, -1), S.class_group)
    m = SubmoduleOfFree(S, 2, [zero, shift], [(S("x0"), S("y0")), (S("x1"), S("y1"))])
    assert m.contains((S("x0*x1 + x1^2"), S("x1*y0 + x1*y1")))
    assert not m.contains((S("x0"), S("0")))
    assert m.is_homogeneous()


def test_fraction_coefficients():
    f = R3("1/3*x - 2/3")
    assert f.terms[(1, 0, 0)] == Fraction(1, 3)
