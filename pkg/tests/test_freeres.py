import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import battery, pipeline
from virtres.freeres import (BettiTable, FreeComplex, betti_table, exactness_failures,
                             is_minimal, minimal_free_resolution, minimize, schreyer_resolution,
                             sparse_rank, truncated_exactness, verify_complex)
from virtres.intlat import AbelianGroupPresentation
from virtres.normalize import normalize
from virtres.polyalg import GradedPolynomialRing, MultiDegree, SubmoduleOfFree
from virtres.toricdata import defining_ideal

P112_BETTI = {
    (0, (0, 0)): 1, (0, (1, 1)): 1,
    (1, (1, 1)): 1, (1, (2, 1)): 2, (1, (1, 2)): 2,
    (2, (3, 1)): 1, (2, (2, 2)): 1, (2, (1, 3)): 1,
}


def _p112_presentation():
    e = battery()["P112"]
    S = e.ambient.ring
    I = defining_ideal(e)
    return S, normalize(S, I, e.pushout()).presentation


def reference_complex():
    """The resolution of the P(1,1,2) diagonal normalization, transcribed."""
    e = battery()["P112"]
    S = e.ambient.ring
    G = S.class_group

    def T(*a):
        return MultiDegree.of(a, G)

    d1 = [["x1*y0 - x0*y1", "x2*y0", "x2*y1", "x0*y2", "x1*y2"],
          ["0", "-x0", "-x1", "-y0", "-y1"]]
    d2 = [["-x2", "0", "-y2"],
          ["x1", "-y1", "0"],
          ["-x0", "y0", "0"],
          ["0", "-x1", "-y1"],
          ["0", "x0", "y0"]]
    terms = [[T(0, 0), T(1, 1)],
             [T(1, 1), T(2, 1), T(2, 1), T(1, 2), T(1, 2)],
             [T(3, 1), T(2, 2), T(1, 3)]]
    diffs = [[[S(p) for p in row] for row in d] for d in (d1, d2)]
    return FreeComplex(S, terms, diffs)


def koszul_xy():
    G = AbelianGroupPresentation(1, ())
    S = GradedPolynomialRing([MultiDegree.of((1,), G)] * 2, G, ["x", "y"])
    T = lambda a: MultiDegree.of((a,), G)  # noqa: E731
    return FreeComplex(S, [[T(0)], [T(1), T(1)], [T(2)]],
                       [[[S("x"), S("y")]], [[S("y")], [S("-x")]]])


def test_p112_betti_matches_reference():
    S, pres = _p112_presentation()
    F = minimal_free_resolution(pres)
    assert betti_table(F).as_dict() == P112_BETTI
    assert betti_table(F).total_ranks() == [2, 5, 3]
    assert F.length == 2
    assert is_minimal(F)
    assert verify_complex(F).ok


def test_schreyer_then_minimize():
    S, pres = _p112_presentation()
    big = schreyer_resolution(pres)
    assert verify_complex(big).composition_failures == []
    small = minimize(big)
    assert betti_table(small).as_dict() == P112_BETTI


def test_reference_complex_passes_checks():
    c = reference_complex()
    check = verify_complex(c)
    assert check.ok and check.minimal
    assert betti_table(c).as_dict() == P112_BETTI
    assert truncated_exactness(c, 6)


def test_flipped_sign_detected():
    c = reference_complex()
    c.differentials[1][0][0] = -c.differentials[1][0][0]
    check = verify_complex(c)
    assert not check.ok
    assert (1, 0, 0) in check.composition_failures
    assert not truncated_exactness(c, 6)


def test_inhomogeneous_entry_detected():
    c = reference_complex()
    S = c.ring
    c.differentials[1][0][0] = S("-x2 + x0")
    check = verify_complex(c)
    assert check.homogeneity_failures


def test_principal_ideal():
    e = battery()["P1"]
    S = e.ambient.ring
    F = pipeline("P1").resolution
    assert F.ranks() == [1, 1]
    assert [t.as_list() for t in F.terms[1]] == [[1, 1]]
    assert F.d(1)[0][0] in (S("x0*y1 - x1*y0"), S("x1*y0 - x0*y1"))


def test_p2_eagon_northcott_shape():
    F = pipeline("P2").resolution
    assert betti_table(F).as_dict() == {(0, (0, 0)): 1, (1, (1, 1)): 3,
                                        (2, (1, 2)): 1, (2, (2, 1)): 1}


def test_koszul_oracle():
    c = koszul_xy()
    assert verify_complex(c).ok
    for bound in (0, 2, 5):
        assert truncated_exactness(c, bound)


def test_minimize_removes_unit_block():
    c = koszul_xy()
    S = c.ring
    G = S.class_group
    T = lambda a: MultiDegree.of((a,), G)  # noqa: E731
    zero = S.zero()
    # append a trivial summand S(-2) -> S(-2) in positions 1 and 2
    terms = [c.terms[0], c.terms[1] + [T(2)], c.terms[2] + [T(2)]]
    d1 = [c.d(1)[0] + [zero]]
    d2 = [c.d(2)[0] + [zero], c.d(2)[1] + [zero], [zero, S.one()]]
    bigger = FreeComplex(S, terms, [d1, d2])
    assert verify_complex(bigger).ok and not is_minimal(bigger)
    small = minimize(bigger)
    assert small.ranks() == [1, 2, 1]
    assert betti_table(small) == betti_table(c)


def test_minimize_keeps_minimal():
    c = reference_complex()
    assert betti_table(minimize(c)) == betti_table(c)


def test_dropped_generator_fails_at_its_degree():
    c = reference_complex()
    dropped = c.terms[2][1]
    c.terms[2].pop(1)
    for row in c.differentials[1]:
        row.pop(1)
    assert verify_complex(c).ok
    failures = exactness_failures(c, 6, first_only=True)
    assert failures and failures[0][0] == dropped and failures[0][2] == "homology"


def test_wrong_twist_fails():
    c = reference_complex()
    c.terms[2][0] = MultiDegree.of((4, 1), c.ring.class_group)
    assert not verify_complex(c).ok
    assert not truncated_exactness(c, 6)


def test_empty_complex_betti():
    G = AbelianGroupPresentation(1, ())
    S = GradedPolynomialRing([MultiDegree.of((1,), G)], G)
    c = FreeComplex(S, [[S.zero_degree()]], [])
    assert betti_table(c).as_dict() == {(0, (0,)): 1}


@settings(max_examples=6)
@given(st.randoms(use_true_random=False))
def test_betti_independent_of_generator_order(rnd):
    S, pres = _p112_presentation()
    gens = list(pres.generators)
    rnd.shuffle(gens)
    shuffled = SubmoduleOfFree(S, pres.rank, pres.twists, gens)
    assert betti_table(minimal_free_resolution(shuffled)).as_dict() == P112_BETTI


def test_sparse_rank():
    cols = [{0: 1, 1: 2}, {0: 2, 1: 4}, {2: 3}]
    assert sparse_rank(cols, 3) == 2
    assert sparse_rank(cols, 3, exact=False) == 2
    # a multiple of the prime vanishes modularly; the exact rank sees it
    assert sparse_rank([{0: 2 ** 61 - 1}], 1) == 1
    assert sparse_rank([{0: 2 ** 61 - 1}], 1, exact=False) == 0


def test_betti_json_roundtrip():
    b = betti_table(reference_complex())
    assert BettiTable.from_dict(b.to_dict()) == b


def test_complex_dict_roundtrip():
    c = reference_complex()
    back = FreeComplex.from_dict(c.ring, c.to_dict())
    assert back.terms == c.terms and back.differentials == c.differentials


@pytest.mark.parametrize("name", ["P1", "P2", "P112", "veronese", "P1xP1"])
def test_battery_resolutions_pass_oracle(name):
    res = pipeline(name)
    assert verify_complex(res.resolution).ok
    assert res.report.truncated_exactness_ok
