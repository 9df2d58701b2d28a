import random
from fractions import Fraction

import pytest

from graded_workbench import graded as G
from graded_workbench.exact import span, subspace_equal, subspace_intersect
from graded_workbench.groups import make_cyclic
from graded_workbench.matrix_units import graded_matrix_ring, matrix_of

M3 = [[0, 0, 1], [0, 0, 1], [1, 1, 0]]


@pytest.fixture(scope="module")
def m3():
    return graded_matrix_ring(make_cyclic(2), M3, "m3")


def _group_ring(n):
    """Q[Z_n] written directly as a graded presentation."""
    grp = make_cyclic(n)
    labels = {g: [f"u{g}"] for g in grp.elements()}
    return G.GradedRing.from_basis_product(grp, labels, lambda g, i, h, j: [1], [1], f"Q[Z{n}]")


def _trivially_graded_q():
    # Q concentrated in degree 0 of Z2: graded but not strongly graded
    grp = make_cyclic(2)
    return G.GradedRing.from_basis_product(grp, {0: ["1"], 1: []}, lambda g, i, h, j: [1], [1])


def test_m3_components_as_displayed(m3):
    assert m3.labels[0] == ("E11", "E12", "E21", "E22", "E33")
    assert m3.labels[1] == ("E13", "E23", "E31", "E32")
    assert G.validate_graded(m3) == []


def test_matrix_product_matches(m3):
    rng = random.Random(3)
    x = G.random_element(m3, rng)
    y = G.random_element(m3, rng)
    a, b = matrix_of(m3, x, 3), matrix_of(m3, y, 3)
    ab = [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert matrix_of(m3, m3.mul(x, y), 3) == ab


def test_degree_clash_rejected():
    with pytest.raises(G.GradingError):
        graded_matrix_ring(make_cyclic(2), [[0, 1, 1], [0, 0, 1], [1, 1, 0]])


def test_json_roundtrip(m3):
    back = G.GradedRing.from_json(m3.to_json())
    assert back.to_json() == m3.to_json()


def test_validate_catches_bad_unity():
    grp = make_cyclic(1)
    # basis {1, a} with a*1 = 0, so the declared unity is only a left identity
    table = {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 0], (1, 1): [1, 1]}
    r = G.GradedRing.from_basis_product(grp, {0: ["1", "a"]}, lambda g, i, h, j: table[(i, j)], [1, 0])
    assert any(msg.startswith("unity") for msg in G.validate_graded(r))


def test_strong_gradation(m3):
    assert G.is_strongly_graded(m3)
    assert G.is_strongly_graded(_group_ring(3))
    weak = G.is_strongly_graded(_trivially_graded_q())
    assert not weak and weak.certificate[(1, 1)]["product_dim"] == 0


def test_partitions_of_unity(m3):
    for g in (0, 1):
        for variant in (0, 1):
            assert G.partition_of_unity(m3, g, variant).verify(m3)
    with pytest.raises(G.GradingError):
        G.partition_of_unity(_trivially_graded_q(), 1)


def test_commutants(m3):
    cre = G.neutral_commutant(m3)
    assert subspace_equal(cre, G.center_of_neutral(m3)) and cre.dim == 2
    assert G.center(m3).dim == 1
    assert G.commutant_of_center_of_neutral(m3).dim == 5


def test_canonical_action(m3):
    zre = G.center_of_neutral(m3)
    e1 = zre.basis[0]
    img = G.canonical_action(m3, 1, e1)
    # sigma_1 swaps the two primitive idempotents of Z(R_0)
    assert img != e1 and G.canonical_action(m3, 1, img) == e1
    with pytest.raises(G.NotInCommutant):
        G.canonical_action(m3, 1, m3.basis_vector(0, 1))


def test_canonical_action_properties(m3):
    for r in (m3, _group_ring(4)):
        props = G.verify_canonical_action_properties(r)
        assert props["i_relation"] and props["ii_action"] and props["iii_fixed_is_center"], props["failures"]


def test_ideal_closure(m3):
    e31 = m3.basis_vector(1, m3.labels[1].index("E31"))
    assert G.ideal_closure(m3, [e31]).is_full()
    aug = G.ideal_closure(_group_ring(3), [(Fraction(1), Fraction(-1), Fraction(0))])
    assert aug.dim == 2 and G.is_ideal(_group_ring(3), aug)


def test_sampled_ideals_meet_commutant(m3):
    czre = G.commutant_of_center_of_neutral(m3)
    for _, ideal in G.sample_ideals(m3, 20, seed=5):
        assert G.is_ideal(m3, ideal)
        assert not subspace_intersect(ideal, czre).is_zero()


def test_invertibility(m3):
    v1 = G.has_invertible_homogeneous(m3, 1)
    assert not v1.invertible and v1.method == "exact-symbolic" and v1.determinant.is_zero()
    v0 = G.has_invertible_homogeneous(m3, 0)
    assert v0.invertible and m3.mul(v0.witness, v0.inverse) == m3.unity
    assert not G.is_crossed_product(m3)
    assert G.is_crossed_product(_group_ring(3))


def test_annihilator(m3):
    assert G.annihilator_check(m3, samples=20, seed=1)["pass"]


def test_split_idempotents(m3):
    zre = G.center_of_neutral(m3)
    idems = G.split_idempotents(m3, zre)
    assert len(idems) == 2
    assert all(m3.mul(e, e) == e for e in idems)
    assert subspace_equal(span(idems, m3.dim), zre)
    res = G.subalgebra_g_simplicity(m3, zre)
    assert res["decided"] and res["g_simple"] and res["permutations"]["1"] == [1, 0]


def test_rational_roots():
    # (z - 1/2)(z + 3) = z^2 + 5/2 z - 3/2
    assert sorted(G.rational_roots([Fraction(-3, 2), Fraction(5, 2), Fraction(1)])) == [Fraction(-3), Fraction(1, 2)]
    assert G.rational_roots([Fraction(1), Fraction(0), Fraction(1)]) == []


def test_graded_element_roundtrip(m3):
    x = G.random_element(m3, random.Random(9))
    el = G.GradedElement.from_vector(m3, x)
    assert G.GradedElement.from_json(el.to_json()).vector(m3) == x
