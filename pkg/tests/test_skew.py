import pytest

from graded_workbench import graded as G
from graded_workbench import skew as S
from graded_workbench.coeff import PermutationInduced
from graded_workbench.exact import subspace_intersect
from graded_workbench.groups import direct_product, make_cyclic

Z2 = make_cyclic(2)


def test_action_counts_up_to_relabeling():
    expected = {
        "Z2": (make_cyclic(2), [1, 2, 2, 3, 3]),
        "Z3": (make_cyclic(3), [1, 1, 2, 2, 2]),
        "Z4": (make_cyclic(4), [1, 2, 2, 4, 4]),
        "Z2xZ2": (direct_product(make_cyclic(2), make_cyclic(2)), [1, 4, 4, 11, 11]),
    }
    for name, (grp, counts) in expected.items():
        assert [len(S.enumerate_actions(grp, n)) for n in range(1, 6)] == counts, name


def test_swap_is_simple():
    spec = S.function_skew_spec(Z2, [(0, 1), (1, 0)])
    r = S.build(spec)
    assert G.validate_graded(r) == []
    rep = S.verdict_simple(spec, r, samples=20, seed=1)
    assert rep.simple and rep.max_commutative and rep.g_simple
    assert rep.evidence_kind == "theorem-derived"
    assert rep.sampling["full_closures"] == 20


def test_fixed_point_gives_witness():
    spec = S.function_skew_spec(Z2, [(0, 1, 2), (1, 0, 2)])
    w = S.find_commutation_witness(spec)
    assert w is not None and w.s == 1
    assert w.r_s == (0, 0, 1)
    r = S.build(spec)
    ideal, avoids = S.witness_ideal(spec, r, w)
    assert avoids and ideal.dim == 1
    assert all(not any(S.augmentation(spec, r, b)) for b in ideal.basis)
    rep = S.verdict_simple(spec, r)
    assert rep.simple is False and rep.witness["verified_proper_nonzero"]


def test_intransitive_free_action():
    # Z2 swapping two pairs: free, two orbits, hence not G-simple
    spec = S.function_skew_spec(Z2, [(0, 1, 2, 3), (1, 0, 3, 2)])
    r = S.build(spec)
    rep = S.verdict_simple(spec, r)
    assert rep.max_commutative and not rep.g_simple and not rep.simple
    assert rep.witness["branch"] == "not G-simple"
    ideal = S.invariant_subset_ideal(spec, r, rep.witness["invariant_subset"])
    assert G.is_ideal(r, ideal)


def test_gauss_twisted():
    spec = S.rational_twisted_spec(Z2, {(1, 1): -1})
    assert spec.twisted
    r = S.build(spec)
    assert G.validate_graded(r) == []
    u = r.basis_vector(1, 0)
    assert r.mul(u, u) == tuple(-c for c in r.unity)
    rep = S.verdict_simple(spec, r, samples=10, seed=2)
    assert rep.simple and not rep.max_commutative and rep.g_simple
    assert rep.evidence_kind == "exact-certificate"
    with pytest.raises(S.SpecError):
        S.augmentation(spec, r, u)


def test_split_twisted_is_not_simple():
    # u^2 = 4 is a square, so the ring splits as Q x Q
    spec = S.rational_twisted_spec(Z2, {(1, 1): 4})
    r = S.build(spec)
    rep = S.verdict_simple(spec, r, samples=30, seed=2)
    assert rep.simple is False


def test_spec_violations():
    bad = S.SkewGroupRingSpec(S.FunctionRing.on(2), Z2, {0: PermutationInduced((1, 0)), 1: PermutationInduced((1, 0))})
    assert S.spec_violations(bad)


def test_json_roundtrip():
    spec = S.function_skew_spec(Z2, [(0, 1), (1, 0)], "swap")
    back = S.SkewGroupRingSpec.from_json(spec.to_json())
    assert back.to_json() == spec.to_json()


def test_witness_ideal_meets_neutral_trivially_across_actions():
    grp = make_cyclic(3)
    for act in S.enumerate_actions(grp, 4):
        spec = S.function_skew_spec(grp, act)
        w = S.find_commutation_witness(spec)
        if w is None:
            continue
        r = S.build(spec)
        ideal, avoids = S.witness_ideal(spec, r, w)
        assert avoids
        assert subspace_intersect(ideal, r.component_subspace(0)).is_zero()
