from fractions import Fraction

import pytest

from graded_workbench.coeff import (
    FunctionRing,
    PermutationInduced,
    PolyCoeffRing,
    PrincipalIdeal,
    RingMismatch,
    Shift,
    SubsetIdeal,
    automorphism_from_json,
    is_g_invariant_ideal,
    is_g_simple,
    is_simple_ring,
    orbits,
)
from graded_workbench.exact import Poly


def test_permutation_action_is_a_homomorphism():
    p = PermutationInduced((1, 2, 0))
    q = PermutationInduced((0, 2, 1))
    f = (Fraction(5), Fraction(7), Fraction(11))
    assert p.compose(q).apply(f) == p.apply(q.apply(f))
    assert p.compose(p.inverse()).is_identity()


def test_shift_composition():
    f = Poly((Fraction(1), Fraction(2), Fraction(3)))
    assert Shift(1).compose(Shift(2)).apply(f) == Shift(3).apply(f)
    assert Shift(2).compose(Shift(2).inverse()).is_identity()


def test_automorphism_json():
    assert automorphism_from_json({"perm": [1, 0]}) == PermutationInduced((1, 0))
    assert automorphism_from_json({"shift": "1/2"}) == Shift(Fraction(1, 2))


def test_orbits_sorted():
    assert orbits(5, [(1, 0, 2, 4, 3)]) == [[0, 1], [2], [3, 4]]


def test_function_ring_g_simplicity():
    ring = FunctionRing.on(3)
    trans = is_g_simple(ring, [PermutationInduced((1, 2, 0))])
    assert trans.g_simple and trans.witness is None
    split = is_g_simple(ring, [PermutationInduced((1, 0, 2))])
    assert not split.g_simple
    assert split.witness == SubsetIdeal({2})
    assert is_g_invariant_ideal(split.witness, [PermutationInduced((1, 0, 2))])


def test_polynomial_ring():
    ring = PolyCoeffRing()
    assert is_g_simple(ring, [Shift(1)]).g_simple
    plain = is_simple_ring(ring)
    assert not plain.g_simple and plain.witness == PrincipalIdeal(Poly.z())
    # (z) is not shift invariant, (1) trivially is
    assert not is_g_invariant_ideal(PrincipalIdeal(Poly.z()), [Shift(1)])
    assert is_g_invariant_ideal(PrincipalIdeal(Poly.const(1)), [Shift(1)])


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        is_g_simple(FunctionRing.on(2), [Shift(1)])
    with pytest.raises(RingMismatch):
        is_g_simple(PolyCoeffRing(), [PermutationInduced((0,))])
