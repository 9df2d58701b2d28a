import random

import pytest

from graded_workbench import dynsys as D


def cycle(p):
    return D.FiniteDynSystem(p, tuple((i + 1) % p for i in range(p)))


def test_rejects_non_permutation():
    with pytest.raises(ValueError):
        D.FiniteDynSystem(3, (0, 0, 1))


def test_periodic_points():
    d = D.FiniteDynSystem(5, (1, 0, 3, 4, 2))  # cycle type (2, 3)
    assert D.per_n(d, 2) == {0, 1}
    assert D.per_n(d, 3) == {2, 3, 4}
    assert D.per_n(d, 6) == set(range(5))
    assert D.per(d) == set(range(5)) and D.aper(d) == frozenset()
    assert not D.is_top_free(d)
    assert D.orbits(d) == [[0, 1], [2, 3, 4]]
    assert not D.is_minimal(d) and not D.is_z_simple_coefficients(d)
    assert D.invariant_subset_witness(d) in ({0, 1}, {2, 3, 4})


def test_crossed_product_associative():
    d = D.FiniteDynSystem(4, (1, 0, 3, 2))
    rng = random.Random(1)
    for _ in range(20):
        a, b, c = (D.random_crossed(d, rng) for _ in range(3))
        assert D.crossed_mul(d, D.crossed_mul(d, a, b), c) == D.crossed_mul(d, a, D.crossed_mul(d, b, c))


def test_commutant_criterion_matches_direct():
    d = D.FiniteDynSystem(4, (1, 0, 2, 3))
    rng = random.Random(2)
    for _ in range(100):
        a = D.random_crossed(d, rng)
        assert D.commutant_membership(d, a) == D.commutes_with_functions(d, a)
    # u_2 commutes with all functions since h^2 = id
    assert D.commutant_membership(d, D.CrossedElement.u(4, 2))


def test_shift_matrix_small():
    m = D.shift_matrix(2)
    assert m.evaluate(3) == [[0, 3], [1, 0]]
    assert D.shift_matrix(3) ** 3 == D.LaurentMatrix.scalar_t(3)


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_pi_verified(p):
    v = D.verify_pi(cycle(p), samples=30, seed=p, window=1)
    assert v["pass"], v
    assert v["window_dim_covered"] == p * p * 3


def test_pi_of_u_negative_powers():
    p = 3
    for n in range(-6, 7):
        assert D.pi_u(p, n) == D.pi(cycle(p), D.CrossedElement.u(p, n))


def test_verdicts():
    single = D.verdict_simple(cycle(4))
    assert single["minimal"] and not single["simple"]
    cert = single["proper_ideal"]
    assert cert["killed_by_t_equals_1"] and cert["unit_survives"]
    split = D.verdict_simple(D.FiniteDynSystem(3, (1, 0, 2)))
    assert split["invariant_subset"] == [2]
