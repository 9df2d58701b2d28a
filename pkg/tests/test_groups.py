import pytest

from graded_workbench.groups import (
    FiniteGroup,
    GroupError,
    IntegerGroup,
    direct_product,
    group_from_json,
    make_cyclic,
    validate,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_cyclic_is_valid(n):
    g = make_cyclic(n)
    assert validate(g) == []
    assert g.is_abelian()
    assert all(g.op(x, g.inv(x)) == g.identity for x in g.elements())
    assert max(g.order_of(x) for x in g.elements()) == n


def test_cyclic_rejects_zero():
    with pytest.raises(GroupError):
        make_cyclic(0)


def test_klein_four():
    v = direct_product(make_cyclic(2), make_cyclic(2))
    assert v.order == 4 and validate(v) == []
    assert all(v.order_of(x) <= 2 for x in v.elements())
    assert v.element_from_label((1, 1)) in v.elements()


def test_validate_reports_associativity():
    # a Latin square with identity 0 that is not associative
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    msgs = validate(FiniteGroup.from_table(table))
    assert any(m.startswith("associativity fails at") for m in msgs)


def test_json_roundtrip():
    for spec in ({"kind": "cyclic", "n": 3},
                 {"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 2}]}):
        g = group_from_json(spec)
        assert group_from_json(g.to_json()).table == g.table
    assert isinstance(group_from_json({"kind": "integers"}), IntegerGroup)


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        group_from_json({"kind": "table", "table": [[0, 1], [1, 1]]})
    with pytest.raises(GroupError):
        group_from_json({"kind": "dihedral"})


def test_integer_group():
    z = IntegerGroup()
    assert z.op(3, -5) == -2 and z.inv(4) == -4
