import pytest

from chowtrace.catalog import (
    UnknownVariety,
    UnsupportedCombination,
    alternative_models,
    builtin,
    check_descriptor,
    disjoint_union,
    normalize_name,
    product,
    subvariety_by_divisors,
)
from chowtrace.charclass import chern_series, powered_class
from chowtrace.exactalg import degree


@pytest.mark.parametrize("name", ["P0", "P1", "P2", "P5", "Q1", "Q3", "Q5", "Q7", "A2/P1", "B2/P1", "B3/P1", "G2/P1,2", "P1xP2", "Q3xP1"])
def test_descriptor_invariants(name):
    v = builtin(name)
    assert check_descriptor(v) == []


@pytest.mark.parametrize("n", range(0, 6))
def test_projective_euler(n):
    assert builtin(f"P{n}").euler_characteristic() == n + 1


def test_p2():
    v = builtin("P2")
    assert v.dim == 2
    assert chern_series(v.tangent) == v.ring.parse("1 + 3*h + 3*h2")


def test_f4p4():
    v = builtin("F4/P4")
    assert v.dim == 15 and v.ring.rank == 24
    assert builtin("F4P4") is v
    assert v.euler_characteristic() == 24
    assert check_descriptor(v) == []


def test_q3_models_agree():
    q = builtin("Q3")
    models = alternative_models("Q3")
    assert {m.provenance for m in models} == {"complete_intersection", "gp"}
    for m in models:
        assert m.dim == 3
        assert m.euler_characteristic() == q.euler_characteristic()
        for p in (2, 3):
            assert m.degree(powered_class(m.tangent, p) ** -1) == q.degree(powered_class(q.tangent, p) ** -1)
        c = chern_series(m.tangent)
        cq = chern_series(q.tangent)
        # c1^3, c1 c2, c3
        assert m.degree(c.component(1) ** 3) == q.degree(cq.component(1) ** 3)
        assert m.degree(c.component(1) * c.component(2)) == q.degree(cq.component(1) * cq.component(2))


def test_q5_models_agree():
    q = builtin("Q5")
    for m in alternative_models("Q5"):
        c, cq = chern_series(m.tangent), chern_series(q.tangent)
        assert m.degree(c.component(1) ** 5) == q.degree(cq.component(1) ** 5)
        assert m.degree(c.component(2) * c.component(3)) == q.degree(cq.component(2) * cq.component(3))


def test_even_quadric_only_numbers():
    q = builtin("Q4")
    assert q.provenance == "complete_intersection"
    assert q.euler_characteristic() == 6


def test_subvariety_z():
    X = builtin("F4/P4")
    Z = subvariety_by_divisors(X, [("H", 7)], name="Z")
    assert Z.dim == 8
    assert degree(Z.fundamental * X.classes["H"] ** 8) == 78


def test_quadric_by_divisor():
    P4 = builtin("P4")
    Q = subvariety_by_divisors(P4, [2 * P4.classes["h"]])
    assert Q.dim == 3 and Q.euler_characteristic() == 4


def test_nested_complete_intersection():
    P5 = builtin("P5")
    Y = subvariety_by_divisors(P5, ["h"])
    Z = subvariety_by_divisors(Y, [2 * P5.classes["h"]])
    assert Z.dim == 3 and Z.ambient is P5 and len(Z.divisors) == 2
    assert Z.euler_characteristic() == 4


def test_name_grammar():
    assert normalize_name("f4p4") == "F4/P4"
    assert normalize_name("B2/P1") == "B2/P1"
    with pytest.raises(UnknownVariety):
        builtin("Z9")
    with pytest.raises(UnknownVariety):
        builtin("P1x")
    with pytest.raises(UnknownVariety):
        builtin("Q0")


def test_products_need_intrinsic_rings():
    with pytest.raises(UnsupportedCombination):
        product(builtin("Q4"), builtin("P1"))


def test_disjoint_union_degrees_add():
    d = disjoint_union(builtin("P2"), builtin("P1xP1"))
    assert d.euler_characteristic() == 3 + 4
    with pytest.raises(UnsupportedCombination):
        disjoint_union(builtin("P2"), builtin("P3"))
