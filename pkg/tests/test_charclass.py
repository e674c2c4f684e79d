import pytest

import oracles
from chowtrace.catalog import builtin, projective_space
from chowtrace.charclass import (
    DimensionUnderflow,
    VirtualBundle,
    chern_classes,
    chern_series,
    complete_intersection,
    elementary_to_power,
    power_to_elementary,
    powered_class,
    powered_class_via_newton,
    powered_class_via_roots,
)
from chowtrace.exactalg import degree


def test_projective_chern_classes():
    for n in range(1, 7):
        v = projective_space(n)
        cs = chern_classes(v.tangent)
        h = v.ring.basis("h")
        assert [c == h**k * oracles.chern_projective(n)[k] for k, c in enumerate(cs, 1)] == [True] * n


def test_p2_example():
    v = builtin("P2")
    assert chern_series(v.tangent) == v.ring.parse("1 + 3*h + 3*h2")


@pytest.mark.parametrize("name", ["P3", "Q5", "P2xP2", "Q3xP1"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_powered_class_two_ways(name, p):
    v = builtin(name)
    assert powered_class_via_roots(v.tangent, p) == powered_class_via_newton(v.tangent, p)


def test_powered_class_gp_orbit_vs_newton():
    v = builtin("F4/P4")
    for p in (2, 3):
        assert powered_class(v.tangent, p) == powered_class_via_newton(v.tangent, p)


def test_with_parameter_components():
    v = builtin("P4")
    comps = powered_class(v.tangent, 3, with_parameter=True)
    h = v.ring.basis("h")
    assert comps == {0: v.ring.one(), 1: 5 * h**2, 2: 10 * h**4}


def test_newton_round_trip():
    v = builtin("Q5")
    es = chern_classes(v.tangent)
    assert power_to_elementary(elementary_to_power(es, 5), 5) == es


def test_virtual_rank_and_negation():
    v = builtin("P3")
    T = v.tangent
    assert T.rank == 3 and (-T).rank == -3
    total = chern_series(T) * chern_series(-T)
    assert total == v.ring.one()


def test_roots_must_be_divisors():
    v = builtin("P2")
    with pytest.raises(ValueError):
        VirtualBundle([v.ring.basis("h2")])


def test_adjunction_quadric():
    P4 = builtin("P4")
    Q = complete_intersection(P4, [2 * P4.classes["h"]])
    assert Q.dim == 3
    assert Q.euler_characteristic() == 4
    assert degree(Q.fundamental * P4.classes["h"] ** 3) == 2


def test_linear_section_matches_builtin():
    P4 = builtin("P4")
    L = complete_intersection(P4, [P4.classes["h"]])
    P3 = builtin("P3")
    for p in (2, 3):
        a = L.degree(powered_class(L.tangent, p) ** -1)
        b = P3.degree(powered_class(P3.tangent, p) ** -1)
        assert a == b
    assert L.euler_characteristic() == 4


def test_too_many_divisors():
    P2 = builtin("P2")
    with pytest.raises(DimensionUnderflow):
        complete_intersection(P2, [P2.classes["h"]] * 3)
