from fractions import Fraction

import pytest

from chowtrace.catalog import odd_quadric_ring, projective_space_ring
from chowtrace.exactalg import (
    GF,
    QQ,
    AlgebraMismatch,
    ModulusMismatch,
    NotAUnit,
    NotDivisible,
    Residue,
    check_associativity,
    check_grading,
    degree,
    direct_sum,
    format_element,
    include_summand,
    invert_unit,
    kunneth_product,
    parse_element,
    point_algebra,
    poincare_symmetric,
    pull_left,
    pull_right,
    reduce_mod,
    with_domain,
)


@pytest.fixture
def p3():
    return projective_space_ring(3)


def test_projective_powers(p3):
    h = p3.basis("h")
    assert h**3 == p3.basis("h3")
    assert (h**4).is_zero()
    assert degree(h**3) == 1


def test_residue_arithmetic():
    a = Residue(5, 3)
    assert a.value == 2
    assert a + 1 == 0
    assert a * a == 1
    with pytest.raises(ModulusMismatch):
        _ = a + Residue(1, 5)


def test_gf_rejects_composite():
    with pytest.raises(ValueError):
        GF(4)


def test_invert_unit(p3):
    h = p3.basis("h")
    x = p3.one() + 2 * h + h**2
    assert x * invert_unit(x) == p3.one()
    assert (p3.one() + h) ** -1 == p3.parse("1 - h + h2 - h3")


def test_invert_non_unit(p3):
    with pytest.raises(NotAUnit):
        invert_unit(p3.basis("h"))
    with pytest.raises(NotAUnit):
        invert_unit(p3.scalar(2))
    # over QQ and GF(3) the constant 2 is invertible
    assert invert_unit(with_domain(p3, QQ).scalar(2)) == with_domain(p3, QQ).scalar(Fraction(1, 2))
    assert invert_unit(reduce_mod(p3, 3).scalar(2)) == reduce_mod(p3, 3).scalar(2)


def test_divide_exact(p3):
    x = p3.parse("4*h + 6*h2")
    assert x.divide_exact(2) == p3.parse("2*h + 3*h2")
    with pytest.raises(NotDivisible):
        x.divide_exact(4)


def test_mismatch_errors(p3):
    other = projective_space_ring(2)
    with pytest.raises(AlgebraMismatch):
        _ = p3.basis("h") + other.basis("h")
    with pytest.raises(ModulusMismatch):
        _ = p3.basis("h") * reduce_mod(p3, 2).basis("h")


def test_mod_p_reduction(p3):
    A2 = reduce_mod(p3, 2)
    x = reduce_mod(p3.parse("2*h + 3*h2"), 2)
    assert x == A2.basis("h2")
    assert reduce_mod(p3, 2) is A2


def test_parse_format_roundtrip():
    Q = odd_quadric_ring(5)
    for text in ["1 + 5*h + 11*h2 + 26*l2", "-l0", "2*h - 3*l1", "0"]:
        x = Q.parse(text)
        assert Q.parse(format_element(x)) == x
    with pytest.raises(KeyError):
        Q.parse("3*foo")


def test_quadric_relations():
    Q = odd_quadric_ring(5)
    h = Q.basis("h")
    assert h**3 == 2 * Q.basis("l2")
    assert h * Q.basis("l1") == Q.basis("l0")
    assert (Q.basis("l2") * Q.basis("l2")).is_zero()
    assert degree(h**5) == 2
    assert check_associativity(Q) == []
    assert check_grading(Q) and poincare_symmetric(Q)


def test_kunneth(p3):
    P1 = projective_space_ring(1)
    P = kunneth_product(P1, p3)
    assert P.dim == 4 and P.rank == 8
    x = pull_left(P1.basis("h"), P) * pull_right(p3.basis("h3"), P)
    assert degree(x) == 1
    assert check_associativity(P) == []


def test_direct_sum():
    A, B = projective_space_ring(2), projective_space_ring(2)
    S = direct_sum(A, B)
    one = include_summand(A.one(), S, 0) + include_summand(B.one(), S, 1)
    assert one == S.one()
    pt = include_summand(A.basis("h2"), S, 0) + include_summand(B.basis("h2"), S, 1)
    assert degree(pt) == 2


def test_point_algebra():
    pt = point_algebra()
    assert degree(pt.scalar(7)) == 7
    assert parse_element(pt, "3") == pt.scalar(3)
