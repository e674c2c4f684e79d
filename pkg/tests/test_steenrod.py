import json

import pytest

from chowtrace.catalog import builtin
from chowtrace.exactalg import GF, GradedAlgebra, reduce_mod
from chowtrace.steenrod import (
    GeneratorData,
    NotInGeneratedSubring,
    SearchBoundExceeded,
    SteenrodTable,
    UnsolvableSteenrod,
    adem_terms,
    binom,
    cartan_table,
    check_s2_codim4,
    family_of,
    product_table,
    projective_table,
    quadric_closed_form,
    quadric_table,
    reduced_power,
    solve_action,
    solve_for_variety,
    table_from_json,
    total_operation,
    validate,
    wu_class,
)


def synthetic():
    """GF(3) algebra 1, x (4), w (6), z (8) with x^2 = z: S^2(x) = 2z survives validation."""
    return GradedAlgebra("synthetic", ["1", "x", "w", "z"], [0, 4, 6, 8], {(0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1}, (1, 1): {3: 1}}, 8, {0: 1}, 3, GF(3))


def test_quadric_total_operation():
    T = quadric_table(5)
    A = T.algebra
    h = A.basis("h")
    assert total_operation(T, h) == h + h**2
    assert reduced_power(T, 1, h**2).is_zero()  # 2 h^3
    assert reduced_power(T, 0, A.basis("l1")) == A.basis("l1")


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_quadric_closed_form_valid(n):
    T = quadric_table(n)
    assert validate(T) == []
    A = T.algebra
    for k in range(A.rank):
        for i in range(A.dim + 1):
            assert reduced_power(T, i, A.basis(k)) == quadric_closed_form(A, A.names[k], i)


@pytest.mark.parametrize("n,p", [(2, 3), (4, 3), (3, 2), (6, 5), (6, 2)])
def test_projective_tables(n, p):
    T = projective_table(n, p)
    assert validate(T) == []
    A = T.algebra
    h = A.basis("h")
    for a in range(n + 1):
        for i in range(a + 1):
            expect = h ** (a + i * (p - 1)) * binom(a, i) if a + i * (p - 1) <= n else A.zero()
            assert reduced_power(T, i, h**a) == expect


def test_corrupted_table_fails_instability():
    T = projective_table(3, 2)
    bad = SteenrodTable(2, T.algebra, T.gens, {"h": {1: T.algebra.zero()}})
    problems = validate(bad)
    assert any("h^2" in msg or "instab" in msg for msg in problems)


def test_adem_terms():
    # Sq^1 Sq^1 = 0 ; Sq^1 Sq^2 = Sq^3 in the Chow indexing S^a = Sq^2a
    assert adem_terms(1, 1, 2) == []
    assert adem_terms(1, 2, 2) == [(1, 3, 0)]
    # p = 3: P^1 P^1 = 2 P^2
    assert adem_terms(1, 1, 3) == [(2, 2, 0)]


def test_q5_solver_unique_and_matches_closed_form():
    v = builtin("Q5")
    T = solve_for_variety(v, 2)
    assert T.status == "solved-unique"
    closed = quadric_table(5)
    A = T.algebra
    for k in range(A.rank):
        for i in range(1, 6):
            assert reduced_power(T, i, A.basis(k)) == reduced_power(closed, i, A.basis(k))


def test_q5_without_wu_is_a_family():
    T = solve_for_variety(builtin("Q5"), 2, use_wu=False)
    assert T.status == "solution-space" and len(family_of(T)) == 4


def test_p2_solver_matches_cartan():
    T = solve_for_variety(builtin("P2"), 3)
    assert T.status == "solved-unique"
    assert T.key() == cartan_table(T.algebra).key()


def test_f4p4_generators_mod3():
    A = reduce_mod(builtin("F4/P4").ring, 3)
    g = GeneratorData(A)
    assert g.codims == [1, 4]


def test_f4p4_s2_trivial():
    T = solve_for_variety(builtin("F4/P4"), 3)
    assert len(family_of(T)) >= 1
    assert check_s2_codim4(T)


def test_h4_cartan_subfact():
    T = solve_for_variety(builtin("F4/P4"), 3)
    A = T.algebra
    H = A.basis("s4")
    for t in family_of(T):
        assert reduced_power(t, 2, H**4).is_zero()
    # the coefficient is C(4,2) = 6
    assert binom(4, 2) == 6 and 6 % 3 == 0


def test_synthetic_negative_control():
    A = synthetic()
    T = solve_action(A)
    fam = family_of(T)
    assert any(not reduced_power(t, 2, A.basis("x")).is_zero() for t in fam)
    assert not check_s2_codim4(T)


def test_unsolvable():
    A = synthetic()
    with pytest.raises(UnsolvableSteenrod):
        # S^1 x = w, S^1 w = z, S^2 x = 0 breaks the Adem relation S^1 S^1 = 2 S^2
        w, z = A.basis("w"), A.basis("z")
        solve_action(A, fixed={"x": {1: w, 2: A.zero(), 3: A.zero()}, "w": {1: z}})


def test_search_bound():
    with pytest.raises(SearchBoundExceeded):
        solve_for_variety(builtin("F4/P4"), 3, bound=10)


def test_not_in_generated_subring():
    A = reduce_mod(builtin("Q5").ring, 2)
    with pytest.raises(NotInGeneratedSubring):
        GeneratorData(A, ["h"])


def test_kunneth_naturality():
    TA, TB = quadric_table(3), projective_table(2, 2)
    TP = product_table(TA, TB)
    assert validate(TP) == []
    P = TP.algebra
    from chowtrace.exactalg import tensor

    for k in range(TA.algebra.rank):
        x = TA.algebra.basis(k)
        for i in range(4):
            assert reduced_power(TP, i, tensor(x, TB.algebra.one(), P)) == tensor(reduced_power(TA, i, x), TB.algebra.one(), P)


def test_json_roundtrip():
    T = quadric_table(5)
    text = T.to_json()
    back = table_from_json(text, T.algebra)
    assert back.key() == T.key()
    assert json.loads(text)["generators"][0]["name"] == "h"
    assert T.to_json() == quadric_table(5).to_json()


def test_wu_detects_wrong_table():
    v = builtin("Q3")
    A = reduce_mod(v.ring, 2)
    T = quadric_table(3)
    bad = SteenrodTable(2, A, T.gens, {"h": {1: A.basis("h") ** 2}, "l1": {1: A.zero(), 2: A.zero()}})
    assert validate(bad) == []  # ring-theoretic constraints alone accept it
    assert validate(bad, wu=wu_class(v.tangent, 2, A)) != []
