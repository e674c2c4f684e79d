from fractions import Fraction

import pytest

import oracles
from chowtrace.exactalg import check_associativity, degree, poincare_symmetric
from chowtrace.rootweyl import ParabolicQuotient, build_root_system
from chowtrace.schubert import (
    CACHE_ENV,
    BorelAlgebra,
    chevalley_multiply,
    degree_of_divisor_power,
    divided_difference,
    divisor_class,
    gp_algebra,
    orbit_model,
    poly_mul,
    schubert_basis,
    structure_constants,
)

SMALL = [("A", 2, [1, 2]), ("B", 2, [1, 2]), ("G", 2, [1, 2]), ("B", 2, [1]), ("A", 3, [2]), ("C", 3, [1, 3])]


def polynomial_route(Q):
    """Structure constants from Borel-presentation Schubert polynomials."""
    B = BorelAlgebra(Q.rs)
    W = Q.W
    out = {}
    for a, u in enumerate(Q.reps):
        for b in range(a, len(Q.reps)):
            v = Q.reps[b]
            ell = W.lengths[u] + W.lengths[v]
            if ell > Q.dim:
                continue
            f = poly_mul(B.schubert_polynomial(u), B.schubert_polynomial(v))
            coeffs = B.expand(f, ell, [w for w in Q.reps if W.lengths[w] == ell])
            row = {Q.rep_index[w]: int(c) for w, c in coeffs.items()}
            if row:
                out[(a, b)] = row
    return out


@pytest.mark.parametrize("kind,rank,marked", SMALL)
def test_orbit_route_matches_polynomial_route(kind, rank, marked):
    Q = ParabolicQuotient(build_root_system(kind, rank), marked)
    assert structure_constants(Q) == polynomial_route(Q)


def test_bgg_operator_squares_to_zero():
    rs = build_root_system("B", 2)
    B = BorelAlgebra(rs)
    f = poly_mul(B.var(0), poly_mul(B.var(1), B.var(1)))
    for i in range(2):
        once = divided_difference(rs, i, f)
        assert divided_difference(rs, i, once) == {}


def test_orbit_top_class_is_point():
    rs = build_root_system("G", 2)
    m = orbit_model(rs)
    W = m.W
    top = m.top_class()
    assert m.apply_word_at_base(W.words[W.longest], lambda pts: [top[y] for y in pts]) == 1


@pytest.mark.parametrize("kind,rank,marked", SMALL)
def test_small_rings(kind, rank, marked):
    A = schubert_basis(build_root_system(kind, rank), marked)
    assert check_associativity(A) == []
    assert poincare_symmetric(A)


def test_a2_p1_is_p2():
    A = gp_algebra("A2", [1])
    H = divisor_class(A)
    assert degree(H**2) == 1


def test_b2_p1_is_q3():
    A = gp_algebra("B2", [1])
    out = degree_of_divisor_power(A, 3)
    assert out["degree"] == 2 and out["cross_checked"]


def test_f4p4_constants_nonnegative_integers():
    A = gp_algebra("F4", [4])
    for row in A.table.values():
        for c in row.values():
            assert isinstance(c, int) and c > 0


def test_f4p4_duality_is_permutation():
    A = gp_algebra("F4", [4])
    n = A.rank
    M = [[int(degree(A.basis(i) * A.basis(j))) if A.codims[i] + A.codims[j] == A.dim else 0 for j in range(n)] for i in range(n)]
    for row in M:
        assert sorted(row) == [0] * (n - 1) + [1]
    for col in zip(*M):
        assert sorted(col) == [0] * (n - 1) + [1]


def test_f4p4_hyperplane_degree_two_methods():
    A = gp_algebra("F4", [4])
    out = degree_of_divisor_power(A, 15)
    assert out["cross_checked"]
    assert out["degree"] == oracles.f4p4_numbers()["deg_h15"] == 78


def test_chevalley_agrees_on_every_class():
    A = gp_algebra("F4", [4])
    H = divisor_class(A)
    for k in range(A.rank):
        x = A.basis(k)
        assert chevalley_multiply(A, 4, x) == H * x


def test_structure_constants_independent_of_order():
    Q = ParabolicQuotient(build_root_system("B", 3), [2])
    assert structure_constants(Q, order_seed=1) == structure_constants(Q, order_seed=99) == structure_constants(Q)


def test_cache_roundtrip_is_byte_stable(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    rs = build_root_system("B", 3)
    A1 = schubert_basis(rs, [1])
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    first = files[0].read_bytes()
    A2 = schubert_basis(rs, [1])
    assert files[0].read_bytes() == first
    assert A1.table == A2.table
