import itertools

import pytest

from swcext.algebra.field import gf
from swcext.algebra.linalg import (
    Subspace, identity, mat_det, mat_pow, subspaces, vec_mat, vector_space,
)
from swcext.errors import AlgebraError
from swcext.grp import (
    closed_subgroups, closure_bruteforce, cyclic_group, general_linear_group, gl_partition,
    orbits, singleton_partition, trivial_group,
)
from swcext.psinj import (
    COROLLARY_NOTE, PsinjWitness, build_T, build_Tprime, build_X, classify, companion, computed_outcome,
    counterexample_dim3, counterexample_dim_ge4, f23_check, is_pseudo_injective, mat_order,
    orbit_preserving_injections, primitive_mult_matrix, validate_witness,
)


def brute_orbit_preserving_maps(F, P, U):
    """Every assignment of basis images, filtered by orbit preservation."""
    V = vector_space(F, P.n)
    out = []
    for images in itertools.product(V.vectors, repeat=U.dim):
        ok = True
        for c in vector_space(F, U.dim).vectors:
            u, fu = vec_mat(F, c, U.basis), vec_mat(F, c, images)
            if P.orbit_id[V.index(u)] != P.orbit_id[V.index(fu)]:
                ok = False
                break
        if ok:
            out.append(images)
    return out


@pytest.mark.parametrize("q", (2, 3))
def test_primitive_matrix(q):
    F = gf(q)
    M = primitive_mult_matrix(F)
    assert mat_order(F, M) == q * q - 1
    assert vec_mat(F, (1, 0), M) == (0, 1)
    if q == 3:
        assert mat_pow(F, M, 4) != identity(2)


def test_primitive_matrix_q2_is_companion_of_x2_x_1(F2):
    M = companion(F2, 1, 1)
    assert primitive_mult_matrix(F2) == M
    assert mat_pow(F2, M, 3) == identity(2) and M != identity(2)


@pytest.mark.parametrize("q", (3, 4, 5))
def test_det_generates_units(q):
    F = gf(q)
    d = mat_det(F, primitive_mult_matrix(F))
    assert {F.pow(d, k) for k in range(q - 1)} == set(range(1, q))


def test_build_guards(F2):
    M = primitive_mult_matrix(F2)
    with pytest.raises(AlgebraError):
        build_Tprime(F2, 4, 2, M)
    with pytest.raises(AlgebraError):
        build_X(F2)
    with pytest.raises(AlgebraError):
        build_T(F2, 2, ((1, 1), (1, 1)))


def test_T_order(F2):
    T = build_T(F2, 2, primitive_mult_matrix(F2))
    assert mat_pow(F2, T, 3) == identity(4) and T != identity(4)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2)])
def test_injections_match_brute_force(q, n):
    F = gf(q)
    for G in (trivial_group(F, n), cyclic_group(F, general_linear_group(F, n).elements[-1])):
        P = orbits(G)
        for U in subspaces(F, n, min(2, n)):
            got = set(orbit_preserving_injections(F, P, U))
            assert got == set(brute_orbit_preserving_maps(F, P, U))


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 2), (5, 2), (7, 2)])
def test_small_dimension_always_pseudo_injective(q, n):
    F = gf(q)
    for G in (trivial_group(F, n), general_linear_group(F, n)):
        assert is_pseudo_injective(F, n, G)[0]


def test_dim2_census(F2, F3):
    for F in (F2, F3):
        for P, _ in closed_subgroups(F, 2):
            assert is_pseudo_injective(F, 2, P)[0]


def test_f23_pipeline():
    rep = f23_check()
    assert rep["result"] and rep["step2"] and rep["cross_check"]
    assert rep["closed_subgroups"] == 100
    assert rep["closed_fixing_a"] == 22


@pytest.mark.parametrize("q,n", [(2, 4), (2, 5), (3, 4)])
def test_counterexample_T(q, n):
    F = gf(q)
    w, rep = counterexample_dim_ge4(F, n, materialize_closure=(q == 2))
    assert rep["valid"]
    assert w.U.basis == ((1, 0) + (0,) * (n - 2), (0, 1) + (0,) * (n - 2))
    assert w.f_images == (w.U.basis[1], w.U.basis[0])
    if q == 2:
        assert rep["closed"]


def test_counterexample_T_search_agrees(F2):
    G = cyclic_group(F2, build_T(F2, 2, primitive_mult_matrix(F2)))
    ans, w = is_pseudo_injective(F2, 4, G)
    assert not ans
    assert validate_witness(F2, orbits(G), w)


def test_counterexample_X(F3):
    w, rep = counterexample_dim3(F3)
    assert rep["valid"]
    X = cyclic_group(F3, build_X(F3))
    brute = closure_bruteforce(X)
    assert len(X) == 8 and len(brute) == 16
    e1, e2 = (1, 0, 0), (0, 1, 0)
    assert not any(vec_mat(F3, e1, g) == e2 and vec_mat(F3, e2, g) == e1 for g in brute.elements)
    assert validate_witness(F3, orbits(X), w)


def test_validate_witness_rejects_extendable(F2):
    P = gl_partition(3, 2)
    U = Subspace.span(F2, 3, [(1, 0, 0), (0, 1, 0)])
    w = PsinjWitness(U, ((0, 1, 0), (1, 0, 0)), "no_extension")
    assert not validate_witness(F2, P, w)


def test_classification_table():
    assert classify(2, 7) and classify(3, 2) and classify(1, 5)
    assert not classify(4, 2) and not classify(3, 3)
    assert "ell >= 4" in COROLLARY_NOTE


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (4, 2), (2, 3), (3, 3)])
def test_computed_outcome_matches(n, q):
    assert computed_outcome(gf(q), n)[0] == classify(n, q)


def test_dimension_mismatch(F2):
    with pytest.raises(AlgebraError):
        is_pseudo_injective(F2, 3, singleton_partition(2, 2))
