import itertools

import pytest
from hypothesis import given, settings, strategies as st

from swcext.algebra.field import gf
from swcext.algebra.linalg import mat_mul, vec_mat, vector_space
from swcext.errors import AlgebraError, GuardError
from swcext.grp import (
    closed_subgroups, closure, closure_bruteforce, cyclic_group, general_linear_group,
    gl_order, gl_partition, group_generate, in_closure, is_closed, orbits, partition_finer,
    partition_join, point_stabilizer, poset_partitions, singleton_partition, trivial_group,
)
from swcext.psinj import build_T, build_Tprime, primitive_mult_matrix


def brute_orbits(F, n, elements):
    V = vector_space(F, n)
    return {frozenset(V.index(vec_mat(F, v, g)) for g in elements) for v in V.vectors}


def test_gl_orders():
    for n, q in ((1, 2), (2, 2), (2, 3), (3, 2)):
        assert len(general_linear_group(gf(q), n)) == gl_order(n, q)
    assert gl_order(3, 2) == 168


def test_group_generate_closed_under_product():
    F = gf(3)
    G = group_generate(F, 2, [((1, 1), (0, 1)), ((0, 1), (2, 0))])
    S = G.element_set
    for a, b in itertools.product(G.elements, repeat=2):
        assert mat_mul(F, a, b) in S


def test_cyclic_T_order_three(F2):
    T = build_T(F2, 2, primitive_mult_matrix(F2))
    assert len(cyclic_group(F2, T)) == 3


def test_gl2_two_orbits(F2):
    P = orbits(general_linear_group(F2, 2))
    assert sorted(map(sorted, P.blocks.values())) == [[0], [1, 2, 3]]
    assert P == gl_partition(2, 2)


def test_Tprime_orbit_of_e1(F2):
    Tp = build_Tprime(F2, 5, 2, primitive_mult_matrix(F2))
    G = cyclic_group(F2, Tp)
    V = vector_space(F2, 5)
    orbit = {V.vectors[i] for i in orbits(G).block_of(V.index((1, 0, 0, 0, 0)))}
    assert orbit == {(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (1, 1, 0, 0, 0)}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(((2, 2), (3, 2), (2, 3))), st.data())
def test_orbits_match_brute_force(qn, data):
    q, n = qn
    F = gf(q)
    els = general_linear_group(F, n).elements
    gens = data.draw(st.lists(st.sampled_from(els), max_size=2))
    G = group_generate(F, n, gens)
    got = {frozenset(b) for b in orbits(G).blocks.values()}
    assert got == brute_orbits(F, n, G.elements)


def test_trivial_group_closed(F2):
    for n in (1, 2, 3):
        e = trivial_group(F2, n)
        assert closure(e).elements == e.elements


@pytest.mark.parametrize("n", (4, 5))
def test_T_groups_closed(F2, n):
    M = primitive_mult_matrix(F2)
    g = build_T(F2, 2, M) if n == 4 else build_Tprime(F2, n, 2, M)
    G = cyclic_group(F2, g)
    assert is_closed(G)


def test_minus_identity_closure(F3):
    G = group_generate(F3, 2, [((2, 0), (0, 2))])
    fast, brute = closure(G), closure_bruteforce(G)
    assert fast.element_set == brute.element_set
    # orbits are {0} and the pairs {v, -v}; a linear map sending every v to +-v
    # is a scalar, so the group is already closed
    assert brute.element_set == {((1, 0), (0, 1)), ((2, 0), (0, 2))}
    assert all(in_closure(F3, orbits(G), g) for g in brute.elements)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(((2, 2), (3, 2), (2, 3))), st.data())
def test_closure_matches_brute_force(qn, data):
    q, n = qn
    F = gf(q)
    els = general_linear_group(F, n).elements
    G = group_generate(F, n, data.draw(st.lists(st.sampled_from(els), max_size=2)))
    fast = closure(G)
    assert fast.element_set == closure_bruteforce(G).element_set
    assert G.element_set <= fast.element_set
    assert orbits(fast) == orbits(G)
    assert is_closed(fast)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_join_is_generated_partition_gl2f3(data):
    F = gf(3)
    els = general_linear_group(F, 2).elements
    h, g = data.draw(st.sampled_from(els)), data.draw(st.sampled_from(els))
    Ph = orbits(cyclic_group(F, h))
    Phg = orbits(group_generate(F, 2, [h, g]))
    assert partition_finer(Ph, Phg)
    assert partition_join(Ph, orbits(cyclic_group(F, g))) == Phg


def test_join_mismatched_ambient():
    with pytest.raises(AlgebraError):
        partition_join(singleton_partition(2, 2), singleton_partition(3, 2))


def test_poset_n2_contains_two_orbit_partition(F2):
    posets = poset_partitions(F2, 2)
    assert gl_partition(2, 2) in posets
    assert singleton_partition(2, 2) in posets


def test_poset_census_f2_cubed(F2):
    # regression value from the join closure
    assert len(poset_partitions(F2, 3)) == 100
    assert len(closed_subgroups(F2, 3, fixing=(1, 0, 0))) == 22


def test_poset_brute_force_n2(F2):
    # orbit partitions of all subgroups of GL_2(F_2), from every generating pair
    els = general_linear_group(F2, 2).elements
    want = {orbits(group_generate(F2, 2, list(s))) for s in itertools.combinations(els, 2)}
    want |= {orbits(cyclic_group(F2, g)) for g in els}
    assert set(poset_partitions(F2, 2)) == want


def test_closed_subgroups_are_stabilizers(F2):
    for P, G in closed_subgroups(F2, 3):
        assert orbits(G) == P
        assert is_closed(G)


def test_point_stabilizer(F2):
    S = point_stabilizer(general_linear_group(F2, 2), (1, 0))
    assert len(S) == 2
    assert S.element_set == {((1, 0), (0, 1)), ((1, 0), (1, 1))}


def test_point_stabilizer_of_closed_is_closed(F2):
    for _, G in closed_subgroups(F2, 3):
        assert is_closed(point_stabilizer(G, (1, 0, 0)))


def test_guards():
    with pytest.raises(GuardError):
        general_linear_group(gf(3), 3, guard=1000)
    with pytest.raises(GuardError):
        group_generate(gf(2), 3, [((0, 1, 0), (0, 0, 1), (1, 0, 0)), ((1, 1, 0), (0, 1, 0), (0, 0, 1))], guard=10)


def test_json_shapes(F2):
    G = cyclic_group(F2, ((0, 1), (1, 1)))
    assert G.to_json()["element_count"] == 3
    assert orbits(G).to_json() == {"n": 2, "q": 2, "orbit_id": [0, 1, 1, 1]}
