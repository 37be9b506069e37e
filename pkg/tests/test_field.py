import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import naive_polymul_mod
from swcext.algebra.field import (
    FieldSpec, find_irreducible_quadratic, gf, gf_make, has_root, is_irreducible,
    monic_polys, prime_power, quadratic_form,
)
from swcext.errors import AlgebraError

ORDERS = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)


def test_prime_power():
    assert prime_power(2) == (2, 1)
    assert prime_power(16) == (2, 4)
    assert prime_power(27) == (3, 3)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(AlgebraError):
            prime_power(bad)


def test_default_modulus_gf9_is_x2_plus_1():
    # all 9 monic quadratics over F_3, checked for roots by hand
    rootless = [(c0, c1) for c0, c1 in itertools.product(range(3), repeat=2)
                if all((x * x + c1 * x + c0) % 3 for x in range(3))]
    assert rootless[0] == (1, 0)
    assert gf_make(3, 2).modulus == (1, 0, 1)


def test_modulus_irreducible_and_smallest():
    for q in (4, 8, 9, 16, 25, 27):
        F = gf(q)
        assert is_irreducible(F.modulus, F.p)
        earlier = [m for m in monic_polys(F.p, F.k) if tuple(m) < F.modulus]
        assert not any(is_irreducible(m, F.p) for m in earlier)


def test_reducible_modulus_rejected():
    with pytest.raises(AlgebraError):
        gf_make(2, 2, (1, 0, 1))  # (x+1)^2


def test_not_prime_characteristic():
    with pytest.raises(AlgebraError):
        gf_make(4, 1)


@pytest.mark.parametrize("q", ORDERS)
def test_mul_matches_schoolbook(q):
    F = gf(q)
    for x in F.elements:
        for y in F.elements:
            want = naive_polymul_mod(list(F.coeffs(x)), list(F.coeffs(y)), F.p, list(F.modulus))
            assert F.coeffs(F.mul(x, y)) == want


@pytest.mark.parametrize("q", ORDERS)
def test_inverse_and_division(q):
    F = gf(q)
    for x in F.elements[1:]:
        assert F.mul(x, F.inv(x)) == 1
        assert F.div(x, x) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_cyclic(q):
    F = gf(q)
    orders = set()
    for x in F.elements[1:]:
        k = 1
        while F.pow(x, k) != 1:
            k += 1
        orders.add(k)
    assert max(orders) == q - 1


@given(st.sampled_from(ORDERS), st.data())
def test_ring_axioms(q, data):
    F = gf(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.sub(F.add(a, b), b) == a
    assert F.add(a, F.neg(a)) == 0


@given(st.sampled_from(ORDERS), st.data())
def test_frobenius_additive(q, data):
    F = gf(q)
    a, b = data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1))
    assert F.pow(F.add(a, b), F.p) == F.add(F.pow(a, F.p), F.pow(b, F.p))


def test_encode_roundtrip():
    F = gf(27)
    for x in F.elements:
        assert F.encode(F.coeffs(x)) == x


def test_irreducible_quadratic_choice():
    assert find_irreducible_quadratic(gf(2)) == (1, 1)
    assert find_irreducible_quadratic(gf(3)) == (0, 1)
    assert find_irreducible_quadratic(gf(5)) == (1, 1)
    alpha, beta = find_irreducible_quadratic(gf(4))
    # x^2 + beta has a root in characteristic 2, so alpha != 0 is forced
    assert alpha != 0
    for q in (2, 3, 4, 5, 7, 8, 9):
        F = gf(q)
        a, b = find_irreducible_quadratic(F)
        assert not has_root(F, a, b)


def test_quadratic_form_values():
    F = gf(3)
    assert quadratic_form(F, 1, 1, 0, 1) == 2
    # anisotropic: zero only at the origin
    for q in (2, 3, 4, 5):
        F = gf(q)
        al, be = find_irreducible_quadratic(F)
        zeros = [(a, b) for a in F.elements for b in F.elements if quadratic_form(F, a, b, al, be) == 0]
        assert zeros == [(0, 0)]


def test_to_json():
    F = gf(4)
    assert F.to_json() == {"p": 2, "k": 2, "q": 4, "modulus": [1, 1, 1]}
    assert isinstance(F, FieldSpec)
