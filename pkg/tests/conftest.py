import itertools

import pytest

from swcext.algebra.field import gf


@pytest.fixture(scope="session")
def F2():
    return gf(2)


@pytest.fixture(scope="session")
def F3():
    return gf(3)


def naive_polymul_mod(x, y, p, modulus):
    """Schoolbook product of coefficient lists mod a monic modulus, for oracles."""
    prod = [0] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            prod[i + j] = (prod[i + j] + a * b) % p
    k = len(modulus) - 1
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i, m in enumerate(modulus):
                prod[d - k + i] = (prod[d - k + i] - c * m) % p
    return (prod + [0] * k)[:k]


def all_matrices(q, rows, cols):
    for flat in itertools.product(range(q), repeat=rows * cols):
        yield tuple(tuple(flat[r * cols:(r + 1) * cols]) for r in range(rows))
