"""
Finite fields GF(p^k) with table-driven arithmetic.

Elements are plain ints: the coefficient vector (c_0, ..., c_{k-1}) of a
polynomial residue is encoded as sum(c_i * p**i).  0 and 1 are the additive
and multiplicative identities.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from swcext.errors import AlgebraError

MAX_TABLE_ORDER = 1 << 12


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q):
    """Return (p, k) with q = p**k, or raise if q is not a prime power."""
    if q < 2:
        raise AlgebraError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise AlgebraError(f"{q} is not a prime power")
    return p, k


# -- polynomials over F_p, little-endian coefficient lists ------------------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _poly_trim(a)
    return a


def monic_polys(p, d):
    """All monic degree-d polynomials over F_p in little-endian lexicographic order."""
    for low in product(range(p), repeat=d):
        # product() varies the last slot fastest; reverse so c_0 is most significant
        yield list(reversed(low)) + [1]


def _little_endian_order(p, d):
    return sorted(monic_polys(p, d), key=lambda c: tuple(c))


def is_irreducible(coeffs, p):
    """True iff the monic polynomial has no monic divisor of degree 1..deg-1."""
    k = len(coeffs) - 1
    for d in range(1, k // 2 + 1):
        for g in monic_polys(p, d):
            if not _poly_mod(coeffs, g, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple

    @property
    def q(self):
        return self.p ** self.k

    def __repr__(self):
        return f"GF({self.q})"

    # ---- element <-> coefficient conversion

    def coeffs(self, e):
        out = []
        for _ in range(self.k):
            out.append(e % self.p)
            e //= self.p
        return out

    def encode(self, coeffs):
        e = 0
        for c in reversed(list(coeffs)):
            e = e * self.p + c % self.p
        return e

    # ---- lookup tables, built lazily once per field

    @cached_property
    def add_table(self):
        q, p = self.q, self.p
        cs = [self.coeffs(e) for e in range(q)]
        return [[self.encode((a + b) % p for a, b in zip(cs[x], cs[y]))
                 for y in range(q)] for x in range(q)]

    @cached_property
    def mul_table(self):
        q, p, k = self.q, self.p, self.k
        cs = [self.coeffs(e) for e in range(q)]
        table = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(x, q):
                prod = [0] * (2 * k - 1)
                for i, a in enumerate(cs[x]):
                    if a:
                        for j, b in enumerate(cs[y]):
                            prod[i + j] = (prod[i + j] + a * b) % p
                r = _poly_mod(prod, self.modulus, p)
                table[x][y] = table[y][x] = self.encode(r + [0] * (k - len(r)))
        return table

    @cached_property
    def neg_table(self):
        return [self.encode((-c) % self.p for c in self.coeffs(e)) for e in range(self.q)]

    @cached_property
    def inv_table(self):
        inv = [None] * self.q
        mul = self.mul_table
        for x in range(1, self.q):
            for y in range(1, self.q):
                if mul[x][y] == 1:
                    inv[x] = y
                    break
        return inv

    # ---- arithmetic

    def add(self, x, y):
        return self.add_table[x][y]

    def sub(self, x, y):
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def neg(self, x):
        return self.neg_table[x]

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_table[x]

    def div(self, x, y):
        return self.mul_table[x][self.inv(y)]

    def pow(self, x, e):
        r = 1
        for _ in range(e):
            r = self.mul_table[r][x]
        return r

    def from_int(self, n):
        """Image of the integer n under Z -> F_p -> F."""
        return n % self.p

    @property
    def elements(self):
        return range(self.q)

    def to_json(self):
        return {"p": self.p, "k": self.k, "q": self.q, "modulus": list(self.modulus)}


def gf_make(p, k=1, modulus=None):
    """
    Build GF(p^k).  Without an explicit modulus the lexicographically smallest
    (little-endian) monic irreducible of degree k is used.
    """
    if not is_prime(p):
        raise AlgebraError(f"characteristic {p} is not prime")
    if k < 1:
        raise AlgebraError(f"extension degree must be >= 1, got {k}")
    if p ** k > MAX_TABLE_ORDER:
        raise AlgebraError(f"field order {p ** k} exceeds table limit {MAX_TABLE_ORDER}")
    if modulus is None:
        for cand in _little_endian_order(p, k):
            if is_irreducible(cand, p):
                modulus = cand
                break
    modulus = tuple(int(c) for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise AlgebraError(f"modulus {modulus} is not monic of degree {k}")
    if any(not 0 <= c < p for c in modulus):
        raise AlgebraError(f"modulus coefficients must lie in [0, {p})")
    if not is_irreducible(modulus, p):
        raise AlgebraError(f"modulus {modulus} is reducible over F_{p}")
    return FieldSpec(p, k, modulus)


def gf(q):
    """Canonical GF(q) for a prime power q."""
    p, k = prime_power(q)
    return gf_make(p, k)


def gf_add(F, x, y):
    return F.add(x, y)


def gf_mul(F, x, y):
    return F.mul(x, y)


def gf_neg(F, x):
    return F.neg(x)


def gf_inv(F, x):
    return F.inv(x)


def has_root(F, alpha, beta):
    return any(F.add(F.add(F.mul(x, x), F.mul(alpha, x)), beta) == 0 for x in F.elements)


def find_irreducible_quadratic(F):
    """Smallest (beta, alpha) such that x^2 + alpha*x + beta has no root in F; returns (alpha, beta)."""
    for beta in F.elements:
        for alpha in F.elements:
            if not has_root(F, alpha, beta):
                return alpha, beta
    raise AlgebraError("no irreducible quadratic found")  # unreachable for a field


def quadratic_form(F, a, b, alpha, beta):
    """Q(a, b) = a^2 + alpha*a*b + beta*b^2."""
    mul, add = F.mul, F.add
    return add(add(mul(a, a), mul(alpha, mul(a, b))), mul(beta, mul(b, b)))
