"""
Dense linear algebra over GF(q).

Matrices are tuples of row tuples of field elements (ints), vectors are
tuples.  Row-vector convention: a matrix A acts as v -> vA.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from swcext.errors import AlgebraError, GuardError

ENUM_GUARD = 1 << 24


def check_guard(count, guard, what):
    if guard is not None and count > guard:
        raise GuardError(f"{what}: {count} exceeds guard {guard}")


def zeros(rows, cols):
    return tuple((0,) * cols for _ in range(rows))


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def as_mat(rows):
    return tuple(tuple(int(x) for x in r) for r in rows)


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def transpose(A):
    return tuple(zip(*A))


def hstack(*blocks):
    return tuple(sum((b[i] for b in blocks), ()) for i in range(len(blocks[0])))


def block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    rows, off = [], 0
    for b in blocks:
        w = len(b)
        for r in b:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - w))
        off += w
    return tuple(rows)


def vec_add(F, u, v):
    add = F.add_table
    return tuple(add[a][b] for a, b in zip(u, v))


def vec_sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(F, c, v):
    mc = F.mul_table[c]
    return tuple(mc[a] for a in v)


def vec_mat(F, v, A):
    """Row vector times matrix."""
    add, mul = F.add_table, F.mul_table
    out = [0] * (len(A[0]) if A else 0)
    for c, row in zip(v, A):
        if c:
            mc = mul[c]
            for j, a in enumerate(row):
                if a:
                    out[j] = add[out[j]][mc[a]]
    return tuple(out)


def mat_mul(F, A, B):
    if A and len(A[0]) != len(B):
        raise AlgebraError(f"shape mismatch {shape(A)} x {shape(B)}")
    return tuple(vec_mat(F, r, B) for r in A)


def mat_pow(F, A, e):
    R = identity(len(A))
    for _ in range(e):
        R = mat_mul(F, R, A)
    return R


def row_reduce(F, A):
    """
    Reduced row echelon form.  Returns (R, pivots): R has the same shape as A,
    nonzero rows first, and pivots lists the pivot column of each nonzero row.
    """
    rows = [list(r) for r in A]
    if not rows:
        return (), []
    nrows, ncols = len(rows), len(rows[0])
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [mul[inv][x] for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = neg[rows[i][c]]
                mf = mul[f]
                rows[i] = [add[x][mf[y]] for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(x) for x in rows), pivots


def rank(F, A):
    return len(row_reduce(F, A)[1])


def mat_det(F, A):
    n = len(A)
    rows = [list(r) for r in A]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = F.neg(det)
        det = F.mul(det, rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c]:
                f = F.neg(F.mul(rows[i][c], inv))
                rows[i] = [F.add(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return det


def mat_inv(F, A):
    n, m = shape(A)
    if n != m:
        raise AlgebraError(f"cannot invert non-square {n}x{m} matrix")
    R, pivots = row_reduce(F, hstack(A, identity(n)))
    if pivots[:n] != list(range(n)):
        raise AlgebraError("matrix is singular")
    return tuple(r[n:] for r in R)


def is_invertible(F, A):
    n, m = shape(A)
    return n == m and rank(F, A) == n


def _null_basis(F, A, ncols):
    R, pivots = row_reduce(F, A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][fc])
        basis.append(tuple(v))
    return basis


def kernel(F, A):
    """Null space {x : A x^T = 0} as a Subspace of F^cols."""
    ncols = shape(A)[1]
    return Subspace.span(F, ncols, _null_basis(F, A, ncols))


def image(F, A):
    """Column space of A as a Subspace of F^rows."""
    return Subspace.span(F, len(A), transpose(A))


def left_kernel(F, A):
    """{w : wA = 0}: the kernel of the map w -> wA."""
    return kernel(F, transpose(A))


def row_space(F, A):
    """Image of the map w -> wA."""
    return Subspace.span(F, shape(A)[1], A)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^ambient stored by its canonical RREF basis."""

    ambient: int
    basis: tuple

    @classmethod
    def span(cls, F, ambient, vectors):
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise AlgebraError(f"vector of length {len(v)} in ambient {ambient}")
        if not vectors:
            return cls(ambient, ())
        R, pivots = row_reduce(F, vectors)
        return cls(ambient, R[:len(pivots)])

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, ())

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return [next(i for i, x in enumerate(r) if x) for r in self.basis]

    def size(self, F):
        return F.q ** self.dim

    def elements(self, F):
        for coeffs in product(range(F.q), repeat=self.dim):
            v = (0,) * self.ambient
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = vec_add(F, v, vec_scale(F, c, b))
            yield v

    def contains(self, F, v):
        # reduce v against the RREF basis
        v = tuple(v)
        for b, pc in zip(self.basis, self.pivots):
            if v[pc]:
                v = vec_sub(F, v, vec_scale(F, v[pc], b))
        return not any(v)

    def sum(self, F, other):
        return Subspace.span(F, self.ambient, self.basis + other.basis)

    def intersection(self, F, other):
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        # x = sum a_i u_i = sum b_j v_j  <=>  (a, -b) in left kernel of [U; V]
        stacked = self.basis + other.basis
        ker = left_kernel(F, stacked)
        vecs = [vec_mat(F, k[:self.dim], self.basis) for k in ker.basis]
        return Subspace.span(F, self.ambient, vecs)

    def to_json(self):
        return [list(r) for r in self.basis]


def gaussian_binomial(m, d, q):
    if not 0 <= d <= m:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspaces(F, m, d, guard=ENUM_GUARD):
    """All d-dimensional subspaces of F^m, each as its canonical RREF."""
    if not 0 <= d <= m:
        raise AlgebraError(f"dimension {d} out of range for ambient {m}")
    check_guard(F.q ** m, guard, f"subspaces of F_{F.q}^{m}")
    out = []
    for pivots in combinations(range(m), d):
        # free slots: row r, column c > pivots[r], c not a pivot column
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        for vals in product(range(F.q), repeat=len(slots)):
            rows = [[0] * m for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(slots, vals):
                rows[r][c] = x
            out.append(Subspace(m, tuple(tuple(r) for r in rows)))
    return out


def all_subspaces(F, m, guard=ENUM_GUARD):
    return [S for d in range(m + 1) for S in subspaces(F, m, d, guard)]


def coset_intersection_size(F, x, U, y, V):
    """|(x + U) & (y + V)|, which is 0 or |U & V|."""
    if not U.sum(F, V).contains(F, vec_sub(F, x, y)):
        return 0
    return U.intersection(F, V).size(F)


class VectorSpace:
    """
    F^n with a fixed enumeration: vector v has index sum(v[i] * q**(n-1-i)),
    so index order is lexicographic order of tuples.
    """

    def __init__(self, F, n):
        self.F = F
        self.n = n
        self.size = F.q ** n
        self.vectors = list(product(range(F.q), repeat=n))
        self._weights = [F.q ** (n - 1 - i) for i in range(n)]

    def index(self, v):
        return sum(a * w for a, w in zip(v, self._weights))

    def action(self, g):
        """Permutation of vector indices induced by v -> vg."""
        F, idx = self.F, self.index
        return tuple(idx(vec_mat(F, v, g)) for v in self.vectors)


@lru_cache(maxsize=None)
def vector_space(F, n, guard=ENUM_GUARD):
    check_guard(F.q ** n, guard, f"vectors of F_{F.q}^{n}")
    return VectorSpace(F, n)
