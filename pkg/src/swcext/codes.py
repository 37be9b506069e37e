"""
Linear codes over the alphabet A = F_q^ell, symmetrized weight compositions,
isometry and extension checks.

A code is given by a full-rank k x (n*ell) generator matrix; coordinate i is
the i-th column block of width ell, i.e. the map lambda_i: W = F^k -> A,
w -> w * gen[:, i*ell:(i+1)*ell].  A map f on the code is given by a second
matrix mu with mu = f(lambda).
"""

from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product

from swcext.algebra.linalg import (
    Subspace, all_subspaces, check_guard, identity, mat_mul, rank, row_reduce, vec_add,
    vec_mat, vec_scale, vector_space, ENUM_GUARD,
)
from swcext.errors import CodeError
from swcext.grp import (
    GL_GUARD, find_orbit_preserving_extension, gl_partition, orbit_preserving_maps,
    partition_of, singleton_partition,
)


@dataclass(frozen=True)
class Code:
    field: object
    ell: int
    n: int
    gen: tuple

    def __post_init__(self):
        if any(len(r) != self.n * self.ell for r in self.gen):
            raise CodeError(f"generator rows must have length n*ell = {self.n * self.ell}")
        if rank(self.field, self.gen) != len(self.gen):
            raise CodeError("generator matrix is not of full row rank")

    @property
    def k(self):
        return len(self.gen)

    def block(self, i):
        """k x ell matrix of the coordinate map lambda_i."""
        lo = i * self.ell
        return tuple(r[lo:lo + self.ell] for r in self.gen)

    def blocks(self):
        return [self.block(i) for i in range(self.n)]

    def encode(self, w):
        return vec_mat(self.field, w, self.gen)

    def messages(self, guard=ENUM_GUARD):
        return vector_space(self.field, self.k, guard).vectors

    def codewords(self, guard=ENUM_GUARD):
        return [self.encode(w) for w in self.messages(guard)]

    def row_space(self):
        return Subspace.span(self.field, self.n * self.ell, self.gen)

    def to_json(self):
        return {
            **self.field.to_json(),
            "ell": self.ell,
            "n": self.n,
            "gen": [list(r) for r in self.gen],
        }


@dataclass(frozen=True)
class CodeMap:
    """f: C -> A^n given by mu = f(lambda) on W."""

    source: Code
    mu: tuple

    def __post_init__(self):
        C = self.source
        if len(self.mu) != C.k or any(len(r) != C.n * C.ell for r in self.mu):
            raise CodeError("mu must have the shape of the source generator matrix")

    def block(self, i):
        lo = i * self.source.ell
        return tuple(r[lo:lo + self.source.ell] for r in self.mu)

    def image(self, w):
        return vec_mat(self.source.field, w, self.mu)

    def image_code(self):
        """f(C) as a Code; raises if f is not injective."""
        C = self.source
        return Code(C.field, C.ell, C.n, self.mu)

    def to_json(self):
        return {"code": self.source.to_json(), "mu": [list(r) for r in self.mu]}


@dataclass(frozen=True)
class MonomialMap:
    """h(a)_i = a_{perm[i]} * autos[i] (0-based perm)."""

    perm: tuple
    autos: tuple

    def apply(self, F, a, ell):
        out = ()
        for i, g in zip(self.perm, self.autos):
            out += vec_mat(F, a[i * ell:(i + 1) * ell], g)
        return out

    def to_json(self):
        return {"perm": list(self.perm), "autos": [[list(r) for r in g] for g in self.autos]}


def _blocks_of(a, ell):
    if len(a) % ell:
        raise CodeError(f"word length {len(a)} not divisible by ell={ell}")
    return [tuple(a[i:i + ell]) for i in range(0, len(a), ell)]


def hamming_weight(a, ell):
    return sum(1 for b in _blocks_of(a, ell) if any(b))


def swc(F, a, P):
    """Counter orbit-label -> number of coordinates of a lying in that orbit."""
    ell = P.n
    V = vector_space(F, ell)
    return Counter(P.orbit_id[V.index(b)] for b in _blocks_of(a, ell))


def _label_seq(F, a, P):
    V = vector_space(F, P.n)
    return [P.orbit_id[V.index(b)] for b in _blocks_of(a, P.n)]


def _swc_key(F, a, P):
    return tuple(sorted(_label_seq(F, a, P)))


def is_swc_isometry(m, P, guard=ENUM_GUARD):
    """swc(lambda(w)) == swc(mu(w)) for every w in W."""
    P = partition_of(P)
    C = m.source
    F = C.field
    for w in C.messages(guard):
        if _swc_key(F, C.encode(w), P) != _swc_key(F, m.image(w), P):
            return False
    return True


def _coordinate_labels(m, P, guard):
    """Per coordinate, the orbit labels of lambda_i(w) and mu_i(w) over all w."""
    C, F = m.source, m.source.field
    lam = [[] for _ in range(C.n)]
    mu = [[] for _ in range(C.n)]
    for w in C.messages(guard):
        for i, lab in enumerate(_label_seq(F, C.encode(w), P)):
            lam[i].append(lab)
        for i, lab in enumerate(_label_seq(F, m.image(w), P)):
            mu[i].append(lab)
    return lam, mu


def compatibility(m, P, orbit=None, guard=ENUM_GUARD):
    """
    rel[i][j] iff lambda_i^{-1}(O) == mu_j^{-1}(O): for every orbit O at once,
    or only for the orbit with the given label.
    """
    P = partition_of(P)
    lam, mu = _coordinate_labels(m, P, guard)
    if orbit is None:
        return [[lam[i] == mu[j] for j in range(len(mu))] for i in range(len(lam))]
    lam = [[x == orbit for x in row] for row in lam]
    mu = [[x == orbit for x in row] for row in mu]
    return [[lam[i] == mu[j] for j in range(len(mu))] for i in range(len(lam))]


def perfect_matching(rel):
    """
    Perfect matching of rows to columns in a boolean relation by augmenting
    paths, rows in order, columns tried smallest first.  Returns match[i] = j
    or None.
    """
    n = len(rel)
    owner = [None] * n

    def augment(i, seen):
        for j in range(n):
            if rel[i][j] and not seen[j]:
                seen[j] = True
                if owner[j] is None or augment(owner[j], seen):
                    owner[j] = i
                    return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return None
    match = [None] * n
    for j, i in enumerate(owner):
        match[i] = j
    return tuple(match)


def condition2_matching(m, P, orbit=None, guard=ENUM_GUARD):
    """pi with lambda_i^{-1}(O) = mu_{pi(i)}^{-1}(O), or None."""
    return perfect_matching(compatibility(m, P, orbit, guard))


def failing_orbits(m, P, guard=ENUM_GUARD):
    """Orbit labels for which no per-orbit matching exists."""
    P = partition_of(P)
    return [O for O in P.labels if condition2_matching(m, P, O, guard) is None]


def find_block_extension(F, P, src, dst, guard=GL_GUARD):
    """
    g preserving the blocks of P with src * g == dst (both k x ell), or None.
    """
    ell = P.n
    basis, rows = [], []
    for r, v in enumerate(src):
        if rank(F, basis + [v]) > len(basis):
            basis.append(v)
            rows.append(r)
    fixed = [(src[r], dst[r]) for r in rows]
    if not fixed:
        return identity(ell) if not any(any(r) for r in dst) else None
    g = find_orbit_preserving_extension(F, P, fixed, guard)
    # every g agreeing on the row basis gives the same product
    if g is None or mat_mul(F, src, g) != tuple(tuple(r) for r in dst):
        return None
    return g


def extend_to_monomial(m, P, guard=GL_GUARD):
    """
    A MonomialMap h with h(lambda(w)) = mu(w) for all w and autos in the
    closure of the group, or None when none exists.

    mu_i = lambda_{pi(i)} * g_i is a per-pair condition, so existence reduces
    to a perfect matching in the relation "some g in the closure carries
    block j of lambda to block i of mu".
    """
    P = partition_of(P)
    C, F = m.source, m.source.field
    lam = C.blocks()
    mus = [m.block(i) for i in range(C.n)]
    autos = [[find_block_extension(F, P, lam[j], mus[i], guard) for j in range(C.n)]
             for i in range(C.n)]
    match = perfect_matching([[g is not None for g in row] for row in autos])
    if match is None:
        return None
    return MonomialMap(match, tuple(autos[i][j] for i, j in enumerate(match)))


def full_space_isometry_is_monomial(F, n, ell, P, guard=1 << 12):
    """
    Over every invertible f of A^n: f preserves swc iff f extends to (i.e. is)
    a monomial map with autos in the closure.
    """
    P = partition_of(P)
    N = n * ell
    check_guard(F.q ** N, guard, f"|A^n| = {F.q}^{N}")
    whole = Code(F, ell, n, identity(N))
    words = vector_space(F, N).vectors
    for f in orbit_preserving_maps(F, gl_partition(N, F.q), (), GL_GUARD):
        iso = all(_swc_key(F, a, P) == _swc_key(F, vec_mat(F, a, f), P) for a in words)
        mono = extend_to_monomial(CodeMap(whole, f), P) is not None
        if iso != mono:
            return False
    return True


def omega_matrix(F, alpha, beta):
    """Multiplication by a root of x^2 - alpha x + beta on A in the basis (1, omega)."""
    return ((0, 1), (F.neg(beta), alpha))


def min_distance(C, guard=ENUM_GUARD):
    return min(hamming_weight(c, C.ell) for c in C.codewords(guard) if any(c))


def min_distance_ext(C, alpha, beta, guard=ENUM_GUARD):
    """
    Check that C (rows v1..v4, ell=2) is F_{q^2}-linear via v3 = w v1 and
    v4 = w v2, then return (d, is_mds) for the [n, 2] code over F_{q^2}.
    """
    F = C.field
    if C.ell != 2 or C.k != 4:
        raise CodeError("expected a 4-row generator over a 2-dimensional alphabet")
    om = omega_matrix(F, alpha, beta)

    def times_omega(v):
        return sum((vec_mat(F, b, om) for b in _blocks_of(v, 2)), ())

    v1, v2, v3, v4 = C.gen
    if times_omega(v1) != v3 or times_omega(v2) != v4:
        raise CodeError("code is not F_{q^2}-linear in the expected basis")
    d = min_distance(C, guard)
    return d, d == C.n - 2 + 1


# -- exhaustive check of the length bound for the trivial group ---------------

def _swc_preimages(F, P, a, ell):
    """All words with the same swc as a."""
    V = vector_space(F, ell)
    labels = _label_seq(F, a, P)
    seen = set()
    for perm in set(permutations(labels)):
        for choice in product(*(P.blocks[lab] for lab in perm)):
            word = sum((V.vectors[j] for j in choice), ())
            if word not in seen:
                seen.add(word)
                yield word


def swc_isometries(C, P):
    """
    Every F-linear swc-isometry f: C -> A^n, as mu matrices (images of the
    generator rows), found by assigning row images with partial-span pruning.
    """
    F = C.field
    zero = (0,) * (C.n * C.ell)
    scalars = range(1, F.q)

    def extend(pairs, s, t):
        new = []
        for a, b in pairs:
            for c in scalars:
                u = vec_add(F, a, vec_scale(F, c, s))
                w = vec_add(F, b, vec_scale(F, c, t))
                if _swc_key(F, u, P) != _swc_key(F, w, P):
                    return None
                new.append((u, w))
        return pairs + new

    def rec(i, pairs, images):
        if i == C.k:
            yield tuple(images)
            return
        s = C.gen[i]
        for t in sorted(_swc_preimages(F, P, s, C.ell)):
            nxt = extend(pairs, s, t)
            if nxt is not None:
                yield from rec(i + 1, nxt, images + [t])

    yield from rec(0, [(zero, zero)], [])


def verify_bound_trivial_group(F, ell, n, guard=1 << 16, max_failures=None):
    """
    For every nonzero code C in (F^ell)^n and every swc_e-isometry f of C,
    try to extend f to an e-monomial map.  Returns a report dict.
    """
    check_guard(F.q ** (n * ell), guard, f"|A^n| = {F.q}^{n * ell}")
    P = singleton_partition(ell, F.q)
    codes = maps = 0
    failures = []
    for S in all_subspaces(F, n * ell):
        if S.dim == 0:
            continue
        C = Code(F, ell, n, S.basis)
        codes += 1
        for mu in swc_isometries(C, P):
            maps += 1
            m = CodeMap(C, mu)
            if extend_to_monomial(m, P) is None:
                failures.append({"gen": [list(r) for r in C.gen], "mu": [list(r) for r in mu]})
                if max_failures is not None and len(failures) >= max_failures:
                    return _bound_report(F, ell, n, codes, maps, failures, complete=False)
    return _bound_report(F, ell, n, codes, maps, failures, complete=True)


def _bound_report(F, ell, n, codes, maps, failures, complete):
    return {
        "field": F.to_json(),
        "q": F.q, "ell": ell, "n": n,
        "codes": codes,
        "isometries": maps,
        "failures": len(failures),
        "failure_examples": failures[:5],
        "complete": complete,
        "all_extend": not failures,
    }


def code_from_json(F, data):
    return Code(F, int(data["ell"]), int(data["n"]), tuple(tuple(r) for r in data["gen"]))


def reduce_generator(F, rows):
    """Full-rank RREF generator for the span of rows."""
    R, pivots = row_reduce(F, rows)
    return R[:len(pivots)]
