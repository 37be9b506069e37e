"""
Finite matrix groups acting on F_q^n from the right, their orbit
partitions, closures and the poset of orbit partitions.

A group only enters the swc machinery through its orbits, so most
functions here accept an OrbitPartition where a group would do.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from swcext.algebra.linalg import (
    check_guard, identity, is_invertible, mat_inv, mat_mul, rank, vec_add, vec_mat,
    vec_scale, vector_space,
)
from swcext.errors import AlgebraError

GROUP_GUARD = 10 ** 6
GL_GUARD = 10 ** 7


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


@dataclass(frozen=True)
class MatGroup:
    n: int
    field: object
    generators: tuple
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    @cached_property
    def element_set(self):
        return frozenset(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def to_json(self):
        return {
            "n": self.n,
            "q": self.field.q,
            "field": self.field.to_json(),
            "generators": [[list(r) for r in g] for g in self.generators],
            "element_count": len(self.elements),
        }


@dataclass(frozen=True)
class OrbitPartition:
    """orbit_id[i] is the smallest vector index in the orbit of vector i."""

    n: int
    q: int
    orbit_id: tuple

    @cached_property
    def blocks(self):
        out = {}
        for i, lab in enumerate(self.orbit_id):
            out.setdefault(lab, []).append(i)
        return out

    @property
    def labels(self):
        return sorted(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def block_of(self, index):
        return self.blocks[self.orbit_id[index]]

    def to_json(self):
        return {"n": self.n, "q": self.q, "orbit_id": list(self.orbit_id)}


def _canonical(n, q, parent):
    """Relabel a union-find forest (or any labelling) by block minima."""
    lowest = {}
    for i, r in enumerate(parent):
        lowest.setdefault(r, i)
    return OrbitPartition(n, q, tuple(lowest[r] for r in parent))


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _partition_from_perms(n, q, perms):
    size = q ** n
    parent = list(range(size))
    for perm in perms:
        for i, j in enumerate(perm):
            a, b = _find(parent, i), _find(parent, j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return _canonical(n, q, [_find(parent, i) for i in range(size)])


def singleton_partition(n, q):
    return OrbitPartition(n, q, tuple(range(q ** n)))


def gl_partition(n, q):
    """Orbits of GL_n: {0} and everything else."""
    return OrbitPartition(n, q, (0,) + (1,) * (q ** n - 1))


def group_generate(F, n, gens, guard=GROUP_GUARD):
    """Closure of gens under products; the identity is always included."""
    gens = tuple(tuple(tuple(r) for r in g) for g in gens)
    for g in gens:
        if len(g) != n or not is_invertible(F, g):
            raise AlgebraError("generator is not an invertible %dx%d matrix" % (n, n))
    I = identity(n)
    seen = {I}
    queue = deque([I])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = mat_mul(F, a, g)
            if b not in seen:
                seen.add(b)
                check_guard(len(seen), guard, "group order")
                queue.append(b)
    return MatGroup(n, F, gens, tuple(sorted(seen)))


def cyclic_group(F, g, guard=GROUP_GUARD):
    return group_generate(F, len(g), [g], guard)


def trivial_group(F, n):
    return group_generate(F, n, [])


def small_generating_set(F, n, elements):
    """Greedy generating set: scan in canonical order, keep what is not yet generated."""
    gens, current = [], {identity(n)}
    for g in sorted(elements):
        if g not in current:
            gens.append(g)
            current = set(group_generate(F, n, gens).elements)
    return tuple(gens)


def _as_group(F, n, elements):
    elements = tuple(sorted(elements))
    return MatGroup(n, F, small_generating_set(F, n, elements), elements)


def orbits(G, guard=None):
    """Partition of F_q^n into orbits of v -> vg."""
    V = vector_space(G.field, G.n) if guard is None else vector_space(G.field, G.n, guard)
    return _partition_from_perms(G.n, G.field.q, [V.action(g) for g in G.generators])


def partition_of(group_or_partition):
    if isinstance(group_or_partition, OrbitPartition):
        return group_or_partition
    return orbits(group_or_partition)


def orbit_preserving_maps(F, P, fixed=(), guard=GL_GUARD):
    """
    Yield every g in GL_n(F) mapping each block of P onto itself and sending
    fixed[i][0] to fixed[i][1].  The fixed source vectors must be independent.

    Backtracking over images of a basis that starts with the fixed sources,
    pruning on the partial span.  Since {0} is a block, orbit preservation on
    the span already forces injectivity.
    """
    n = P.n
    check_guard(gl_order(n, F.q), guard, f"|GL_{n}(F_{F.q})|")
    V = vector_space(F, n)
    idx, oid, vecs = V.index, P.orbit_id, V.vectors

    sources = [tuple(s) for s, _ in fixed]
    targets = [tuple(t) for _, t in fixed]
    basis = list(sources)
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        if rank(F, basis + [e]) == len(basis) + 1:
            basis.append(e)
        if len(basis) == n:
            break
    try:
        binv = mat_inv(F, tuple(basis))
    except AlgebraError:
        raise AlgebraError("fixed source vectors are not independent") from None
    scalars = range(1, F.q)

    def extend(pairs, s, t):
        new = []
        for a, b in pairs:
            for c in scalars:
                u = vec_add(F, a, vec_scale(F, c, s))
                w = vec_add(F, b, vec_scale(F, c, t))
                if oid[idx(u)] != oid[idx(w)]:
                    return None
                new.append((u, w))
        return pairs + new

    def rec(i, pairs, images):
        if i == n:
            # g = B^{-1} * images, since B g = images row by row
            yield mat_mul(F, binv, tuple(images))
            return
        s = basis[i]
        cands = [targets[i]] if i < len(targets) else [vecs[j] for j in P.block_of(idx(s))]
        for t in cands:
            nxt = extend(pairs, s, t)
            if nxt is not None:
                yield from rec(i + 1, nxt, images + [t])

    zero = (0,) * n
    yield from rec(0, [(zero, zero)], [])


def find_orbit_preserving_extension(F, P, fixed, guard=GL_GUARD):
    """First g (in search order) preserving the blocks of P with s g = t for (s, t) in fixed."""
    return next(orbit_preserving_maps(F, P, fixed, guard), None)


def partition_stabilizer(F, P, guard=GL_GUARD):
    """All g in GL_n(F) fixing every block of P setwise; always a closed group."""
    return _as_group(F, P.n, orbit_preserving_maps(F, P, (), guard))


def general_linear_group(F, n, guard=GL_GUARD):
    return partition_stabilizer(F, gl_partition(n, F.q), guard)


def closure(G, guard=GL_GUARD):
    return partition_stabilizer(G.field, orbits(G), guard)


def closure_bruteforce(G, guard=GL_GUARD):
    """
    Closure by testing every matrix of GL_n(F) against the orbits; shares no
    search code with closure().  Over F_2 all 2^(n^2) bit matrices are swept
    with numpy.
    """
    F, n = G.field, G.n
    check_guard(gl_order(n, F.q), guard, f"|GL_{n}(F_{F.q})|")
    oid = orbits(G).orbit_id
    if F.q == 2:
        return _as_group(F, n, _sweep_gf2(n, oid))
    V = vector_space(F, n)
    keep = [g for g in _all_invertible(F, n)
            if all(oid[i] == oid[j] for i, j in enumerate(V.action(g)))]
    return _as_group(F, n, keep)


def _sweep_gf2(n, oid, chunk=1 << 20):
    """
    All n x n bit matrices (row i = bits n*i .. n*i+n-1 of the counter) that
    keep every vector in its orbit.  Vector indices are bit masks with
    coordinate i at bit n-1-i, so images are XORs of row masks.
    """
    oid = np.asarray(oid, dtype=np.int64)
    size = 1 << n
    mask = size - 1
    total = 1 << (n * n)
    found = []
    for start in range(0, total, chunk):
        m = np.arange(start, min(start + chunk, total), dtype=np.int64)
        rows = [(m >> (n * i)) & mask for i in range(n)]
        img = [np.zeros_like(m)]
        ok = np.ones(len(m), dtype=bool)
        for v in range(1, size):
            low = v & -v
            coord = n - low.bit_length()
            img.append(img[v ^ low] ^ rows[coord])
            ok &= oid[img[v]] == oid[v]
        for x in m[ok].tolist():
            found.append(tuple(
                tuple(((x >> (n * i)) >> (n - 1 - j)) & 1 for j in range(n)) for i in range(n)))
    return found


def _all_invertible(F, n):
    """Rows chosen one at a time outside the span of the previous ones."""
    vecs = vector_space(F, n).vectors[1:]

    def rec(rows):
        if len(rows) == n:
            yield tuple(rows)
            return
        for v in vecs:
            if rank(F, rows + [v]) == len(rows) + 1:
                yield from rec(rows + [v])

    yield from rec([])


def is_closed(G, guard=GL_GUARD):
    return len(closure(G, guard)) == len(G)


def in_closure(F, P, g):
    """True iff g maps every block of P onto itself."""
    V = vector_space(F, P.n)
    oid = P.orbit_id
    return all(oid[i] == oid[j] for i, j in enumerate(V.action(g)))


def _check_same(P1, P2):
    if (P1.n, P1.q) != (P2.n, P2.q):
        raise AlgebraError(f"partitions over different spaces: {(P1.n, P1.q)} vs {(P2.n, P2.q)}")


def partition_finer(P1, P2):
    """P1 <= P2: every block of P2 is a union of blocks of P1."""
    _check_same(P1, P2)
    coarse = {}
    for a, b in zip(P1.orbit_id, P2.orbit_id):
        if coarse.setdefault(a, b) != b:
            return False
    return True


def partition_join(P1, P2):
    """Finest common coarsening of P1 and P2."""
    _check_same(P1, P2)
    parent = list(range(len(P1.orbit_id)))
    for lab in (P1.orbit_id, P2.orbit_id):
        for i, r in enumerate(lab):
            a, b = _find(parent, i), _find(parent, r)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return _canonical(P1.n, P1.q, [_find(parent, i) for i in range(len(parent))])


def cyclic_partition(F, g):
    n = len(g)
    return _partition_from_perms(n, F.q, [vector_space(F, n).action(g)])


def poset_partitions(F, n, guard=GL_GUARD):
    """
    Every orbit partition of a subgroup of GL_n(F): the join-closure of the
    orbit partitions of cyclic subgroups.
    """
    gl = orbit_preserving_maps(F, gl_partition(n, F.q), (), guard)
    atoms = sorted({cyclic_partition(F, g) for g in gl}, key=lambda P: P.orbit_id)
    found = set(atoms)
    frontier = list(atoms)
    while frontier:
        nxt = []
        for P in frontier:
            for A in atoms:
                J = partition_join(P, A)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda P: (len(P.blocks), P.orbit_id), reverse=True)


def closed_subgroups(F, n, fixing=None, guard=GL_GUARD):
    """
    All closed subgroups of GL_n(F), one per poset element.  With fixing=x,
    keep only those in which {x} is an orbit.
    """
    out = []
    V = vector_space(F, n)
    for P in poset_partitions(F, n, guard):
        if fixing is not None and len(P.block_of(V.index(tuple(fixing)))) != 1:
            continue
        out.append((P, partition_stabilizer(F, P, guard)))
    return out


def point_stabilizer(G, x):
    x = tuple(x)
    F = G.field
    return _as_group(F, G.n, [g for g in G.elements if vec_mat(F, x, g) == x])
