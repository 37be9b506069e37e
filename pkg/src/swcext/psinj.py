"""
G-pseudo-injectivity of V = F_q^n: every injective linear f: U -> V that
keeps each vector in its G-orbit extends to an element of the closure of G.

Only the orbit partition of G matters (the closure is defined by it), so the
search works on partitions and never materializes the closure.
"""

import logging
from dataclasses import dataclass

from swcext.algebra.field import gf, has_root
from swcext.algebra.linalg import (
    Subspace, block_diag, identity, is_invertible, mat_det, mat_mul, rank, subspaces,
    vec_add, vec_mat, vec_scale, vector_space,
)
from swcext.errors import AlgebraError, GuardError
from swcext.grp import (
    GL_GUARD, closed_subgroups, closure, cyclic_group, find_orbit_preserving_extension,
    orbits, partition_of,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PsinjWitness:
    U: object
    f_images: tuple
    reason: str            # "extends" or "no_extension"
    extension: tuple = None

    def to_json(self):
        return {
            "U": self.U.to_json(),
            "f_images": [list(v) for v in self.f_images],
            "reason": self.reason,
            "extension": None if self.extension is None else [list(r) for r in self.extension],
        }


def orbit_preserving_injections(F, P, U):
    """
    Every linear f: U -> V (as images of U's RREF basis) with f(u) in the
    orbit of u for all u in U.  Injectivity follows since {0} is an orbit.
    """
    V = vector_space(F, P.n)
    idx, oid, vecs = V.index, P.orbit_id, V.vectors
    zero = (0,) * P.n
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
        if i == U.dim:
            yield tuple(images)
            return
        s = U.basis[i]
        for j in P.block_of(idx(s)):
            t = vecs[j]
            nxt = extend(pairs, s, t)
            if nxt is not None:
                yield from rec(i + 1, nxt, images + [t])

    yield from rec(0, [(zero, zero)], [])


def is_pseudo_injective(F, n, G, guard=GL_GUARD):
    """
    Returns (answer, witness).  witness is the first non-extendable map in
    canonical order, or None.  Subspaces of dimension < 2 always extend and
    U = V gives f in the closure directly, so only 2 <= dim U < n is searched.
    """
    P = partition_of(G)
    if P.n != n:
        raise AlgebraError(f"group acts on F^{P.n}, not F^{n}")
    for d in range(2, n):
        for U in subspaces(F, n, d):
            for images in orbit_preserving_injections(F, P, U):
                g = find_orbit_preserving_extension(F, P, list(zip(U.basis, images)), guard)
                if g is None:
                    return False, PsinjWitness(U, images, "no_extension")
    return True, None


def validate_witness(F, P, w, guard=GL_GUARD):
    """Independent re-check: f injective, orbit-preserving, no orbit-preserving g extends it."""
    V = vector_space(F, P.n)
    if rank(F, w.f_images) != w.U.dim:
        return False
    for coeffs in vector_space(F, w.U.dim).vectors:
        u = vec_mat(F, coeffs, w.U.basis)
        fu = vec_mat(F, coeffs, w.f_images)
        if P.orbit_id[V.index(u)] != P.orbit_id[V.index(fu)]:
            return False
    return find_orbit_preserving_extension(F, P, list(zip(w.U.basis, w.f_images)), guard) is None


# -- counterexample matrices ---------------------------------------------------

def mat_order(F, M, limit=10 ** 6):
    I = identity(len(M))
    A = M
    for k in range(1, limit + 1):
        if A == I:
            return k
        A = mat_mul(F, A, M)
    raise AlgebraError("order limit exceeded")


def find_primitive_quadratic(F):
    """Smallest (beta, alpha) such that x^2 + alpha x + beta is irreducible with a root of order q^2-1."""
    q = F.q
    for beta in F.elements:
        for alpha in F.elements:
            if has_root(F, alpha, beta):
                continue
            if mat_order(F, companion(F, alpha, beta)) == q * q - 1:
                return alpha, beta
    raise AlgebraError("no primitive quadratic")  # unreachable


def companion(F, alpha, beta):
    """Multiplication by a root w of x^2 + alpha x + beta on basis (1, w): (1,0) -> (0,1)."""
    return ((0, 1), (F.neg(beta), F.neg(alpha)))


def primitive_mult_matrix(F):
    """Multiplication matrix of a generator of F_{q^2}^*, with (1,0)M = (0,1)."""
    return companion(F, *find_primitive_quadratic(F))


def build_T(F, m, M):
    if len(M) != m or not is_invertible(F, M):
        raise AlgebraError("M must be an invertible m x m matrix")
    return block_diag(*([M] * m))


def build_Tprime(F, n, m, M):
    if n <= m * m:
        raise AlgebraError(f"n = {n} must exceed m^2 = {m * m}; use build_T")
    return block_diag(build_T(F, m, M), identity(n - m * m))


def build_X(F, M=None):
    if F.q == 2:
        raise AlgebraError("X needs q != 2: over F_2 the determinant is always 1")
    M = primitive_mult_matrix(F) if M is None else M
    return block_diag(M, ((mat_det(F, M),),))


def _unit(n, i):
    return tuple(int(i == j) for j in range(n))


def _swap_witness(F, n, G, guard, materialize_closure):
    """Shared part of the two counterexamples: U = <e1, e2>, f swaps them."""
    P = orbits(G)
    e1, e2 = _unit(n, 0), _unit(n, 1)
    U = Subspace.span(F, n, [e1, e2])
    V = vector_space(F, n)
    labels = {P.orbit_id[V.index(u)] for u in U.elements(F)}
    witness = PsinjWitness(U, (e2, e1), "no_extension")

    def swaps(g):
        return vec_mat(F, e1, g) == e2 and vec_mat(F, e2, g) == e1

    report = {
        "n": n, "q": F.q,
        "group_order": len(G),
        "U_orbit_count": len(labels),
        "U_meets_two_orbits": len(labels) == 2,
        "f_orbit_preserving": all(
            P.orbit_id[V.index(u)] == P.orbit_id[V.index((u[1], u[0]) + u[2:])]
            for u in U.elements(F)),
        "no_group_element_swaps": not any(swaps(g) for g in G.elements),
    }
    # backtracking over the closure is bounded by orbit sizes, not |GL|: no guard
    report["no_extension"] = find_orbit_preserving_extension(F, P, [(e1, e2), (e2, e1)], None) is None
    report["closure_order"] = None
    report["closed"] = None
    if materialize_closure:
        try:
            Gbar = closure(G, guard)
        except GuardError:
            log.warning("closure of the group in GL_%d(F_%d) skipped by guard; closedness not confirmed", n, F.q)
            report["closure_skipped"] = True
        else:
            report["closure_order"] = len(Gbar)
            report["closed"] = len(Gbar) == len(G)
            report["no_closure_element_swaps"] = not any(swaps(g) for g in Gbar.elements)
    report["valid"] = all(report[k] for k in ("U_meets_two_orbits", "f_orbit_preserving", "no_extension"))
    report["valid"] = report["valid"] and report.get("no_closure_element_swaps", True)
    return witness, report


def counterexample_dim_ge4(F, n, guard=GL_GUARD, materialize_closure=True):
    if n < 4:
        raise AlgebraError("needs n >= 4")
    M = primitive_mult_matrix(F)
    T = build_T(F, 2, M) if n == 4 else build_Tprime(F, n, 2, M)
    G = cyclic_group(F, T)
    witness, report = _swap_witness(F, n, G, guard, materialize_closure)
    report["generator"] = [list(r) for r in T]
    return witness, report


def counterexample_dim3(F, guard=GL_GUARD, materialize_closure=True):
    X = build_X(F)
    G = cyclic_group(F, X)
    witness, report = _swap_witness(F, 3, G, guard, materialize_closure)
    report["generator"] = [list(r) for r in X]
    return witness, report


# -- the F_2^3 computation ----------------------------------------------------

def f23_check(guard=GL_GUARD, cross_check=True):
    """
    For every closed G <= GL_3(F_2) with {(1,0,0)} an orbit: every c in the
    orbit of (0,1,0) with (1,0,0)+c in the orbit of (1,1,0) is reached by
    some g in G fixing (1,0,0) and sending (0,1,0) to c.
    """
    F = gf(2)
    V = vector_space(F, 3)
    a, b, ab = (1, 0, 0), (0, 1, 0), (1, 1, 0)
    census = closed_subgroups(F, 3, guard=guard)
    fixing = [(P, G) for P, G in census if len(P.block_of(V.index(a))) == 1]
    cases = []
    ok = True
    for P, G in fixing:
        oid = P.orbit_id
        for j in P.block_of(V.index(b)):
            c = V.vectors[j]
            if oid[V.index(vec_add(F, a, c))] != oid[V.index(ab)]:
                continue
            found = any(vec_mat(F, a, g) == a and vec_mat(F, b, g) == c for g in G.elements)
            cases.append({"group_order": len(G), "c": list(c), "found": found})
            ok = ok and found
    report = {
        "closed_subgroups": len(census),
        "closed_fixing_a": len(fixing),
        "cases": len(cases),
        "step2": ok,
    }
    if cross_check:
        report["cross_check"] = all(is_pseudo_injective(F, 3, P, guard)[0] for P, _ in census)
    report["result"] = ok and report.get("cross_check", True)
    return report


def classify(n, q):
    """Pseudo-injective for every G iff n < 3 or (n, q) = (3, 2)."""
    return n < 3 or (n == 3 and q == 2)


# Consequence for codes of length one over A = F_q^ell, taken from
# classify(): ell = 3, q = 2 is excluded, since F_2^3 is pseudo-injective
# for every group.
COROLLARY_NOTE = (
    "an unextendable swc-isometry of a length-1 code exists iff ell >= 4, or ell = 3 and q != 2"
)


def computed_outcome(F, n, guard=GL_GUARD):
    """
    Decide 'V is G-pseudo-injective for every G' by computation: census of
    closed subgroups when feasible, the explicit counterexamples otherwise.
    """
    q = F.q
    if n >= 4:
        _, rep = counterexample_dim_ge4(F, n, guard)
        return not rep["valid"], {"method": "counterexample_T", **rep}
    if n == 3 and q != 2:
        _, rep = counterexample_dim3(F, guard)
        return not rep["valid"], {"method": "counterexample_X", **rep}
    census = closed_subgroups(F, n, guard=guard)
    results = [is_pseudo_injective(F, n, P, guard)[0] for P, _ in census]
    return all(results), {"method": "census", "closed_subgroups": len(census)}
