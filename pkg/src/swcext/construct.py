"""
The explicit code over A = F_q^2 of length q+1 with an unextendable
swc_e-automorphism, its subcode analysis, and the embedding into larger
alphabets and lengths.

W = F_q^4 with row vectors; coordinate p of the code is w -> w Lambda_p.
"""

from dataclasses import dataclass, field as dc_field

from swcext.algebra.field import find_irreducible_quadratic, has_root, quadratic_form
from swcext.algebra.linalg import (
    Subspace, hstack, rank, vec_mat, vector_space, zeros,
)
from swcext.codes import (
    Code, CodeMap, condition2_matching, extend_to_monomial, hamming_weight,
    is_swc_isometry, min_distance_ext,
)
from swcext.errors import CodeError
from swcext.grp import gl_partition, singleton_partition


@dataclass(frozen=True)
class ProjPoint:
    a: int
    b: int

    def __str__(self):
        return f"[{self.a}:{self.b}]"


def normalize(F, a, b):
    if b:
        return ProjPoint(F.div(a, b), 1)
    if a:
        return ProjPoint(1, 0)
    raise ValueError("(0, 0) is not a projective point")


def proj_line(F):
    """[a:1] for a ascending, then [1:0]."""
    return [ProjPoint(a, 1) for a in F.elements] + [ProjPoint(1, 0)]


def lambda_matrix(F, a, b, alpha, beta):
    mul, add, neg = F.mul, F.add, F.neg
    Q = quadratic_form(F, a, b, alpha, beta)
    if Q == 0:
        raise CodeError("quadratic form vanishes: chi is not irreducible")
    aa, bb, ab = mul(a, a), mul(b, b), mul(a, b)
    rows = (
        (neg(ab), neg(bb)),
        (aa, ab),
        (mul(beta, bb), neg(add(mul(alpha, bb), ab))),
        (neg(mul(beta, ab)), add(aa, mul(alpha, ab))),
    )
    iq = F.inv(Q)
    return tuple(tuple(mul(iq, x) for x in r) for r in rows)


def m_matrix(F, a, b, alpha, beta):
    L = lambda_matrix(F, a, b, alpha, beta)
    return (L[0], L[2], L[1], L[3])


@dataclass(frozen=True)
class ConstructionResult:
    field: object
    chi: tuple
    points: tuple
    lambdas: tuple
    ms: tuple
    code: Code
    fmap: CodeMap = dc_field(repr=False)

    @property
    def q(self):
        return self.field.q

    def to_json(self):
        alpha, beta = self.chi
        return {
            "field": self.field.to_json(),
            "chi": {"alpha": alpha, "beta": beta},
            "points": [[p.a, p.b] for p in self.points],
            "lambda": [[list(r) for r in L] for L in self.lambdas],
            "M": [[list(r) for r in M] for M in self.ms],
            "gen": [list(r) for r in self.code.gen],
            "image_gen": [list(r) for r in self.fmap.mu],
        }


def build(F, alpha=None, beta=None):
    if alpha is None or beta is None:
        alpha, beta = find_irreducible_quadratic(F)
    elif has_root(F, alpha, beta):
        raise CodeError(f"x^2 + {alpha}x + {beta} is reducible over {F!r}")
    points = proj_line(F)
    lambdas = tuple(lambda_matrix(F, p.a, p.b, alpha, beta) for p in points)
    ms = tuple(m_matrix(F, p.a, p.b, alpha, beta) for p in points)
    code = Code(F, 2, len(points), hstack(*lambdas))
    fmap = CodeMap(code, hstack(*ms))
    return ConstructionResult(F, (alpha, beta), tuple(points), lambdas, ms, code, fmap)


# -- verification -------------------------------------------------------------

def _V(F, p):
    return Subspace.span(F, 4, [(p.a, p.b, 0, 0), (0, 0, p.a, p.b)])


def _U(F, p):
    return Subspace.span(F, 4, [(p.a, 0, p.b, 0), (0, p.a, 0, p.b)])


def _shift(F, x, y, alpha, beta):
    return (F.neg(F.add(F.mul(alpha, x), F.mul(beta, y))), x, x, y)


def _preimages(F, mat, ambient):
    """image value -> set of w in F^ambient with w * mat = value."""
    out = {}
    for w in vector_space(F, ambient).vectors:
        out.setdefault(vec_mat(F, w, mat), set()).add(w)
    return out


def _coset(F, x, S):
    return {tuple(F.add(a, b) for a, b in zip(x, s)) for s in S.elements(F)}


def check_evaluations(res):
    """The four evaluations (a,b,0,0)L = 0, (0,0,a,b)L = 0, (-alpha,1,1,0)L = (1,0), (-beta,0,0,1)L = (0,1)."""
    F = res.field
    alpha, beta = res.chi
    for p, L in zip(res.points, res.lambdas):
        if vec_mat(F, (p.a, p.b, 0, 0), L) != (0, 0):
            return False
        if vec_mat(F, (0, 0, p.a, p.b), L) != (0, 0):
            return False
        if vec_mat(F, (F.neg(alpha), 1, 1, 0), L) != (1, 0):
            return False
        if vec_mat(F, (F.neg(beta), 0, 0, 1), L) != (0, 1):
            return False
    return True


def check_preimage_formulas(res):
    """lambda_p^{-1}(x,y) = shift(x,y) + V_p and mu_p^{-1}(x,y) = shift(x,y) + U_p."""
    F = res.field
    alpha, beta = res.chi
    for p, L, M in zip(res.points, res.lambdas, res.ms):
        for mat, S in ((L, _V(F, p)), (M, _U(F, p))):
            pre = _preimages(F, mat, 4)
            for x, y in vector_space(F, 2).vectors:
                if pre.get((x, y), set()) != _coset(F, _shift(F, x, y, alpha, beta), S):
                    return False
    return True


def check_indicator_identity(res):
    """sum_p 1_{V_p} == sum_p 1_{U_p} pointwise on F^4."""
    F = res.field
    Vs = [_V(F, p) for p in res.points]
    Us = [_U(F, p) for p in res.points]
    for w in vector_space(F, 4).vectors:
        if sum(S.contains(F, w) for S in Vs) != sum(S.contains(F, w) for S in Us):
            return False
    return True


def check_automorphism(res):
    """f fixes v1, v4 and swaps v2, v3; hence f(C) = C."""
    v = res.code.gen
    fv = res.fmap.mu
    swapped = fv[0] == v[0] and fv[1] == v[2] and fv[2] == v[1] and fv[3] == v[3]
    return swapped and res.fmap.image_code().row_space() == res.code.row_space()


def _gl2(res):
    return gl_partition(2, res.q)


def _trivial(res, ell=2):
    return singleton_partition(ell, res.q)


def _zero_orbit_fails(m, P):
    return condition2_matching(m, P, orbit=0) is None


def verify(res):
    F = res.field
    alpha, beta = res.chi
    e = _trivial(res)
    report = {
        "lambda_injective": rank(F, res.code.gen) == 4,
        "is_isometry": is_swc_isometry(res.fmap, e),
        "is_automorphism": check_automorphism(res),
        "evaluations_hold": check_evaluations(res),
        "preimage_formulas_hold": check_preimage_formulas(res),
        "indicator_identity": check_indicator_identity(res),
    }
    try:
        d, mds = min_distance_ext(res.code, alpha, beta)
        report["ext_linear"] = True
    except CodeError:
        d, mds = None, False
        report["ext_linear"] = False
    report["min_distance"] = d
    report["mds"] = mds and d == res.q
    report["eq2_fails_at_zero"] = _zero_orbit_fails(res.fmap, e)
    report["unextendable_trivial"] = extend_to_monomial(res.fmap, e) is None
    report["unextendable_gl"] = extend_to_monomial(res.fmap, _gl2(res)) is None
    report["unextendable"] = (report["eq2_fails_at_zero"] and report["unextendable_trivial"]
                              and report["unextendable_gl"])
    return report


CHECKS = (
    "lambda_injective", "is_isometry", "is_automorphism", "evaluations_hold",
    "preimage_formulas_hold", "indicator_identity", "ext_linear", "mds", "unextendable",
)


def passed(report, keys=CHECKS):
    return all(report[k] is True for k in keys)


# -- the two-dimensional subcode ---------------------------------------------

def subcode_map(res, rows):
    """Restriction of f to the span of the chosen v-rows (0-based)."""
    C = Code(res.field, 2, res.code.n, tuple(res.code.gen[r] for r in rows))
    return CodeMap(C, tuple(res.fmap.mu[r] for r in rows))


def _line(F, p):
    return Subspace.span(F, 2, [(p.a, p.b)])


def _restricted(mat):
    return mat[:2]


def check_subcode_preimages(res):
    """Piecewise preimage formulas on W' = F^2 for lambda_p and mu_p."""
    F = res.field
    alpha, beta = res.chi
    Wp = vector_space(F, 2).vectors
    for p, L, M in zip(res.points, res.lambdas, res.ms):
        lam = _preimages(F, _restricted(L), 2)
        mu = _preimages(F, _restricted(M), 2)
        Lp = _line(F, p)
        for x, y in Wp:
            got = lam.get((x, y), set())
            if (x, y) == (0, 0):
                want = set(Lp.elements(F))
            elif normalize(F, x, y) != p:
                want = set()
            else:
                shift = (F.neg(F.add(F.mul(alpha, x), F.mul(beta, y))), x)
                want = _coset(F, shift, Lp)
            if got != want:
                return False

            got = mu.get((x, y), set())
            if p.b:
                r = F.div(p.a, p.b)
                first = F.sub(F.neg(F.add(F.mul(alpha, x), F.mul(beta, y))), F.mul(r, x))
                want = {(first, F.sub(x, F.mul(r, y)))}
            elif (x, y) == (0, 0):
                want = set(Wp)
            else:
                want = set()
            if got != want:
                return False
    return True


def check_point_covering(res):
    """
    For nonzero (x,y): sum over p != [1:0] of 1_{mu_p^{-1}(x,y)} equals
    1_{lambda_[x:y]^{-1}(x,y)}, pointwise on W'; the remaining terms are empty.
    """
    F = res.field
    Wp = vector_space(F, 2).vectors
    lam = [_preimages(F, _restricted(L), 2) for L in res.lambdas]
    mu = [_preimages(F, _restricted(M), 2) for M in res.ms]
    inf = res.points.index(ProjPoint(1, 0))
    for xy in Wp[1:]:
        own = res.points.index(normalize(F, *xy))
        if mu[inf].get(xy) or any(lam[i].get(xy) for i in range(len(lam)) if i != own):
            return False
        for w in Wp:
            lhs = sum(w in mu[i].get(xy, ()) for i in range(len(mu)) if i != inf)
            rhs = int(w in lam[own].get(xy, ()))
            if lhs != rhs:
                return False
    return True


def check_plane_covering(res):
    """q * 1_{0} + 1_{W'} == sum_p 1_{L_p}, with each side read off the mu and lambda preimages of 0."""
    F = res.field
    q = res.q
    Wp = vector_space(F, 2).vectors
    lam = [_preimages(F, _restricted(L), 2).get((0, 0), set()) for L in res.lambdas]
    mu = [_preimages(F, _restricted(M), 2).get((0, 0), set()) for M in res.ms]
    lines = [set(_line(F, p).elements(F)) for p in res.points]
    for w in Wp:
        formula = q * (w == (0, 0)) + 1
        by_mu = sum(w in S for S in mu)
        by_lam = sum(w in S for S in lam)
        by_lines = sum(w in S for S in lines)
        if not formula == by_mu == by_lam == by_lines:
            return False
    return True


def _is_automorphism(m):
    return m.image_code().row_space() == m.source.row_space()


def subcode_analysis(res):
    F = res.field
    e = _trivial(res)
    n = res.code.n
    sub = subcode_map(res, (0, 1))
    words = [c for c in sub.source.codewords() if any(c)]
    report = {
        "subcode_words": len(words) + 1,
        "constant_weight": all(hamming_weight(c, 2) == n - 1 for c in words),
        "restriction_isometry": is_swc_isometry(sub, e),
        "restriction_unextendable": (extend_to_monomial(sub, e) is None
                                     and extend_to_monomial(sub, _gl2(res)) is None),
        "preimage_formulas_hold": check_subcode_preimages(res),
        "point_covering": check_point_covering(res),
        "plane_covering": check_plane_covering(res),
    }
    for name, rows in (("v123", (0, 1, 2)), ("v234", (1, 2, 3))):
        m = subcode_map(res, rows)
        report[f"{name}_automorphism"] = _is_automorphism(m)
        report[f"{name}_isometry"] = is_swc_isometry(m, e)
        report[f"{name}_unextendable"] = extend_to_monomial(m, e) is None
    # every one-dimensional subcode's restriction extends
    report["lines_extend"] = all(
        extend_to_monomial(CodeMap(Code(F, 2, n, (res.code.encode(w),)), (res.fmap.image(w),)), e)
        is not None
        for w in _projective_reps(F, 4)
    )
    return report


SUBCODE_CHECKS = (
    "constant_weight", "restriction_isometry", "restriction_unextendable",
    "preimage_formulas_hold", "point_covering", "plane_covering",
    "v123_automorphism", "v123_isometry", "v123_unextendable",
    "v234_automorphism", "v234_isometry", "v234_unextendable", "lines_extend",
)


def _projective_reps(F, n):
    """Nonzero vectors whose first nonzero entry is 1."""
    for v in vector_space(F, n).vectors:
        lead = next((x for x in v if x), None)
        if lead == 1:
            yield v


# -- embedding into bigger alphabets and lengths ------------------------------

def pad_and_embed(res, ell, n):
    """
    Put B = F^2 in the first two coordinates of A = F^ell and append
    n - (q+1) zero coordinates; f is zero there.
    """
    if ell < 2:
        raise CodeError("target alphabet dimension must be at least 2")
    if n <= res.q:
        raise CodeError(f"target length must exceed q = {res.q}")
    if n < res.code.n:
        raise CodeError(f"target length must be at least {res.code.n}")
    F = res.field
    pad = zeros(4, ell - 2)

    def embed(mats):
        blocks = [hstack(m, pad) if ell > 2 else m for m in mats]
        blocks += [zeros(4, ell)] * (n - len(mats))
        return hstack(*blocks)

    code = Code(F, ell, n, embed(res.lambdas))
    return code, CodeMap(code, embed(res.ms))


def verify_padded(code, fmap):
    F = code.field
    e = singleton_partition(code.ell, F.q)
    gl = gl_partition(code.ell, F.q)
    sub = CodeMap(Code(F, code.ell, code.n, code.gen[:2]), fmap.mu[:2])
    return {
        "is_isometry": is_swc_isometry(fmap, e),
        "is_automorphism": _is_automorphism(fmap),
        "unextendable_gl": extend_to_monomial(fmap, gl) is None,
        "subcode_zero_columns": [_zero_columns(sub.source), _zero_columns(sub.image_code())],
    }


def _zero_columns(C):
    return sum(1 for i in range(C.n) if not any(any(r) for r in C.block(i)))
