"""
Exit criteria as runnable checks.  Each criterion returns a Result; the CLI
`selftest` command and tests/test_acceptance.py both drive these.
"""

import random
import time
from dataclasses import dataclass, field

from swcext.algebra.field import gf
from swcext.algebra.linalg import (
    Subspace, coset_intersection_size, vec_add, vec_mat, vector_space,
)
from swcext.codes import (
    MonomialMap, condition2_matching, extend_to_monomial, hamming_weight, swc,
    verify_bound_trivial_group,
)
from swcext.construct import (
    CHECKS, SUBCODE_CHECKS, build, lambda_matrix, passed, proj_line, subcode_analysis, verify,
)
from swcext.grp import (
    closure, closure_bruteforce, cyclic_group, general_linear_group, gl_partition,
    group_generate, is_closed, orbits, partition_join, singleton_partition,
)
from swcext.psinj import (
    build_T, build_Tprime, build_X, classify, computed_outcome, counterexample_dim3,
    counterexample_dim_ge4, f23_check, primitive_mult_matrix,
)

# the q=2 worked example, row-major, points in the order [0:1], [1:1], [1:0]
EXAMPLE_LAMBDAS = (
    ((0, 1), (0, 0), (1, 1), (0, 0)),
    ((1, 1), (1, 1), (1, 0), (1, 0)),
    ((0, 0), (1, 0), (0, 0), (0, 1)),
)
EXAMPLE_GEN = (
    (0, 1, 1, 1, 0, 0),
    (0, 0, 1, 1, 1, 0),
    (1, 1, 1, 0, 0, 0),
    (0, 0, 1, 0, 0, 1),
)
EXAMPLE_IMAGE_GEN = (
    (0, 1, 1, 1, 0, 0),
    (1, 1, 1, 0, 0, 0),
    (0, 0, 1, 1, 1, 0),
    (0, 0, 1, 0, 0, 1),
)


@dataclass
class Result:
    number: object
    name: str
    passed: bool
    seconds: float
    limit: float
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.passed and self.seconds < self.limit

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number}. {self.name} ({self.seconds:.2f}s, limit {self.limit:g}s)"


def _timed(number, name, limit, fn, seed=0):
    t0 = time.perf_counter()
    ok, details = fn(seed)
    return Result(number, name, bool(ok), time.perf_counter() - t0, limit, details)


def criterion_1():
    res = build(gf(2))
    ok = (res.lambdas == EXAMPLE_LAMBDAS and res.code.gen == EXAMPLE_GEN
          and res.fmap.mu == EXAMPLE_IMAGE_GEN
          and [(p.a, p.b) for p in res.points] == [(0, 1), (1, 1), (1, 0)])
    return ok, {"chi": list(res.chi)}


def criterion_2():
    details = {}
    ok = True
    for q in (2, 3, 4, 5):
        res = build(gf(q))
        rep = verify(res)
        e = singleton_partition(2, q)
        checks = {
            "isometry": rep["is_isometry"],
            "automorphism": rep["is_automorphism"],
            "ext_linear": rep["ext_linear"],
            "min_distance_q": rep["min_distance"] == q,
            "mds": rep["mds"],
            "no_gl_extension": extend_to_monomial(res.fmap, gl_partition(2, q)) is None,
            "eq2_fails_at_zero": condition2_matching(res.fmap, e, orbit=0) is None,
        }
        details[q] = checks
        ok = ok and all(checks.values()) and passed(rep, CHECKS)
    return ok, details


def criterion_3():
    details = {}
    ok = True
    for q in (2, 3):
        rep = subcode_analysis(build(gf(q)))
        details[q] = rep
        ok = ok and passed(rep, SUBCODE_CHECKS)
    return ok, details


def criterion_4():
    F = gf(2)
    reps = {n: verify_bound_trivial_group(F, 2, n) for n in (1, 2, 3)}
    res = build(F)
    construction_fails = extend_to_monomial(res.fmap, singleton_partition(2, 2)) is None
    ok = (reps[1]["failures"] == 0 and reps[2]["failures"] == 0
          and reps[3]["failures"] > 0 and construction_fails)
    return ok, {n: {k: r[k] for k in ("codes", "isometries", "failures")} for n, r in reps.items()}


def criterion_5():
    rep = f23_check()
    return rep["result"] and rep["cross_check"], rep


def criterion_6():
    F2, F3 = gf(2), gf(3)
    M = primitive_mult_matrix(F2)
    T = cyclic_group(F2, build_T(F2, 2, M))
    Tp = cyclic_group(F2, build_Tprime(F2, 5, 2, M))
    closed_T = closure_bruteforce(T).elements == T.elements and is_closed(T)
    closed_Tp = closure_bruteforce(Tp).elements == Tp.elements and is_closed(Tp)
    _, w4 = counterexample_dim_ge4(F2, 4)
    _, w3 = counterexample_dim3(F3)
    X = cyclic_group(F3, build_X(F3))
    brute = closure_bruteforce(X)
    e1, e2 = (1, 0, 0), (0, 1, 0)
    no_swap = not any(vec_mat(F3, e1, g) == e2 and vec_mat(F3, e2, g) == e1 for g in brute.elements)
    ok = (closed_T and closed_Tp and w4["valid"] and w4["closed"]
          and w3["valid"] and no_swap and brute.elements == closure(X).elements)
    return ok, {
        "T_closed": closed_T, "Tprime_closed": closed_Tp,
        "prop46": w4, "prop47": w3, "X_closure_order": len(brute), "X_closure_no_swap": no_swap,
    }


def criterion_7():
    details = {}
    ok = True
    for n, q in ((1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3)):
        F = gf(q)
        if (n, q) == (3, 2):
            computed = f23_check()["result"]
        else:
            computed, _ = computed_outcome(F, n)
        details[f"{n},{q}"] = {"computed": computed, "predicted": classify(n, q)}
        ok = ok and computed == classify(n, q)
    return ok, details


def prop_field_axioms(rng):
    n_cases = 0
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
        F = gf(q)
        els = range(q)
        for a in els:
            if F.pow(F.add(a, 1), F.p) != F.add(F.pow(a, F.p), 1):
                return False, {"frobenius": (q, a)}
            for b in els:
                if F.add(a, b) != F.add(b, a) or F.mul(a, b) != F.mul(b, a):
                    return False, {"commutativity": (q, a, b)}
                if F.add(a, F.neg(a)) != 0 or (b and F.mul(F.mul(a, b), F.inv(b)) != a):
                    return False, {"inverses": (q, a, b)}
                for c in els:
                    n_cases += 1
                    if F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)):
                        return False, {"distributivity": (q, a, b, c)}
                    if F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)):
                        return False, {"mul_assoc": (q, a, b, c)}
                    if F.add(F.add(a, b), c) != F.add(a, F.add(b, c)):
                        return False, {"add_assoc": (q, a, b, c)}
    return True, {"cases": n_cases}


def prop_swc_zero_orbit(rng, cases=1000):
    for _ in range(cases):
        q = rng.choice((2, 3, 4))
        F = gf(q)
        ell, n = rng.randint(1, 3), rng.randint(1, 5)
        a = tuple(rng.randrange(q) if rng.random() < 0.6 else 0 for _ in range(n * ell))
        P = rng.choice((singleton_partition(ell, q), gl_partition(ell, q)))
        if swc(F, a, P)[0] != n - hamming_weight(a, ell):
            return False, {"word": a}
    return True, {"cases": cases}


def prop_coset_intersection(rng, cases=1000):
    for _ in range(cases):
        q, m = rng.choice(((2, 4), (3, 3)))
        F = gf(q)
        V = vector_space(F, m)
        U = Subspace.span(F, m, [rng.choice(V.vectors) for _ in range(rng.randint(0, m))])
        W = Subspace.span(F, m, [rng.choice(V.vectors) for _ in range(rng.randint(0, m))])
        x, y = rng.choice(V.vectors), rng.choice(V.vectors)
        xs = {vec_add(F, x, u) for u in U.elements(F)}
        brute = sum(1 for w in W.elements(F) if vec_add(F, y, w) in xs)
        if brute not in (0, U.intersection(F, W).size(F)):
            return False, {"x": x, "y": y}
        if brute != coset_intersection_size(F, x, U, y, W):
            return False, {"x": x, "y": y}
    return True, {"cases": cases}


def prop_join_identity(rng, cases=1000):
    gls = {(n, q): general_linear_group(gf(q), n).elements for n, q in ((2, 2), (2, 3), (3, 2))}
    keys = sorted(gls)
    for _ in range(cases):
        n, q = rng.choice(keys)
        F, els = gf(q), gls[n, q]
        h1, h2 = rng.choice(els), rng.choice(els)
        joined = partition_join(orbits(cyclic_group(F, h1)), orbits(cyclic_group(F, h2)))
        if joined != orbits(group_generate(F, n, [h1, h2])):
            return False, {"h1": h1, "h2": h2}
    return True, {"cases": cases}


def prop_swc_monomial_invariance(rng, cases=1000):
    gls = {(q, ell): general_linear_group(gf(q), ell).elements for q, ell in ((2, 2), (3, 2), (2, 3))}
    keys = sorted(gls)
    closures = {}
    for _ in range(cases):
        q, ell = rng.choice(keys)
        F = gf(q)
        gens = tuple(sorted(rng.choice(gls[q, ell]) for _ in range(rng.randint(0, 2))))
        if (q, ell, gens) not in closures:
            H = group_generate(F, ell, gens)
            closures[q, ell, gens] = (orbits(H), closure(H).elements)
        P, Hbar = closures[q, ell, gens]
        n = rng.randint(1, 4)
        perm = list(range(n))
        rng.shuffle(perm)
        h = MonomialMap(tuple(perm), tuple(rng.choice(Hbar) for _ in range(n)))
        a = tuple(rng.randrange(q) for _ in range(n * ell))
        if swc(F, h.apply(F, a, ell), P) != swc(F, a, P):
            return False, {"word": a, "map": h.to_json()}
    return True, {"cases": cases}


def prop_lambda_representatives(rng):
    n_cases = 0
    for q in (2, 3, 4, 5):
        F = gf(q)
        alpha, beta = build(F).chi
        for p in proj_line(F):
            base = lambda_matrix(F, p.a, p.b, alpha, beta)
            for t in range(1, q):
                n_cases += 1
                if lambda_matrix(F, F.mul(t, p.a), F.mul(t, p.b), alpha, beta) != base:
                    return False, {"point": (q, p.a, p.b, t)}
    return True, {"cases": n_cases}


def _seeded(fn):
    return lambda seed: fn(random.Random(seed))


def _fixed(fn):
    return lambda seed: fn()


CRITERIA = (
    (1, "Worked q=2 example reproduced", 1, _fixed(criterion_1)),
    (2, "Construction suite, q in {2,3,4,5}", 30, _fixed(criterion_2)),
    (3, "Subcode suite, q in {2,3}", 10, _fixed(criterion_3)),
    (4, "Length bound for the trivial group, q=2, ell=2", 300, _fixed(criterion_4)),
    (5, "F_2^3 pseudo-injectivity pipeline", 300, _fixed(criterion_5)),
    (6, "Counterexample suite", 600, _fixed(criterion_6)),
    (7, "Classification consistency", 900, _fixed(criterion_7)),
    ("8a", "Property: field axioms and Frobenius, q <= 16", 60, _seeded(prop_field_axioms)),
    ("8b", "Property: swc zero orbit = n - wt", 60, _seeded(prop_swc_zero_orbit)),
    ("8c", "Property: coset intersection dichotomy", 60, _seeded(prop_coset_intersection)),
    ("8d", "Property: join of cyclic orbit partitions", 60, _seeded(prop_join_identity)),
    ("8e", "Property: swc invariance under monomial maps", 60, _seeded(prop_swc_monomial_invariance)),
    ("8f", "Property: Lambda independent of representative", 60, _seeded(prop_lambda_representatives)),
)


def run_criterion(number, seed=0):
    for num, name, limit, fn in CRITERIA:
        if str(num) == str(number):
            return _timed(num, name, limit, fn, seed)
    raise KeyError(number)


def run_all(numbers=None, seed=0):
    wanted = None if numbers is None else {str(x) for x in numbers}
    return [run_criterion(num, seed) for num, *_ in CRITERIA if wanted is None or str(num) in wanted]
