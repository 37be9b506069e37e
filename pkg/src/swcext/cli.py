"""
Command-line entry point.

Every subcommand builds a report dict and prints it as JSON (default) or a
short text summary.  Exit codes: 0 when every check passes, 1 when a checked
property fails, 2 on usage, input or guard errors.
"""

import argparse
import json
import logging
import sys

from swcext.acceptance import run_all
from swcext.algebra.field import gf, gf_make
from swcext.algebra.linalg import ENUM_GUARD
from swcext.codes import (
    CodeMap, code_from_json, extend_to_monomial, failing_orbits, is_swc_isometry, swc,
    verify_bound_trivial_group,
)
from swcext.construct import (
    CHECKS, SUBCODE_CHECKS, build, pad_and_embed, subcode_analysis, verify, verify_padded,
)
from swcext.errors import GuardError, SwcError
from swcext.grp import (
    GL_GUARD, closed_subgroups, closure, group_generate, orbits,
)
from swcext.psinj import (
    COROLLARY_NOTE, classify, computed_outcome, counterexample_dim3, counterexample_dim_ge4,
    f23_check, is_pseudo_injective,
)

SCHEMA = 1


class UsageError(SwcError):
    pass


# -- inputs -------------------------------------------------------------------

def _load(path):
    """Read a JSON input; a full report envelope is unwrapped to field + report."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if isinstance(data, dict) and "schema" in data and isinstance(data.get("report"), dict):
        data = {**(data.get("field") or {}), **data["report"]}
    return data


def field_from_json(data):
    """FieldSpec from {p, k, modulus} or just {q}."""
    if "p" in data:
        mod = data.get("modulus")
        return gf_make(int(data["p"]), int(data.get("k", 1)), None if mod is None else tuple(mod))
    if "q" in data:
        return gf(int(data["q"]))
    raise UsageError("field needs p (and k, modulus) or q")


def _same_field(F, G):
    if (F.p, F.k, F.modulus) != (G.p, G.k, G.modulus):
        raise UsageError("code and group are over different fields")


def load_code(path):
    data = _load(path)
    F = field_from_json(data)
    C = code_from_json(F, data)
    mu = data.get("mu", data.get("image_gen"))
    m = None if mu is None else CodeMap(C, tuple(tuple(r) for r in mu))
    return C, m


def load_group(path, guard):
    data = _load(path)
    F = field_from_json(data)
    n = int(data["n"])
    gens = [tuple(tuple(r) for r in g) for g in data.get("generators", [])]
    return group_generate(F, n, gens, guard)


def _parse_vector(text):
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"bad vector {text!r}") from None


def _require_map(m, path):
    if m is None:
        raise UsageError(f"{path} has no 'mu' (or 'image_gen') entry")
    return m


# -- subcommands --------------------------------------------------------------
# each returns (passed, report, failed_checks)

def _failed(report, keys):
    return [k for k in keys if report.get(k) is not True]


def cmd_construct(args):
    F = gf(args.q)
    res = build(F, args.alpha, args.beta)
    report = {"ell": res.code.ell, "n": res.code.n, **res.to_json()}
    if args.ell is not None or args.n is not None:
        code, fmap = pad_and_embed(res, args.ell or 2, args.n or res.code.n)
        report["padded"] = {"ell": code.ell, "n": code.n,
                            "gen": [list(r) for r in code.gen], "image_gen": [list(r) for r in fmap.mu]}
    return True, report, []


def cmd_verify(args):
    res = build(gf(args.q), args.alpha, args.beta)
    report = {"chi": list(res.chi), "checks": verify(res)}
    bad = _failed(report["checks"], CHECKS)
    return not bad, report, bad


def cmd_subcode(args):
    res = build(gf(args.q), args.alpha, args.beta)
    report = {"chi": list(res.chi), "checks": subcode_analysis(res)}
    bad = _failed(report["checks"], SUBCODE_CHECKS)
    return not bad, report, bad


def cmd_pad(args):
    res = build(gf(args.q), args.alpha, args.beta)
    code, fmap = pad_and_embed(res, args.ell, args.n)
    checks = verify_padded(code, fmap)
    bad = _failed(checks, ("is_isometry", "is_automorphism", "unextendable_gl"))
    return not bad, {"ell": args.ell, "n": args.n, "checks": checks}, bad


def _swc_json(counts):
    return [[label, counts[label]] for label in sorted(counts)]


def cmd_swc(args):
    C, _ = load_code(args.code)
    G = load_group(args.group, args.guard)
    _same_field(C.field, G.field)
    if G.n != C.ell:
        raise UsageError(f"group acts on F^{G.n}, code alphabet is F^{C.ell}")
    args.field_json = C.field.to_json()
    P = orbits(G)
    F = C.field
    if args.word is not None:
        word = _parse_vector(args.word)
        return True, {"word": list(word), "swc": _swc_json(swc(F, word, P))}, []
    rows = sorted((c, _swc_json(swc(F, c, P))) for c in C.codewords(args.guard))
    return True, {"codewords": [{"word": list(c), "swc": s} for c, s in rows]}, []


def _map_and_partition(args):
    C, m = load_code(args.map)
    m = _require_map(m, args.map)
    G = load_group(args.group, args.guard)
    _same_field(C.field, G.field)
    if G.n != C.ell:
        raise UsageError(f"group acts on F^{G.n}, code alphabet is F^{C.ell}")
    args.field_json = C.field.to_json()
    return m, orbits(G)


def cmd_check_isometry(args):
    m, P = _map_and_partition(args)
    ok = is_swc_isometry(m, P, args.guard)
    return ok, {"is_isometry": ok}, [] if ok else ["is_isometry"]


def cmd_check_extension(args):
    m, P = _map_and_partition(args)
    h = extend_to_monomial(m, P, args.guard)
    report = {"extends": h is not None, "monomial": None if h is None else h.to_json()}
    if h is None:
        report["failing_orbits"] = failing_orbits(m, P)
    return h is not None, report, [] if h is not None else ["extends"]


def cmd_orbits(args):
    G = load_group(args.group, args.guard)
    P = orbits(G)
    return True, {"group": G.to_json(), "orbits": P.to_json(),
                  "blocks": [list(P.blocks[k]) for k in P.labels]}, []


def cmd_closure(args):
    G = load_group(args.group, args.guard)
    Gbar = closure(G, args.guard)
    return True, {"group": G.to_json(), "closure": Gbar.to_json(),
                  "closed": len(Gbar) == len(G)}, []


def cmd_closed_subgroups(args):
    F = gf(args.q)
    fixing = None if args.fixing is None else _parse_vector(args.fixing)
    if fixing is not None and len(fixing) != args.n:
        raise UsageError(f"--fixing needs {args.n} entries")
    census = closed_subgroups(F, args.n, fixing, args.guard)
    groups = [{"order": len(G), "orbit_id": list(P.orbit_id)} for P, G in census]
    return True, {"n": args.n, "fixing": None if fixing is None else list(fixing),
                  "count": len(groups), "subgroups": groups}, []


def cmd_bound_check(args):
    F = gf(args.q)
    rep = verify_bound_trivial_group(F, args.ell, args.n, args.guard, args.max_failures)
    # at length n <= q every swc-isometry for the trivial group must extend
    claim = args.n <= args.q
    rep["length_at_most_q"] = claim
    ok = rep["all_extend"] or not claim
    return ok, rep, [] if ok else ["all_extend"]


def _builtin_group(name, F, n, guard):
    if name == "builtin:X":
        if n != 3:
            raise UsageError("builtin:X needs --n 3")
        return counterexample_dim3(F, guard)
    if name == "builtin:T" and n != 4:
        raise UsageError("builtin:T needs --n 4; use builtin:Tprime for n > 4")
    if name == "builtin:Tprime" and n <= 4:
        raise UsageError("builtin:Tprime needs --n > 4")
    return counterexample_dim_ge4(F, n, guard)


def cmd_psinj(args):
    F = gf(args.q)
    spec = args.group
    if spec.startswith("builtin:"):
        if spec not in ("builtin:T", "builtin:Tprime", "builtin:X"):
            raise UsageError(f"unknown builtin group {spec}")
        witness, rep = _builtin_group(spec, F, args.n, args.guard)
        report = {"group": spec, "pseudo_injective": False, "witness": witness.to_json(), "check": rep}
        return rep["valid"], report, [] if rep["valid"] else ["counterexample_valid"]
    if spec == "all-closed":
        outcome, info = computed_outcome(F, args.n, args.guard)
        expected = classify(args.n, args.q)
        report = {"group": spec, "computed": outcome, "expected": expected, "info": info}
        return outcome == expected, report, [] if outcome == expected else ["classification"]
    G = load_group(spec, args.guard)
    _same_field(F, G.field)
    if G.n != args.n:
        raise UsageError(f"group acts on F^{G.n}, not F^{args.n}")
    ans, witness = is_pseudo_injective(F, args.n, G, args.guard)
    report = {"group": G.to_json(), "pseudo_injective": ans,
              "witness": None if witness is None else witness.to_json()}
    return True, report, []


def cmd_psinj_f23(args):
    rep = {"field": gf(2).to_json(), **f23_check(args.guard)}
    return rep["result"], rep, [] if rep["result"] else ["f23"]


def cmd_classify(args):
    report = {"n": args.n, "q": args.q, "pseudo_injective_for_all_groups": classify(args.n, args.q),
              "length_one_codes": COROLLARY_NOTE}
    if not args.compute:
        return True, report, []
    outcome, info = computed_outcome(gf(args.q), args.n, args.guard)
    report["computed"] = outcome
    report["info"] = info
    ok = outcome == report["pseudo_injective_for_all_groups"]
    return ok, report, [] if ok else ["classification"]


def cmd_selftest(args):
    only = None if args.only is None else [x.strip() for x in args.only.split(",")]
    results = run_all(only, seed=args.seed)
    if not results:
        raise UsageError(f"no criterion matches {args.only!r}")
    args._lines = [r.line() for r in results]
    rows = [{"number": str(r.number), "name": r.name, "passed": r.ok, "limit_seconds": r.limit}
            for r in results]
    bad = [str(r.number) for r in results if not r.ok]
    return not bad, {"criteria": rows}, bad


# -- parser -------------------------------------------------------------------

def _common(p):
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--guard", type=int, default=None,
                   help="maximum enumeration size (default depends on the command)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")


def _construction_args(p):
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)


def build_parser():
    ap = argparse.ArgumentParser(prog="swcext", description="swc-isometry and pseudo-injectivity toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, guard_default=GL_GUARD):
        p = sub.add_parser(name, help=help_text)
        _common(p)
        p.set_defaults(func=fn, guard_default=guard_default)
        return p

    p = add("construct", cmd_construct, "build the unextendable isometry over F_q")
    _construction_args(p)
    p.add_argument("--ell", type=int)
    p.add_argument("--n", type=int)
    p = add("verify", cmd_verify, "check every property of the construction")
    _construction_args(p)
    p = add("subcode", cmd_subcode, "checks on the subcodes of the construction")
    _construction_args(p)
    p = add("pad", cmd_pad, "embed into F_q^ell and length n, then re-check")
    _construction_args(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("swc", cmd_swc, "swc of a word or of every codeword", ENUM_GUARD)
    p.add_argument("--code", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--word", help="comma-separated word; default: all codewords")
    for name, fn, text in (("check-isometry", cmd_check_isometry, "is the map an swc-isometry"),
                           ("check-extension", cmd_check_extension, "does the map extend to a monomial map")):
        p = add(name, fn, text, ENUM_GUARD if name == "check-isometry" else GL_GUARD)
        p.add_argument("--map", required=True, help="code file with a 'mu' entry")
        p.add_argument("--group", required=True)

    p = add("orbits", cmd_orbits, "orbit partition of a group")
    p.add_argument("--group", required=True)
    p = add("closure", cmd_closure, "closure of a group")
    p.add_argument("--group", required=True)
    p = add("closed-subgroups", cmd_closed_subgroups, "all closed subgroups of GL_n(F_q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--fixing", help="comma-separated vector that must be fixed")

    p = add("bound-check", cmd_bound_check, "exhaustive extension check for the trivial group", 1 << 16)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-failures", type=int)

    p = add("psinj", cmd_psinj, "pseudo-injectivity of F_q^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--group", required=True,
                   help="group file, builtin:T, builtin:Tprime, builtin:X or all-closed")
    add("psinj-f23", cmd_psinj_f23, "the full F_2^3 computation")
    p = add("classify", cmd_classify, "predicted pseudo-injectivity for (n, q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--compute", action="store_true", help="also decide it by computation")
    p = add("selftest", cmd_selftest, "run the acceptance criteria")
    p.add_argument("--only", help="comma-separated criterion numbers, e.g. 1,4,8a")
    return ap


# -- output -------------------------------------------------------------------

def _text(value, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(value, list):
        for v in value:
            if _flat(v):
                lines.append(f"{pad}- {json.dumps(v)}")
            else:
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
    else:
        lines.append(f"{pad}{json.dumps(value)}")
    return lines


def _flat(v):
    if isinstance(v, dict):
        return False
    if isinstance(v, list):
        return all(not isinstance(x, dict) for x in v) and len(json.dumps(v)) <= 80
    return True


def render(envelope, fmt, extra_lines=()):
    if fmt == "json":
        return json.dumps(envelope, indent=2) + "\n"
    head = [f"{envelope['command']}: {'PASS' if envelope['passed'] else 'FAIL'}"]
    if envelope["failed_checks"]:
        head.append("failed: " + ", ".join(envelope["failed_checks"]))
    return "\n".join(head + list(extra_lines) + _text(envelope["report"])) + "\n"


def run(argv=None):
    """Parse, execute, and return (exit_code, text)."""
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.guard is None:
        args.guard = args.guard_default
    try:
        ok, report, bad = args.func(args)
    except (GuardError, SwcError, KeyError, ValueError) as exc:
        return 2, f"{args.command}: {type(exc).__name__}: {exc}\n", None
    if getattr(args, "field_json", None) is not None:
        F = args.field_json
    elif getattr(args, "q", None) is not None:
        F = gf(args.q).to_json()
    else:
        F = _find_field(report)
    envelope = {
        "schema": SCHEMA,
        "command": args.command,
        "field": F,
        "seed": args.seed,
        "passed": bool(ok),
        "failed_checks": sorted(bad),
        "report": report,
    }
    text = render(envelope, args.format, getattr(args, "_lines", ()))
    return (0 if ok else 1), text, args.out


def _find_field(report):
    if isinstance(report.get("field"), dict):
        return report["field"]
    for key in ("group", "closure"):
        sub = report.get(key)
        if isinstance(sub, dict) and isinstance(sub.get("field"), dict):
            return sub["field"]
    return None


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        code, text, out = run(argv)
    except SystemExit as exc:     # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else 2
    if code == 2:
        sys.stderr.write(text)
        return 2
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
