"""Batch command line front end.

Verbs: validate, enumerate, exponents, dedekind, selftest.  Cover data
comes in as a single JSON document:

    {"group": [2], "branch_points": [{"element": [1], "lambda": "0"}, ...]}

lambda accepts fraction strings ("3/4"), decimal strings ("0.25", read
exactly), or JSON integers.  JSON floats are rejected to keep the
pipeline exact end to end.

Exit codes: 0 success, 1 parse error, 2 invalid input (bad cover, bad
key, selector not non-special), 3 search cap exceeded.  Results go to
stdout; errors are reported as a JSON object on stdout as well, so both
outcomes are machine readable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .cover import CoverInvariants, CoverSpec, BranchPoint, validate
from .dedekind import PhiKey, phi_exact
from .divisors import (DEFAULT_NODE_CAP, InvariantDivisor, enumerate_nonspecial,
                       is_nonspecial, make_divisor, negation_N, orbit)
from .errors import (AbelcoverError, ConsistencyError, ParseError,
                     ResourceCapError)
from .exponents import exponent_table
from .group_core import AbelianGroup, dual_group

__all__ = ["main", "console_main", "load_cover_document", "SELFTEST_DOCUMENTS"]

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3


def load_cover_document(path: str) -> CoverSpec:
    """Read and structurally check a cover document, returning a CoverSpec.

    Syntax problems carry line/column; schema problems carry the JSON
    path of the offending field.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}",
                         line=exc.lineno, column=exc.colno)
    return parse_cover_object(raw)


def parse_cover_object(raw) -> CoverSpec:
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object", path="$")
    if "group" not in raw:
        raise ParseError("missing field", path="group")
    if "branch_points" not in raw:
        raise ParseError("missing field", path="branch_points")
    factors = raw["group"]
    if not isinstance(factors, list) or \
            not all(isinstance(x, int) and not isinstance(x, bool)
                    for x in factors):
        raise ParseError("group must be a list of integers", path="group")
    group = AbelianGroup(tuple(factors))
    points = raw["branch_points"]
    if not isinstance(points, list):
        raise ParseError("branch_points must be a list", path="branch_points")
    branch_points = []
    for idx, entry in enumerate(points):
        where = f"branch_points[{idx}]"
        if not isinstance(entry, dict):
            raise ParseError("branch point must be an object", path=where)
        if "element" not in entry:
            raise ParseError("missing field", path=f"{where}.element")
        if "lambda" not in entry:
            raise ParseError("missing field", path=f"{where}.lambda")
        res = entry["element"]
        if not isinstance(res, list) or \
                not all(isinstance(x, int) and not isinstance(x, bool)
                        for x in res):
            raise ParseError("element must be a list of integers",
                             path=f"{where}.element")
        branch_points.append(BranchPoint(
            element=group.element(res),
            value=_parse_value(entry["lambda"], f"{where}.lambda")))
    return CoverSpec(group=group, branch_points=tuple(branch_points))


def _parse_value(raw, where: str) -> Fraction:
    if isinstance(raw, bool):
        raise ParseError("lambda must be a string or integer", path=where)
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        raise ParseError(
            "lambda must be given as a string to stay exact", path=where)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot parse {raw!r} as a rational",
                             path=where)
    raise ParseError("lambda must be a string or integer", path=where)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _t_table(inv: CoverInvariants) -> list[dict]:
    return [{"character": list(chi.residues), "t": inv.t[chi]}
            for chi in dual_group(inv.group)]


def cmd_validate(args) -> int:
    spec = load_cover_document(args.path)
    inv = validate(spec)
    _emit({"n": inv.n, "m": inv.m, "g": inv.g, "t": _t_table(inv)})
    return EXIT_OK


def _enumerated(spec: CoverSpec, inv: CoverInvariants, args):
    divisors = enumerate_nonspecial(spec, inv, cap=args.cap,
                                    workers=args.workers)
    index_of = {D.beta: i for i, D in enumerate(divisors)}
    orbit_label: dict[int, int] = {}
    next_orbit = 0
    for i, D in enumerate(divisors):
        if i in orbit_label:
            continue
        for member in orbit(spec, inv, D):
            j = index_of.get(member.beta)
            if j is None:
                raise ConsistencyError(
                    "enumeration is not closed under the dual action")
            orbit_label[j] = next_orbit
        next_orbit += 1
    return divisors, orbit_label, next_orbit


def cmd_enumerate(args) -> int:
    spec = load_cover_document(args.path)
    inv = validate(spec)
    divisors, orbit_label, orbit_count = _enumerated(spec, inv, args)
    if args.csv:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        width = len(spec.sites)
        writer.writerow(["index", "orbit", "p"]
                        + [f"beta_{k}" for k in range(width)])
        for i, D in enumerate(divisors):
            writer.writerow([i, orbit_label[i], D.p] + list(D.beta))
        sys.stdout.write(out.getvalue())
    else:
        _emit({
            "count": len(divisors),
            "orbit_count": orbit_count,
            "empty": not divisors,
            "divisors": [
                {"index": i, "orbit": orbit_label[i], "p": D.p,
                 "beta": list(D.beta)}
                for i, D in enumerate(divisors)],
        })
    return EXIT_OK


def _select_divisor(spec: CoverSpec, inv: CoverInvariants,
                    selector: str, args) -> InvariantDivisor:
    text = selector.strip()
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError:
        parsed = None
    if isinstance(parsed, list):
        return make_divisor(spec, parsed)
    if isinstance(parsed, int) and not isinstance(parsed, bool):
        divisors = enumerate_nonspecial(spec, inv, cap=args.cap,
                                        workers=args.workers)
        if not 0 <= parsed < len(divisors):
            raise ParseError(
                f"divisor index {parsed} out of range; enumeration has "
                f"{len(divisors)} entries", path="--divisor")
        return divisors[parsed]
    if "," in text:
        try:
            return make_divisor(spec, [int(p) for p in text.split(",")])
        except ValueError:
            pass
    raise ParseError(f"cannot parse divisor selector {text!r}",
                     path="--divisor")


def cmd_exponents(args) -> int:
    spec = load_cover_document(args.path)
    inv = validate(spec)
    D = _select_divisor(spec, inv, args.divisor, args)
    if not is_nonspecial(spec, inv, D):
        _emit({"error": {"kind": "not-nonspecial",
                         "detail": "selected divisor fails the counting "
                                   "condition"}})
        return EXIT_INVALID
    table = exponent_table(spec, inv, D)
    rows = []
    for key, value in table.entries.items():
        sa, sb = spec.sites[key.first], spec.sites[key.second]
        rows.append({
            "sigma_rank": sa.element_rank, "j": sa.occurrence,
            "rho_rank": sb.element_rank, "i": sb.occurrence,
            "lambda_a": str(sa.value), "lambda_b": str(sb.value),
            "exponent": value,
        })
    if args.csv:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["sigma_rank", "j", "rho_rank", "i",
                         "lambda_a", "lambda_b", "exponent"])
        for row in rows:
            writer.writerow([row["sigma_rank"], row["j"], row["rho_rank"],
                             row["i"], row["lambda_a"], row["lambda_b"],
                             row["exponent"]])
        sys.stdout.write(out.getvalue())
    else:
        _emit({
            "theta_exponent": table.theta_exponent,
            "detC_exponent": table.detC_exponent,
            "divisor": {"p": D.p, "beta": list(D.beta),
                        "orbit_fingerprint": table.divisor_fingerprint},
            "pairs": rows,
        })
    return EXIT_OK


def cmd_dedekind(args) -> int:
    key = PhiKey.of(args.d, args.h, args.s)
    sys.stdout.write(str(phi_exact(key)) + "\n")
    return EXIT_OK


SELFTEST_DOCUMENTS: dict[str, dict] = {
    "hyperelliptic-g2": {
        "group": [2],
        "branch_points": [
            {"element": [1], "lambda": str(v)} for v in range(6)],
    },
    "cyclic3-g1": {
        "group": [3],
        "branch_points": [
            {"element": [1], "lambda": str(v)} for v in range(3)],
    },
    "klein-g3": {
        "group": [2, 2],
        "branch_points": [
            {"element": [1, 0], "lambda": "0"},
            {"element": [1, 0], "lambda": "1"},
            {"element": [0, 1], "lambda": "2"},
            {"element": [0, 1], "lambda": "3"},
            {"element": [1, 1], "lambda": "4"},
            {"element": [1, 1], "lambda": "5"},
        ],
    },
}

_SELFTEST_EXPECTED = {
    "hyperelliptic-g2": {"g": 2, "count": 20, "orbits": 10},
    "cyclic3-g1": {"g": 1, "count": 6, "orbits": 2},
    "klein-g3": {"g": 3, "count": 8, "orbits": 2},
}


def cmd_selftest(args) -> int:
    for name, document in SELFTEST_DOCUMENTS.items():
        expected = _SELFTEST_EXPECTED[name]
        spec = parse_cover_object(document)
        inv = validate(spec)
        _check(name, "genus", inv.g == expected["g"])
        divisors = enumerate_nonspecial(spec, inv)
        _check(name, "count", len(divisors) == expected["count"])
        seen = set(D.beta for D in divisors)
        orbits_seen = set()
        closed = negated = True
        for D in divisors:
            members = orbit(spec, inv, D)
            closed = closed and all(m.beta in seen for m in members)
            orbits_seen.add(min(m.beta for m in members))
            negated = negated and negation_N(spec, inv, D).beta in seen
        _check(name, "closure", closed)
        _check(name, "negation", negated)
        _check(name, "orbit count", len(orbits_seen) == expected["orbits"])
        even = homogeneous = True
        for D in divisors[:2]:
            table = exponent_table(spec, inv, D)
            even = even and all(v % 2 == 0 for v in table.entries.values())
            total = sum(table.entries.values())
            homogeneity = 2 * inv.m * sum(
                t * (t - 1) for t in inv.t.values())
            homogeneous = homogeneous and total == homogeneity
        _check(name, "evenness", even)
        _check(name, "degree identity", homogeneous)
    sys.stdout.write("selftest ok\n")
    return EXIT_OK


def _check(name: str, what: str, ok: bool) -> None:
    if not ok:
        raise ConsistencyError(f"selftest {name}: {what} check failed")
    sys.stdout.write(f"ok {name}: {what}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abelcover",
        description="Exact non-special divisor enumeration, generalized "
                    "Dedekind sums, and Thomae exponent tables for abelian "
                    "covers of the sphere.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format_flags(p):
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", default=False,
                         help="JSON output (the default)")
        fmt.add_argument("--csv", action="store_true", default=False,
                         help="CSV output")

    def add_search_flags(p):
        p.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP,
                       help="node cap for the divisor search")
        p.add_argument("--workers", type=int, default=1,
                       help="worker threads for the divisor search")

    p = sub.add_parser("validate", help="check a cover document")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", help="list all non-special divisors")
    p.add_argument("path")
    add_format_flags(p)
    add_search_flags(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("exponents", help="print the exponent table of "
                                         "one divisor")
    p.add_argument("path")
    p.add_argument("--divisor", required=True,
                   help="enumeration index, or an explicit weight vector "
                        "like '[2,1,0]' or '2,1,0'")
    add_format_flags(p)
    add_search_flags(p)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("dedekind", help="print one generalized Dedekind sum")
    p.add_argument("d", type=int)
    p.add_argument("h", type=int)
    p.add_argument("s", type=int)
    p.set_defaults(func=cmd_dedekind)

    p = sub.add_parser("selftest", help="run the bundled worked examples")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        payload = {"kind": "parse", "detail": str(exc)}
        if exc.line is not None:
            payload["line"] = exc.line
            payload["column"] = exc.column
        if exc.path is not None:
            payload["path"] = exc.path
        _emit({"error": payload})
        return EXIT_PARSE
    except ResourceCapError as exc:
        _emit({"error": {"kind": "resource-cap", "detail": str(exc),
                         "cap": exc.cap}})
        return EXIT_RESOURCE
    except AbelcoverError as exc:
        kind = getattr(exc, "reason", exc.__class__.__name__)
        _emit({"error": {"kind": kind, "detail": str(exc)}})
        return EXIT_INVALID


def console_main() -> None:
    sys.exit(main())
