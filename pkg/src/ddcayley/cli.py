"""Command-line interface.

Every subcommand prints one JSON run report on stdout.  Exit codes:

    0   all requested verifications passed
    2   a verification failed (including degenerate results)
    64  usage error (bad arguments, q not a prime power, ...)
    65  malformed input data
    66  input file missing
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .checks import (
    DEGENERATE,
    dds_check,
    dds_discover_subgroup,
    ddg_check,
    theorem2_params,
)
from .construction import (
    PermutationPhi,
    build_generating_set,
    enumerate_star_permutations,
    lemma2_permutation,
    star_condition_check,
)
from .corpus import EX3_IDS, EXAMPLE_IDS, load_example
from .errors import DDGError, MalformedInput, NotPrimePower, VerificationFailed
from .field import Field, FieldSpec, prime_power
from .graphs import Graph, cayley_graph, read_graph6, to_dot, to_json, write_graph6, graph6_encode
from .groups import AffineGroup, FiniteGroup, subgroup_test
from .iso import certificates, default_jobs

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA, EXIT_NOINPUT = 0, 2, 64, 65, 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _field(q: int, r: int) -> Field:
    try:
        p, e = prime_power(q)
    except NotPrimePower as exc:
        raise UsageError(str(exc)) from None
    if r < 2:
        raise UsageError("r must exceed 1")
    return Field(FieldSpec(p, e, r))


def _digest(parts: Sequence[bytes]) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(hashlib.sha256(p).digest())
    return h.hexdigest()


def _write_graphs(graphs: list[Graph], out: str | None, fmt: str) -> None:
    if out is None:
        return
    if fmt == "graph6":
        write_graph6(out, graphs)
    elif fmt == "dot":
        Path(out).write_text("".join(to_dot(g, f"G{k}") for k, g in enumerate(graphs)))
    else:
        Path(out).write_text("\n".join(to_json(g) for g in graphs) + "\n")


# --- subcommands ------------------------------------------------------------


def cmd_construct(args) -> tuple[dict, int]:
    field = _field(args.q, args.r)
    G = AffineGroup(field)
    fallback = False
    if args.perm:
        try:
            phi = PermutationPhi.parse(args.perm)
        except (ValueError, DDGError) as exc:
            raise UsageError(f"bad --perm: {exc}") from None
        if phi.t != field.t:
            raise UsageError(f"--perm needs length t={field.t}")
    elif args.perm_index is not None:
        perms = enumerate_star_permutations(field)
        if not 0 <= args.perm_index < len(perms):
            raise UsageError(f"--perm-index must lie in 0..{len(perms) - 1}")
        phi = perms[args.perm_index]
    else:
        phi, fallback = lemma2_permutation(field.t, field)
    star = star_condition_check(phi, field)
    S = build_generating_set(phi, G)
    result = {
        "q": args.q,
        "r": args.r,
        "field": json.loads(field.spec.to_json()),
        "t": field.t,
        "phi": phi.to_json(),
        "lemma2_fallback": fallback,
        "star_condition": star.ok,
        "star_first_failure": star.first_failure,
        "k": S.k,
        "expected": theorem2_params(args.q, args.r).__dict__,
    }
    if args.dump_group:
        Path(args.dump_group).write_text(G.to_json() + "\n")
    if args.dump_set:
        Path(args.dump_set).write_text(
            json.dumps({"indices": list(S.elements), "affine": G.export_set(S.elements)}) + "\n"
        )
    if not star.ok:
        result["status"] = "failed"
        result["error"] = "generating set is not inverse-closed; no undirected Cayley graph"
        return result, EXIT_FAIL
    g = cayley_graph(G, S)
    _write_graphs([g], args.out, args.format)
    res = ddg_check(g)
    result["verification"] = res.to_dict()
    ok = not res.degenerate and res.params == theorem2_params(args.q, args.r)
    result["status"] = "ok" if ok else "failed"
    return result, EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate(args) -> tuple[dict, int]:
    field = _field(args.q, args.r)
    perms = enumerate_star_permutations(field, normalize=not args.raw)
    return {
        "q": args.q,
        "r": args.r,
        "t": field.t,
        "normalized": not args.raw,
        "count": len(perms),
        "permutations": [p.to_json() for p in perms],
        "status": "ok",
    }, EXIT_OK


def _verify_one(g: Graph) -> tuple[dict, bool]:
    try:
        res = ddg_check(g)
    except VerificationFailed as exc:
        return {"status": "failed", "error": type(exc).__name__, "detail": str(exc)}, False
    d = res.to_dict()
    return d, not res.degenerate


def cmd_verify(args) -> tuple[dict, int]:
    graphs = read_graph6(args.input)
    reports, all_ok = [], bool(graphs)
    for g in graphs:
        d, ok = _verify_one(g)
        reports.append(d)
        all_ok &= ok
    return {"graphs": reports, "status": "ok" if all_ok else "failed"}, EXIT_OK if all_ok else EXIT_FAIL


def _load_set(path: str) -> list[int]:
    d = json.loads(Path(path).read_text())
    if isinstance(d, dict):
        d = d.get("indices")
    if not isinstance(d, list) or not all(isinstance(x, int) for x in d):
        raise MalformedInput("set file must be a JSON list of element indices or {'indices': [...]}")
    return d


def cmd_dds(args) -> tuple[dict, int]:
    G = FiniteGroup.from_json(Path(args.group).read_text())
    S = _load_set(args.set)
    if any(not 0 <= x < G.order for x in S):
        raise MalformedInput("set contains indices outside the group")
    out: dict = {"order": G.order, "k": len(set(S))}
    try:
        if args.subgroup:
            N = _load_set(args.subgroup)
            if not subgroup_test(G, N):
                raise MalformedInput("--subgroup is not a subgroup")
        else:
            N = dds_discover_subgroup(G, S)
        lam1, lam2 = dds_check(G, S, N)
    except VerificationFailed as exc:
        out.update(status="failed", error=type(exc).__name__, detail=str(exc))
        return out, EXIT_FAIL
    out.update(subgroup=N, n=len(N), m=G.order // len(N), lambda1=lam1, lambda2=lam2, status="ok")
    return out, EXIT_OK


def cmd_iso(args) -> tuple[dict, int]:
    graphs: list[Graph] = []
    for path in args.input:
        graphs.extend(read_graph6(path))
    certs = certificates(graphs, args.jobs)
    classes: dict = {}
    for k, c in enumerate(certs):
        classes.setdefault(c, []).append(k)
    return {
        "graphs": len(graphs),
        "classes": list(classes.values()),
        "class_count": len(classes),
        "certificates": [hashlib.sha256(c.hex().encode()).hexdigest() for c in certs],
        "status": "ok",
    }, EXIT_OK


def cmd_corpus(args) -> tuple[dict, int]:
    ids = list(EX3_IDS) if args.id == "ex3_all" else [args.id]
    items, graphs, all_ok = [], [], True
    for ex_id in ids:
        ex = load_example(ex_id)
        g = cayley_graph(ex.group, ex.S)
        graphs.append(g)
        item = {
            "id": ex_id,
            "group_order": ex.group.order,
            "k": ex.S.k,
            "elements": [ex.group.label(x) for x in ex.S.elements],
            "graph6": graph6_encode(g).decode(),
        }
        if args.verify:
            d, ok = _verify_one(g)
            item["verification"] = d
            all_ok &= ok
        items.append(item)
        if args.dump_group:
            Path(args.dump_group).write_text(ex.group.to_json() + "\n")
        if args.dump_set:
            Path(args.dump_set).write_text(json.dumps({"indices": list(ex.S.elements)}) + "\n")
    _write_graphs(graphs, args.out, "graph6")
    return {"examples": items, "status": "ok" if all_ok else "failed"}, EXIT_OK if all_ok else EXIT_FAIL


def cmd_params(args) -> tuple[dict, int]:
    _field(args.q, args.r)
    return {"q": args.q, "r": args.r, "params": theorem2_params(args.q, args.r).__dict__, "status": "ok"}, EXIT_OK


# --- plumbing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ddcayley", description="Divisible design Cayley graphs from affine groups.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="print a readable summary instead of JSON")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default $DDCAYLEY_JOBS or 1)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build and verify one graph")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--perm", help="comma-separated permutation, e.g. 1,4,2,5,3")
    g.add_argument("--perm-index", type=int, help="index into the enumerated permutations")
    g.add_argument("--lemma2", action="store_true", help="closed-form permutation (default)")
    c.add_argument("--out")
    c.add_argument("--format", choices=("graph6", "dot", "json"), default="graph6")
    c.add_argument("--dump-group", help="write the group table as JSON")
    c.add_argument("--dump-set", help="write the generating set as JSON")
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("enumerate", parents=[common], help="list admissible permutations")
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--r", type=int, required=True)
    e.add_argument("--raw", action="store_true", help="do not restrict to phi_1 = 1")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", parents=[common], help="check graph6 graphs for DDG structure")
    v.add_argument("--in", dest="input", required=True)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dds", parents=[common], help="divisible difference set check")
    d.add_argument("--group", required=True)
    d.add_argument("--set", required=True)
    d.add_argument("--subgroup", help="exceptional subgroup; discovered when omitted")
    d.set_defaults(func=cmd_dds)

    i = sub.add_parser("iso", parents=[common], help="classify graph6 graphs up to isomorphism")
    i.add_argument("--in", dest="input", nargs="+", required=True)
    i.set_defaults(func=cmd_iso)

    k = sub.add_parser("corpus", parents=[common], help="fixture examples")
    k.add_argument("--id", required=True, choices=EXAMPLE_IDS + ("ex3_all",))
    k.add_argument("--verify", action="store_true")
    k.add_argument("--out", help="write the fixture graph(s) as graph6")
    k.add_argument("--dump-group")
    k.add_argument("--dump-set")
    k.set_defaults(func=cmd_corpus)

    pr = sub.add_parser("params", parents=[common], help="parameter formulas for (q, r)")
    pr.add_argument("--q", type=int, required=True)
    pr.add_argument("--r", type=int, required=True)
    pr.set_defaults(func=cmd_params)
    return p


def _input_bytes(args) -> list[bytes]:
    parts = []
    for name in ("input", "group", "set", "subgroup"):
        val = getattr(args, name, None)
        for path in [val] if isinstance(val, str) else (val or []):
            parts.append(Path(path).read_bytes())
    return parts


def _human(report: dict) -> str:
    res = report["results"]
    lines = [f"{report['command']}: {report['status']} (exit {report['exit_code']})"]
    for key in ("phi", "k", "count", "class_count", "classes", "lambda1", "lambda2", "params"):
        if key in res:
            lines.append(f"  {key}: {res[key]}")
    if "verification" in res:
        p = res["verification"]["params"]
        lines.append("  verified: (" + ",".join(str(p[x]) for x in ("v", "k", "lambda1", "lambda2", "m", "n")) + ")")
    if "permutations" in res:
        lines += ["  (" + ",".join(map(str, phi)) + ")" for phi in res["permutations"]]
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = default_jobs()
    start = time.perf_counter()
    try:
        digest = _digest([" ".join(argv).encode()] + _input_bytes(args))
        results, code = args.func(args)
    except UsageError as exc:
        print(f"ddcayley: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"ddcayley: error: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except (DDGError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"ddcayley: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    report = {
        "command": args.command,
        "argv": argv,
        "input_digest": digest,
        "results": results,
        "status": results.get("status", "ok"),
        "exit_code": code,
    }
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    if args.human:
        print(_human(report))
    else:
        print(json.dumps(report, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
