"""Command-line entry point.

Exit codes: 0 success (every check passed), 1 a check failed or a membership question was
answered no, 2 usage error, 3 only inconclusive checks besides passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .catalog import CATALOG, name_of
from .clones import CapExceeded, CloneSpec, closure_fixed_arity, find_term, parse_genlist
from .core import LETTERS, FnTable, decode_table, input_tuples
from .lattice import emit_lattice
from .logic import NotAboveDMA, classify
from .relations import MajorityError, clone_leq, inv2, member, separating_relation, witness_nonmembership
from .terms import TermError, parse_term, term_arity, term_to_table
from .verify import REGISTRY, Options, exit_code, run_suite


class UsageError(Exception):
    pass


def resolve_table(text: str, env: dict[str, FnTable] | None = None) -> FnTable:
    """A catalog name, a term such as ``meet(x1, neg(x2))``, ``@file`` or a raw table."""
    env = env if env is not None else CATALOG
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        if len(lines) != 1:
            raise UsageError(f"{text[1:]}: expected exactly one table, found {len(lines)}")
        return decode_table(lines[0])
    if text in env:
        return env[text]
    if set(text) <= set(LETTERS) and len(text) in (4, 16, 64, 256, 1024, 4096):
        return decode_table(text)
    term = parse_term(text)
    return term_to_table(term, env, term_arity(term))


def _grid(f: FnTable) -> str:
    if f.arity == 1:
        return "  ".join(f"{LETTERS[a]}->{LETTERS[v]}" for a, v in enumerate(f.entries))
    if f.arity == 2:
        lines = ["   " + " ".join(LETTERS)]
        for a in range(4):
            lines.append(f"{LETTERS[a]} |" + " ".join(LETTERS[f.entries[4 * a + b]] for b in range(4)))
        return "\n".join(lines)
    rows = input_tuples(f.arity)
    return "\n".join("".join(LETTERS[x] for x in r) + f" -> {LETTERS[v]}"
                     for r, v in zip(rows, f.entries))


def cmd_table(args: argparse.Namespace) -> int:
    f = resolve_table(args.fn)
    print(f"arity {f.arity}: {f}")
    named = name_of(f)
    if named and named != args.fn:
        print(f"catalog name: {named}")
    print(_grid(f))
    return 0


def cmd_member(args: argparse.Namespace) -> int:
    spec = parse_genlist(args.clone)
    f = resolve_table(args.fn, {**CATALOG, **spec.env})
    if member(f, spec):
        print(f"{f} is in {spec.name}")
        return 0
    w = witness_nonmembership(f, spec)
    print(f"{f} is not in {spec.name}: violates {w.hex()} ({w})")
    return 1


def cmd_inv2(args: argparse.Namespace) -> int:
    spec = parse_genlist(args.clone)
    fp = inv2(spec)
    print(f"{spec.name}: {len(fp)} invariant binary relations")
    if args.list:
        for R in fp.as_relations():
            print(f"{R.hex()}  {R}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    a, b = parse_genlist(args.a), parse_genlist(args.b)
    ab, ba = clone_leq(a, b), clone_leq(b, a)
    relation = {(True, True): "equal", (True, False): "strictly below",
                (False, True): "strictly above", (False, False): "incomparable with"}[ab, ba]
    print(f"{a.name} is {relation} {b.name}")
    for x, y, inside in ((a, b, ab), (b, a, ba)):
        if not inside:
            sym, rel = separating_relation(x, y)
            print(f"  {sym} of {x.name} violates {rel.hex()} ({rel}), preserved by {y.name}")
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    rec = classify(parse_genlist(args.clone))
    if args.json:
        print(json.dumps(rec.as_dict(), indent=2))
        return 0
    print(rec.clone)
    for name in ("protoalgebraic", "equivalential", "truth_equational", "algebraizable"):
        flag = getattr(rec, name)
        why = f"contains {flag.witness}" if flag else f"lacks {', '.join(flag.refuted)}"
        print(f"  {name:17} {'yes' if flag else 'no':4} ({why})")
    se = "yes" if rec.selfextensional else f"no ({rec.counterexample[0]} ~ {rec.counterexample[1]})"
    print(f"  {'selfextensional':17} {se}")
    return 0


def cmd_closure(args: argparse.Namespace) -> int:
    spec = parse_genlist(args.clone)
    if args.find:
        target = resolve_table(args.find, {**CATALOG, **spec.env})
        if target.arity != args.arity:
            raise UsageError(f"--find table has arity {target.arity}, not {args.arity}")
        term, truncated = find_term(spec, target, cap=args.cap, budget=args.budget)
        if term is None:
            print(f"{target} not found" + (" (search truncated)" if truncated else ""))
            return 3 if truncated else 1
        print(term)
        return 0
    res = closure_fixed_arity(spec, args.arity, cap=args.cap, strategy="auto", budget=args.budget)
    print(f"{spec.name}: {len(res)} tables of arity {args.arity}"
          + (" (truncated)" if res.exhausted else ""))
    if args.list:
        for i in range(len(res)):
            print(res.table(i))
    return 3 if res.exhausted else 0


def cmd_verify(args: argparse.Namespace) -> int:
    suites = args.suites or list(REGISTRY)
    unknown = [s for s in suites if s not in REGISTRY]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; known: {', '.join(REGISTRY)}")
    options = Options(deep=args.deep, threads=args.threads, seed=args.seed,
                      timing=not args.no_timing)
    results = []
    for sid in suites:
        r = run_suite(sid, options)
        results.append(r)
        for c in r.checks:
            print(f"{c.status.upper():12} {sid}/{c.id}: {c.detail}")
        s = r.summary
        print(f"== {sid}: {s['pass']} pass, {s['fail']} fail, {s['skip']} skip, "
              f"{s['inconclusive']} inconclusive")
        sys.stdout.flush()
    if args.json:
        payload = results[0].as_dict() if len(results) == 1 else [r.as_dict() for r in results]
        with open(args.json, "w") as fh:
            fh.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    return exit_code(results)


def read_nodes(path: str) -> list[CloneSpec]:
    """One node per line: ``label: genlist`` or a bare genlist used as its own label."""
    specs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            label, sep, genlist = line.partition(":")
            if not sep:
                label, genlist = line, line
            spec = parse_genlist(genlist.strip())
            specs.append(CloneSpec(label.strip(), spec.generators, spec.base))
    if not specs:
        raise UsageError(f"{path}: no nodes")
    return specs


def cmd_lattice(args: argparse.Namespace) -> int:
    specs = read_nodes(args.nodes)
    outputs = [(args.dot, "dot"), (args.json, "json")]
    if not args.dot and not args.json:
        sys.stdout.write(emit_lattice(specs, "dot"))
    for path, fmt in outputs:
        if path:
            with open(path, "w") as fh:
                fh.write(emit_lattice(specs, fmt))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dm4", description="Clones on the four-element De Morgan algebra")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="show a named function, term or raw table")
    t.add_argument("fn")
    t.set_defaults(func=cmd_table)

    m = sub.add_parser("member", help="decide membership of a function in a clone")
    m.add_argument("--clone", required=True)
    m.add_argument("--fn", required=True)
    m.set_defaults(func=cmd_member)

    i = sub.add_parser("inv2", help="invariant binary relations of a clone")
    i.add_argument("--clone", required=True)
    i.add_argument("--list", action="store_true", help="print every relation")
    i.set_defaults(func=cmd_inv2)

    c = sub.add_parser("compare", help="compare two clones by inclusion")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.set_defaults(func=cmd_compare)

    k = sub.add_parser("classify", help="logical properties of a clone above DMA")
    k.add_argument("--clone", required=True)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_classify)

    cl = sub.add_parser("closure", help="fixed-arity closure, or a term for one table")
    cl.add_argument("--clone", required=True)
    cl.add_argument("--arity", type=int, required=True)
    cl.add_argument("--find")
    cl.add_argument("--cap", type=int, help="maximum number of tables kept")
    cl.add_argument("--budget", type=int, help="maximum number of generator applications")
    cl.add_argument("--list", action="store_true")
    cl.set_defaults(func=cmd_closure)

    v = sub.add_parser("verify", help="run theorem suites")
    v.add_argument("suites", nargs="*", metavar="suite")
    v.add_argument("--json", metavar="PATH")
    v.add_argument("--deep", action="store_true", help="exhaustive versions of sampled checks")
    v.add_argument("--threads", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--no-timing", action="store_true", help="report runtime_ms as 0")
    v.set_defaults(func=cmd_verify)

    la = sub.add_parser("lattice", help="Hasse diagram of a list of clones")
    la.add_argument("--nodes", required=True)
    la.add_argument("--dot", metavar="PATH")
    la.add_argument("--json", metavar="PATH")
    la.set_defaults(func=cmd_lattice)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TermError, MajorityError, NotAboveDMA, KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"dm4 {args.command}: {msg}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"dm4 {args.command}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
