"""Command runner and ``openbook`` entry point."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from .books import OpenBook, connect_binding, first_homology, make_open_book
from .certificates import (ConventionError, detect_negative_stabilization, fillability_report,
                           search_sobering_arc)
from .curves import CurveClass, algebraic_intersection, apply_twist, geometric_intersection
from .dsl import DslError, Env, Node, Script, format_node, parse
from .mcg import (Letter, TwistWord, equal, negative_normal_form, positify, verify_relation)
from .surface import make_surface, standard_curves

SCHEMA = 1


@dataclass
class Options:
    json: bool = False
    budget: int = 4
    seed: int = 0


def book_json(ob: OpenBook) -> dict:
    h = first_homology(ob)
    return {"page": {"genus": ob.page.genus, "boundary": ob.page.boundary_count},
            "monodromy": [repr(L) for L in ob.monodromy],
            "h1": {"rank": h.rank, "torsion": list(h.torsion)},
            "provenance": list(ob.provenance)}


def _book_text(label: str, ob: OpenBook) -> list[str]:
    d = book_json(ob)
    h = first_homology(ob)
    return [f"{label}: page ({d['page']['genus']}, {d['page']['boundary']}), "
            f"monodromy {' * '.join(d['monodromy']) or 'id'}, h1 {h}"]


def _h1(ob: OpenBook):
    h = first_homology(ob)
    data = {"rank": h.rank, "torsion": list(h.torsion), "homology_sphere": h.is_trivial}
    text = f"h1: {h}" + (" (homology sphere)" if h.is_trivial else "")
    return data, [text]


def _execute(env: Env, node: Node, opts: Options):
    v, a = node.form, node.args
    if v == "h1":
        return _h1(env.book(a[0]))
    if v in ("show", "stabilize", "sum", "surgery", "connect", "destabilize"):
        if v == "show":
            ob = env.book(a[0])
        elif v == "stabilize":
            ob = env.stabilize(*a)
        elif v == "sum":
            ob = env.sum(*a)
        elif v == "surgery":
            ob = env.surgery(*a)
        elif v == "connect":
            ob = connect_binding(env.book(a[0]))
        else:
            found = detect_negative_stabilization(env.book(a[0]))
            if not found:
                return {"destabilized": None, "reason": found.reason}, \
                    [f"destabilize: {found.reason}"]
            ob = found.destabilized
        return {"book": book_json(ob)}, _book_text(v, ob)
    if v == "certify":
        budget = opts.budget if a[1] is None else a[1]
        rep = fillability_report(env.book(a[0]), stein_budget=budget, arc_budget=budget)
        lines = [f"certify: {rep.verdict}"]
        cert = rep.stein or rep.overtwisted
        if rep.overtwisted:
            c = rep.overtwisted
            lines.append(f"  sobering arc {' '.join(c.arc.names()) or '(chord)'} from corner "
                         f"{c.arc.start} to corner {c.arc.end}, i = {c.i_value:g}")
        elif rep.stein:
            n = len(rep.stein.witness)
            lines.append(f"  positive word of {n} letter{'s' if n != 1 else ''}")
        elif cert is None:
            lines.append(f"  no certificate within budget {budget}")
        return rep.to_json(), lines
    if v == "sobering":
        budget = opts.budget if a[1] is None else a[1]
        res = search_sobering_arc(env.book(a[0]), budget)
        return res.to_json(), [f"sobering: {'found' if res else 'not found'}"]
    if v in ("positify", "normal-form"):
        w = env.book(a[0]).monodromy
        out = positify(w) if v == "positify" else negative_normal_form(w)
        ok = equal(w, out)
        return {"word": [repr(L) for L in out], "equal": ok}, \
            [f"{v}: {' * '.join(map(repr, out)) or 'id'}", f"  equal: {ok}"]
    if v == "check-relation":
        kind, names = a
        curves = [env.curve(x, env.current) for x in names]
        if kind == "chain":
            level = "homology" if len(curves) >= 4 else "exact"
            holds = verify_relation("chain", curves, level=level)
        else:
            level = "exact"
            holds = verify_relation(kind, curves[:2])
        data = {"relation": kind, "curves": list(names), "level": level, "holds": holds}
        return data, [f"relation {kind} [{', '.join(names)}] ({level}): "
                      f"{'holds' if holds else 'FAILS'}"]
    raise ValueError(f"unknown command {v!r}")


def run(script: Script, options: Options | None = None) -> tuple[list[dict], list[str], int]:
    """Run every command; returns JSON records, text lines and the exit status."""
    opts = options or Options()
    env = script.env
    if env is None:
        env = Env()
        for n in script.declarations:
            env.elaborate(n)
    records, lines, status = [], [], 0
    for node in script.commands:
        env._node = node
        rec = {"command": format_node(node)[4:], "line": node.span.line}
        try:
            data, text = _execute(env, node, opts)
            rec["result"] = data
            lines.extend(text)
        except (ValueError, RuntimeError, ConventionError, DslError) as exc:
            status = 1
            rec["error"] = str(exc)
            lines.append(f"error: line {node.span.line}: {exc}")
        records.append(rec)
    return records, lines, status


# ---------------------------------------------------------------------------
# invariant self-check


def _random_curve(rng: random.Random, s) -> CurveClass:
    ncs = standard_curves(s)
    pool = list(ncs.chain) + list(ncs.boundary_parallel)
    c = rng.choice(pool)
    for _ in range(rng.randint(0, 3)):
        c = apply_twist(c, rng.choice(ncs.chain), rng.choice((1, -1)))
    return c


def check_suite(seed: int, rounds: int = 40) -> list[tuple[str, bool]]:
    rng = random.Random(seed)
    s = make_surface(1, 2)
    sym = inv = alg = True
    for _ in range(rounds):
        x, y, g = (_random_curve(rng, s) for _ in range(3))
        i = geometric_intersection(x, y)
        sym &= i == geometric_intersection(y, x)
        alg &= abs(algebraic_intersection(x, y)) <= i
        inv &= apply_twist(apply_twist(x, g, 1), g, -1) == x
    out = [("intersection symmetry", sym), ("|algebraic| <= geometric", alg),
           ("twist inverse law", inv)]
    ncs = standard_curves(make_surface(1, 1))
    out.append(("braid relation", verify_relation("braid", ncs.chain[:2])))
    out.append(("chain relation k=2", verify_relation("chain", ncs.chain[:2])))
    tref = make_open_book(ncs.chain[0].surface,
                          TwistWord(ncs.chain[0].surface, tuple(Letter(c) for c in ncs.chain)))
    out.append(("trefoil homology sphere", first_homology(tref).is_trivial))
    return out


# ---------------------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="openbook", description="Open book calculus scripts.")
    ap.add_argument("script", nargs="?", help="script file, or - for standard input")
    ap.add_argument("--json", action="store_true", help="emit one JSON document")
    ap.add_argument("--budget", type=int, default=4, help="default search budget for certify")
    ap.add_argument("--seed", type=int, default=0, help="seed for the --check suite")
    ap.add_argument("--check", action="store_true", help="run the invariant self-check")
    args = ap.parse_args(argv)
    opts = Options(args.json, args.budget, args.seed)

    status = 0
    doc: dict = {"schema": SCHEMA}
    if args.check:
        checks = check_suite(args.seed)
        doc["check"] = [{"name": n, "passed": ok} for n, ok in checks]
        if not args.json:
            for n, ok in checks:
                print(f"{'PASS' if ok else 'FAIL'} {n}")
        status = 0 if all(ok for _, ok in checks) else 1
    if args.script is not None:
        text = sys.stdin.read() if args.script == "-" else open(args.script, encoding="utf-8").read()
        try:
            script = parse(text)
        except DslError as exc:
            if args.json:
                print(json.dumps({"schema": SCHEMA, "parse_error": exc.to_json()}, indent=2))
            else:
                print(str(exc), file=sys.stderr)
            return 2
        records, lines, st = run(script, opts)
        status = max(status, st)
        doc["results"] = records
        if not args.json:
            print("\n".join(lines))
    elif not args.check:
        ap.print_usage(sys.stderr)
        return 2
    if args.json:
        print(json.dumps(doc, indent=2))
    return status


if __name__ == "__main__":
    sys.exit(main())
