"""``hopf-toprec``: command line front end.

Exit codes: 0 success, 1 a check failed, 2 parse error, 3 inconsistent
parameters (including orders above ``HOPF_TOPREC_MAX_ORDER``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks, correlators, foissy, hopf, loops, perms, quantize
from .linear import LinComb
from .loops import LoopGraph
from .perms import Perm
from .serialize import (ParseError, parse_corr, parse_forest, parse_graph, parse_perm,
                        parse_tree, render, to_json)
from .trees import LEAF, Tree, enumerate_trees


class Inconsistent(ValueError):
    pass


def max_order() -> int:
    raw = os.environ.get("HOPF_TOPREC_MAX_ORDER", "8")
    try:
        return int(raw)
    except ValueError:
        raise Inconsistent(f"HOPF_TOPREC_MAX_ORDER must be an integer, got {raw!r}") from None


def guard(n: int, what: str = "order") -> int:
    if n < 0:
        raise Inconsistent(f"{what} must be non-negative")
    if n > max_order():
        raise Inconsistent(f"{what} {n} exceeds HOPF_TOPREC_MAX_ORDER={max_order()}")
    return n


def parse_element(text: str):
    """A tree, a loop graph or a permutation, told apart by their syntax."""
    s = text.strip()
    if ";" in s:
        return parse_graph(s)
    if "|" in s:
        return parse_tree(s)
    return parse_perm(s)


def _lin(x) -> LinComb:
    return LinComb.basis(x)


def _order(x) -> int:
    return x.order


# -- subcommands

def cmd_enumerate(args):
    if args.trees is not None:
        n = guard(args.trees)
        return list(enumerate_trees(n))
    n, g = args.graphs
    guard(n)
    if g < 0 or n + 2 - 2 * g < 1:
        raise Inconsistent(f"no graphs with order {n} and genus {g}: inconsistent Euler characteristic")
    rule = loops.NESTED if args.rule == "nested" else loops.ADJACENT
    return loops.enumerate_loop_graphs(n, g, rule)


def cmd_star(args):
    xs = [parse_element(s) for s in args.operands]
    guard(sum(_order(x) for x in xs), "total order")
    kinds = {type(x) for x in xs}
    if len(kinds) != 1:
        raise Inconsistent("operands must all be trees, all graphs or all permutations")
    kind = kinds.pop()
    if kind is Perm:
        out = _lin(Perm())
        for x in xs:
            out = perms.star(out, _lin(x))
        return out
    if kind is Tree:
        out = hopf.ONE
        for x in xs:
            out = hopf.star(out, _lin(x))
        return out
    out = _lin(LoopGraph(LEAF))
    for x in xs:
        out = quantize.graph_star_lin(out, _lin(x))
    return out


def cmd_coproduct(args):
    if args.corr is not None:
        if args.operand is not None:
            raise Inconsistent("--corr takes no operand")
        return correlators.corr_coproduct(guard(args.corr), reduced=args.reduced)
    if args.operand is None:
        raise Inconsistent("coproduct needs an operand or --corr N")
    x = parse_element(args.operand)
    guard(_order(x))
    if isinstance(x, LoopGraph):
        raise Inconsistent("the coproduct is defined on trees and permutations")
    if isinstance(x, Perm):
        if args.reduced or args.iterate:
            raise Inconsistent("--reduced and --iterate apply to trees")
        return perms.coproduct(_lin(x))
    if args.iterate:
        if args.iterate < 1:
            raise Inconsistent("--iterate needs k >= 1")
        return hopf.iterated_reduced(_lin(x), args.iterate)
    if args.reduced:
        return hopf.reduced_coproduct(_lin(x))
    return hopf.coproduct(_lin(x))


def cmd_antipode(args):
    x = parse_element(args.operand)
    guard(_order(x))
    if not isinstance(x, Tree):
        raise Inconsistent("the antipode is implemented on trees")
    return hopf.antipode(_lin(x))


def cmd_expand(args):
    g, n = args.genus, guard(args.order)
    if g < 0 or n < 1 or n + 2 - 2 * g < 1:
        raise Inconsistent(f"W with genus {g} and order {n}: inconsistent Euler characteristic")
    k = n + 2 - 2 * g
    if args.step:
        if 2 - 2 * g - k > -1:
            raise Inconsistent("no recursion step for this correlation function")
        return correlators.toprec_rhs(g, correlators.ext_labels(k - 1))
    ref = correlators.CorrRef(g, (correlators.P,) + correlators.ext_labels(k - 1))
    planar = correlators.planar_expansion(ref)
    if args.all_orderings:
        sym = correlators.Symmetrized(planar, ref.labels[1:])
        return sym.expand()
    return planar


def cmd_product(args):
    a, b = parse_corr(args.left), parse_corr(args.right)
    try:
        return correlators.corr_product(a, b)
    except ValueError as exc:
        raise Inconsistent(str(exc)) from None


def cmd_phi(args):
    if args.inverse:
        t = parse_tree(args.operand)
        guard(t.order)
        return foissy.phi_inverse(t)
    f = parse_forest(args.operand)
    guard(f.size)
    return foissy.phi(f)


def cmd_exp_series(args):
    N = guard(args.N)
    series = foissy.exp_series_via_permutations(N) if args.via_perms else foissy.exp_series(N)
    return [(n, a) for n, a in enumerate(series)]


def cmd_quantize(args):
    x = parse_element(args.operand)
    if isinstance(x, Perm):
        raise Inconsistent("quantize expects a tree or a loop graph")
    guard(_order(x))
    if args.times is not None:
        y = parse_element(args.times)
        if isinstance(y, Perm):
            raise Inconsistent("quantize expects a tree or a loop graph")
        guard(_order(x) + _order(y), "total order")
        if isinstance(x, Tree) and isinstance(y, Tree):
            return quantize.quantum_star(_lin(x), _lin(y))
        return quantize.graph_star(loops_graph(x), loops_graph(y))
    if args.power < 0:
        raise Inconsistent("--power must be non-negative")
    return quantize.q_power(_lin(loops_graph(x)), args.power)


def loops_graph(x) -> LoopGraph:
    return x if isinstance(x, LoopGraph) else LoopGraph(x)


def cmd_wseries(args):
    n = guard(args.n)
    if n < 1:
        raise Inconsistent("wseries needs n >= 1")
    return quantize.build_W(n)


# -- checks

def io_roundtrip(max_order: int = 4) -> list[checks.Line]:
    """JSON and text round trips over every enumerated object of order <= max_order."""
    from .serialize import from_json
    objects: list = []
    for n in range(max_order + 1):
        objects += list(enumerate_trees(n))
        objects += perms.all_perms(n)
        for g in range(n // 2 + 2):
            if n + 2 - 2 * g >= 1:
                objects += loops.enumerate_loop_graphs(n, g)
        objects += list(foissy.forests(n))
        objects += list(foissy.rooted_trees(n))
        objects.append(hopf.coproduct(hopf.gen_power(n)))
        if n >= 1:
            objects.append(quantize.build_W(n))
            objects += list(correlators.expand_w0(n).base) if n <= 3 else []
            objects.append(correlators.corr_coproduct(n))
            objects.append(correlators.planar_expansion(
                correlators.CorrRef(0, (correlators.P,) + correlators.ext_labels(n + 1))))
    bad_json = [x for x in objects if from_json(json.loads(render(x, "json"))) != x]
    out = [(f"JSON round trip, {len(objects)} objects of order <= {max_order}", not bad_json,
            checks._first(bad_json))]
    bad_text = []
    for x in objects:
        if isinstance(x, Tree) and parse_tree(render(x)) != x:
            bad_text.append(x)
        elif isinstance(x, LoopGraph) and parse_graph(render(x)) != x:
            bad_text.append(x)
        elif isinstance(x, Perm) and parse_perm(render(x)) != x:
            bad_text.append(x)
        elif isinstance(x, foissy.Forest) and parse_forest(render(x)) != x:
            bad_text.append(x)
    out.append(("text round trip for trees, graphs, permutations, forests", not bad_text,
                checks._first(bad_text)))
    return out


def cmd_check(args):
    name = args.suite
    if name == "io":
        return {"io": io_roundtrip()}
    if name == "all":
        return checks.run_all()
    try:
        key = checks.resolve(name)
    except KeyError:
        raise Inconsistent(f"unknown suite {name!r}; use 1..11, a suite name, io or all") from None
    return {key: checks.run(key)}


# -- output

def _emit_value(value, fmt: str, full: bool) -> str:
    if fmt == "json":
        if isinstance(value, list):
            if value and isinstance(value[0], tuple):
                return json.dumps([{"order": n, "value": to_json(a)} for n, a in value],
                                  sort_keys=True, ensure_ascii=False)
            return json.dumps([to_json(x) for x in value], sort_keys=True, ensure_ascii=False)
        if isinstance(value, correlators.RecursionStep):
            return json.dumps(to_json(value.as_sum()), sort_keys=True, ensure_ascii=False)
        return render(value, "json")
    if isinstance(value, correlators.RecursionStep):
        return value.latex() if fmt == "latex" else value.text()
    if isinstance(value, list):
        if value and isinstance(value[0], tuple):
            return "\n".join(f"{n}: {render(a, fmt)}" for n, a in value)
        return "\n".join(render(x, fmt) for x in value)
    return render(value, fmt, full=full)


def _emit_checks(results: dict, fmt: str) -> tuple[str, bool]:
    ok_all = all(checks.passed(lines) for lines in results.values())
    if fmt == "json":
        data = {key: [{"name": n.strip(), "ok": ok, "detail": d} for n, ok, d in lines]
                for key, lines in results.items()}
        return json.dumps({"ok": ok_all, "suites": data}, sort_keys=True), ok_all
    rows = []
    for key, lines in results.items():
        label = checks.NAMES.get(key, key)
        rows.append(f"[{'PASS' if checks.passed(lines) else 'FAIL'}] suite {key} ({label})")
        for n, ok, d in lines:
            mark = "ok  " if ok else "FAIL"
            rows.append(f"    {mark} {n.strip()}" + ("" if d == "ok" else f": {d}"))
    rows.append("all passed" if ok_all else "some checks failed")
    return "\n".join(rows), ok_all


def build_parser() -> argparse.ArgumentParser:
    # the shared options are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS,
                        help="write the result to FILE instead of standard out")
    p = argparse.ArgumentParser(prog="hopf-toprec", parents=[common],
                                description="Planar binary tree Hopf algebra and loop-graph tools.")
    sub = p.add_subparsers(dest="command", required=True)
    add = sub.add_parser

    def sub_parser(name, **kw):
        return add(name, parents=[common], **kw)

    sub.add_parser = sub_parser

    s = sub.add_parser("enumerate", help="list trees or loop graphs")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--trees", type=int, metavar="N")
    g.add_argument("--graphs", type=int, nargs=2, metavar=("N", "G"))
    s.add_argument("--rule", choices=("adjacent", "nested"), default="adjacent")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("star", help="product of trees, graphs or permutations")
    s.add_argument("operands", nargs="+")
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("coproduct", help="coproduct of a tree or permutation")
    s.add_argument("operand", nargs="?")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--reduced", action="store_true")
    g.add_argument("--iterate", type=int, metavar="K")
    s.add_argument("--corr", type=int, metavar="N", help="coproduct of W^0_(N+2)")
    s.set_defaults(func=cmd_coproduct)

    s = sub.add_parser("antipode")
    s.add_argument("operand")
    s.set_defaults(func=cmd_antipode)

    s = sub.add_parser("expand", help="kernel/cylinder expansion of W^g with Euler characteristic -n")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--step", action="store_true", help="one recursion step instead of the full expansion")
    g.add_argument("--all-orderings", action="store_true", help="sum over orderings of the external labels")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("product", help="chain product of two genus 0 correlation functions")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("phi", help="forest to tree, or back with --inverse")
    s.add_argument("operand")
    s.add_argument("--inverse", action="store_true")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("exp-series", help="exp(g (1)) read as forests")
    s.add_argument("N", type=int)
    s.add_argument("--via-perms", action="store_true")
    s.set_defaults(func=cmd_exp_series)

    s = sub.add_parser("quantize", help="apply Q, or the h-product with --times")
    s.add_argument("operand")
    s.add_argument("--power", type=int, default=1)
    s.add_argument("--times", metavar="OTHER")
    s.set_defaults(func=cmd_quantize)

    s = sub.add_parser("wseries", help="W^(n) as a series in h")
    s.add_argument("n", type=int)
    s.add_argument("--full", action="store_true", help="list the graphs instead of the summary")
    s.set_defaults(func=cmd_wseries)

    s = sub.add_parser("check", help="run a self-check suite (1..11, a name, io or all)")
    s.add_argument("suite")
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = getattr(args, "format", "text")
    args.out = getattr(args, "out", None)
    try:
        value = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (Inconsistent, ValueError) as exc:
        print(f"inconsistent parameters: {exc}", file=sys.stderr)
        return 3
    code = 0
    if args.command == "check":
        text, ok = _emit_checks(value, args.format)
        code = 0 if ok else 1
    else:
        text = _emit_value(value, args.format, getattr(args, "full", False))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
