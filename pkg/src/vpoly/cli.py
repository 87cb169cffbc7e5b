"""Command-line entry point.

Every operation is reachable as a subcommand with JSON output by default
(--text switches to aligned human output).  Exit codes: 0 success, 1
domain error, 2 usage error.  Integers that can outgrow 64 bits are
emitted as strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import VpolyError
from .evaluators import (as_cycle, as_line, build_partition_gadget,
                         decide_half_partition, eval_cycle, eval_generic,
                         eval_line, eval_tree, physical_partition_function,
                         subset_sum_half_oracle)
from .ffcount import DEFAULT_BUDGET, count_zeros, countability_test
from .graph_model import graph_from_json
from .groth_classes import (banana_closed, class_to_count, euler_char_c,
                            no_field_banana)
from .multipoly import Assignment
from .selftest import run_selftest
from .vpolynomial import DEFAULT_EDGE_CAP, fk_polynomial


def _emit(args, obj: dict, text_lines) -> None:
    if args.text:
        for line in text_lines(obj):
            print(line)
    else:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _value_out(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    return v


def _load_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(fh.read())


def _load_point(path: str | None) -> Assignment:
    if path is None:
        return Assignment()
    with open(path, "r", encoding="utf-8") as fh:
        return Assignment.from_dict(json.load(fh))


def _load_scalar_map(path: str | None, fallback: float):
    if path is None:
        return fallback
    with open(path, "r", encoding="utf-8") as fh:
        return {k: float(v) for k, v in json.load(fh).items()}


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# -- subcommand handlers -----------------------------------------------------


def _cmd_compute(args) -> int:
    g = _load_graph(args.graph)
    poly = fk_polynomial(g, args.max_edges)
    obj = {"text": poly.render(), "poly": poly.to_dict(), "n_terms": len(poly)}
    _emit(args, obj, lambda o: [o["text"]])
    return 0


def _cmd_eval(args) -> int:
    g = _load_graph(args.graph)
    a = _load_point(args.point)
    value = eval_generic(g, a)
    obj = {"value": _value_out(value)}
    _emit(args, obj, lambda o: [str(o["value"])])
    return 0


def _cmd_eval_line(args) -> int:
    g = _load_graph(args.graph)
    n, weights = as_line(g)
    a = _load_point(args.point)
    value = eval_line(n, weights, a)
    obj = {"n": n, "value": _value_out(value)}
    _emit(args, obj, lambda o: [str(o["value"])])
    return 0


def _cmd_eval_cycle(args) -> int:
    g = _load_graph(args.graph)
    n, weights = as_cycle(g)
    a = _load_point(args.point)
    value = eval_cycle(n, weights, a)
    obj = {"n": n, "value": _value_out(value)}
    _emit(args, obj, lambda o: [str(o["value"])])
    return 0


def _cmd_eval_tree(args) -> int:
    g = _load_graph(args.graph)
    a = _load_point(args.point)
    value = eval_tree(g, a, root=args.root)
    obj = {"value": _value_out(value)}
    _emit(args, obj, lambda o: [str(o["value"])])
    return 0


def _cmd_gadget(args) -> int:
    items = args.set
    oracle = subset_sum_half_oracle(items)
    positive = decide_half_partition(items)
    if sum(items) % 2 == 0 and len(items) >= 2:
        tree_size = build_partition_gadget(items).tree_size
    else:
        tree_size = 0
    obj = {"set": sorted(items), "value_positive": positive, "oracle": oracle,
           "tree_size": tree_size}
    _emit(args, obj, lambda o: [
        f"set           {o['set']}",
        f"value > 0     {o['value_positive']}",
        f"oracle        {o['oracle']}",
        f"tree size     {o['tree_size']}",
    ])
    return 0


def _cmd_partition(args) -> int:
    obj = {"set": sorted(args.set), "half_partition": decide_half_partition(args.set)}
    _emit(args, obj, lambda o: [str(o["half_partition"])])
    return 0


def _cmd_physical(args) -> int:
    g = _load_graph(args.graph)
    couplings = _load_scalar_map(args.couplings, args.coupling)
    fields = _load_scalar_map(args.fields, args.field)
    value = physical_partition_function(g, args.beta, couplings, fields)
    obj = {"beta": args.beta, "value": value}
    _emit(args, obj, lambda o: [repr(o["value"])])
    return 0


def _cmd_count(args) -> int:
    g = _load_graph(args.graph)
    poly = fk_polynomial(g, args.max_edges)
    rep = count_zeros(poly, poly.variables(), args.prime, method=args.method,
                      budget=args.budget, workers=args.workers)
    obj = rep.to_dict()
    _emit(args, obj, lambda o: [
        f"prime         {o['prime']}",
        f"ambient dim   {o['ambient_dim']}",
        f"zeros         {o['zeros']}",
        f"method        {o['method']}",
    ])
    return 0


def _cmd_countability(args) -> int:
    g = _load_graph(args.graph)
    poly = fk_polynomial(g, args.max_edges)
    rep = countability_test(poly, args.fit, args.validate,
                            degree_bound=args.degree_bound, budget=args.budget,
                            workers=args.workers)
    obj = rep.to_dict()

    def lines(o):
        coeffs = o["fit_coefficients"]
        return [
            f"verdict       {o['verdict']}",
            f"coefficients  {coeffs if coeffs is not None else '(non-integer fit)'}",
            f"residuals     {o['residuals']}",
            f"caveat        {o['caveat']}",
        ]

    _emit(args, obj, lines)
    return 0


def _cmd_banana(args) -> int:
    cls = no_field_banana(args.m) if args.no_field else banana_closed(args.m)
    obj = {"m": args.m, "no_field": bool(args.no_field), "class_text": cls.render(),
           "coefficients": [str(c) for c in cls.coeffs]}
    if args.euler:
        obj["euler"] = str(euler_char_c(cls))
    if args.at_prime is not None:
        obj["prime"] = args.at_prime
        obj["count_at_prime"] = str(class_to_count(cls, args.at_prime))

    def lines(o):
        out = [o["class_text"]]
        if "euler" in o:
            out.append(f"euler  {o['euler']}")
        if "count_at_prime" in o:
            out.append(f"complement count at p={o['prime']}  {o['count_at_prime']}")
        return out

    _emit(args, obj, lines)
    return 0


def _cmd_selftest(args) -> int:
    return 0 if run_selftest() else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vpoly",
        description="Partition-function polynomials of weighted graphs: "
                    "expansion, evaluation, finite-field counting, torus classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(handler=handler)
        p.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
        return p

    p = add("compute", _cmd_compute, "expand the polynomial of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-edges", type=int, default=DEFAULT_EDGE_CAP)

    p = add("eval", _cmd_eval, "evaluate at a point by scalar recursion")
    p.add_argument("--graph", required=True)
    p.add_argument("--point")

    p = add("eval-line", _cmd_eval_line, "quadratic DP for canonical line graphs")
    p.add_argument("--graph", required=True)
    p.add_argument("--point")

    p = add("eval-cycle", _cmd_eval_cycle, "cubic DP for canonical polygons")
    p.add_argument("--graph", required=True)
    p.add_argument("--point")

    p = add("eval-tree", _cmd_eval_tree, "pseudo-polynomial DP for trees")
    p.add_argument("--graph", required=True)
    p.add_argument("--point")
    p.add_argument("--root")

    p = add("gadget", _cmd_gadget, "build and evaluate the half-partition gadget")
    p.add_argument("--set", required=True, type=_int_list)

    p = add("partition", _cmd_partition, "decide half-partition via the gadget")
    p.add_argument("--set", required=True, type=_int_list)

    p = add("physical", _cmd_physical, "thermodynamic partition function")
    p.add_argument("--graph", required=True)
    p.add_argument("--beta", required=True, type=float)
    p.add_argument("--couplings", help="JSON file mapping edge id to coupling")
    p.add_argument("--fields", help="JSON file mapping vertex id to field")
    p.add_argument("--coupling", type=float, default=1.0, help="uniform coupling fallback")
    p.add_argument("--field", type=float, default=0.0, help="uniform field fallback")

    p = add("count", _cmd_count, "count zeros over a prime field")
    p.add_argument("--graph", required=True)
    p.add_argument("--prime", required=True, type=int)
    p.add_argument("--method", choices=["auto", "brute", "elim"], default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int)
    p.add_argument("--max-edges", type=int, default=DEFAULT_EDGE_CAP)

    p = add("countability", _cmd_countability, "interpolation verdict for the counting function")
    p.add_argument("--graph", required=True)
    p.add_argument("--fit", required=True, type=_int_list)
    p.add_argument("--validate", required=True, type=_int_list)
    p.add_argument("--degree-bound", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int)
    p.add_argument("--max-edges", type=int, default=DEFAULT_EDGE_CAP)

    p = add("banana", _cmd_banana, "torus class of a banana-graph complement")
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--no-field", action="store_true", help="comparison class without field")
    p.add_argument("--euler", action="store_true", help="also substitute T -> -2")
    p.add_argument("--at-prime", type=int, help="also substitute T -> p-1")

    add("selftest", _cmd_selftest, "run the reproduction suite and print a table")

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except VpolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
