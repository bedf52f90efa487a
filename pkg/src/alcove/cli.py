"""Command-line entry point ``alcove``.

Exit status: 0 when every selected check passes, 1 on a check failure,
2 on a usage error (bad flags, unknown type, conflicting gates).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog, game, poset, strategy, typea, weyl
from .core import CoxeterGraph, graph_from_json, graph_to_json, parse_configuration
from .errors import (
    AlcoveError,
    GateConflict,
    IoFailure,
    LengthMismatch,
    ScalarParseError,
    UnknownType,
)
from .scalar import Scalar, format_scalar
from .verify import expand_selector, resolve_gate, run_verify

USAGE_ERRORS = (UnknownType, GateConflict, ScalarParseError, LengthMismatch)


class UsageError(Exception):
    pass


# serialization ------------------------------------------------------------


def _default(obj):
    if isinstance(obj, (Fraction, Scalar)):
        return format_scalar(obj)
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def graph_to_dot(graph: CoxeterGraph, name: str = "diagram") -> str:
    lines = [f"graph {name} {{"]
    for i in range(graph.n):
        lines.append(f'  v{i} [label="{i}"];')
    for i in range(graph.n):
        for j in range(i + 1, graph.n):
            if graph.cartan[i][j] != 0:
                a, b = format_scalar(graph.cartan[i][j]), format_scalar(graph.cartan[j][i])
                lines.append(f'  v{i} -- v{j} [label="{a},{b}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# argument resolution --------------------------------------------------------


def _graph(args) -> CoxeterGraph:
    if args.graph and args.type:
        raise UsageError("give either --graph or --type, not both")
    if args.graph:
        try:
            raw = json.loads(Path(args.graph).read_text())
        except OSError as exc:
            raise IoFailure(f"cannot read {args.graph}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.graph} is not JSON: {exc}") from None
        return graph_from_json(raw)
    if args.type:
        return catalog.graph_for(args.type)
    raise UsageError("--graph or --type is required")


def _affine(args) -> catalog.AffineData:
    if not args.type:
        raise UsageError("--type is required")
    spec = catalog.parse_type(args.type)
    if not spec.affine:
        raise UsageError(f"{args.type} is not an extended diagram")
    return catalog.affine(args.type)


def _ints(text: str) -> tuple:
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, thing, default_json=None) -> str:
    if args.emit == "dot":
        if not hasattr(thing, "to_dot"):
            raise UsageError("this object has no DOT form")
        return thing.to_dot()
    return dumps(default_json if default_json is not None else thing.to_json())


# subcommands ----------------------------------------------------------------


def cmd_catalog(args) -> tuple:
    if not args.type and not args.graph:
        return 0, dumps({"types": catalog.catalog_types(args.max_rank)})
    g = _graph(args)
    if args.emit == "dot":
        return 0, graph_to_dot(g)
    out = graph_to_json(g)
    if args.type and args.type not in catalog.PRESETS and catalog.parse_type(args.type).affine:
        data = catalog.affine(args.type)
        out.update(
            delta=list(data.delta),
            extending=list(data.extending),
            exponents=list(data.exponents),
            highestRoot=list(data.highest_root),
        )
    elif g.is_finite_type:
        out.update(
            delta=None,
            extending=[],
            exponents=list(catalog.exponents(g)),
            highestRoot=list(catalog.highest_root(g)),
        )
    else:
        delta = g.null_root
        out.update(delta=list(delta) if delta else None, extending=[], exponents=None, highestRoot=None)
    return 0, dumps(out)


def _start(args, g: CoxeterGraph):
    if args.start:
        return parse_configuration(args.start, g)
    if args.type in catalog.PRESETS:
        return catalog.skew_start() if g.n == 3 else (-2, -2)
    if args.type and catalog.parse_type(args.type).affine:
        return strategy.rho(catalog.affine(args.type), 0)
    raise UsageError("--start is required for this graph")


def cmd_play(args) -> tuple:
    g = _graph(args)
    v = _start(args, g)
    if args.seq is not None:
        rec = game.play(g, v, _ints(args.seq))
    else:
        rec = game.play_to_termination(g, v, _policy(args), args.step_cap)
    return 0, dumps(rec.to_json())


def _policy(args):
    p = args.policy
    if p.startswith("random") and ":" not in p:
        p = f"random:{args.seed}"
    return p


def cmd_orbit(args) -> tuple:
    g = _graph(args)
    orb = game.orbit(g, _start(args, g), args.node_cap)
    return 0, _emit(args, orb)


def cmd_strategy(args) -> tuple:
    data = _affine(args)
    i = args.from_
    start = strategy.rho(data, i)
    if args.policy == "all":
        policies = ["min-index", "most-negative", f"random:{args.seed}"]
    else:
        policies = [_policy(args)]
    runs = [strategy.run_substrategy(data, start, p) for p in policies]
    keys = {(r.length, r.record.end, r.record.score) for r in runs}
    out = runs[0].to_json()
    out["policies"] = policies
    if args.policy == "all" and poset.poset_size(data) <= args.gate:
        tree = strategy.strategy_tree(data, i, gate=args.gate, seed=args.seed)
        keys.add((tree.length, tuple(-x for x in strategy.rho(data, tree.end_vertex)), tree.score))
        out["plays"] = tree.plays
    out["policyAgreement"] = len(keys) == 1
    return (0 if len(keys) == 1 else 1), dumps(out)


def cmd_weyl(args) -> tuple:
    data = _affine(args)
    out = {}
    if args.translations or not (args.word is not None or args.factorize):
        datums = weyl.translations(data)
        out["translations"] = [d.to_json() for d in datums]
        g = weyl.check_gamma_homomorphism(data, datums)
        out["gammaGroupOrder"] = g.order
    if args.word is not None:
        w = weyl.element_from_word(data.graph, _ints(args.word))
        out["element"] = {
            "length": weyl.length(data.graph, w),
            "reducedWord": list(weyl.reduced_word(data.graph, w)),
            "leftDescents": weyl.left_descents(data.graph, w),
            "matrix": [[format_scalar(x) for x in row] for row in w.matrix],
        }
    if args.factorize:
        r = weyl.factorization_check(data, args.factorize)
        out["factorization"] = {
            "radius": r.radius,
            "ball": r.ball_size,
            "finiteGroup": r.w0_size,
            "translations": r.semigroup_size,
            "poset": r.poset_size,
            "unique": True,
        }
    if args.translations and set(out) == {"translations", "gammaGroupOrder"}:
        return 0, dumps(out["translations"])
    return 0, dumps(out)


def _gated_poset(args, data):
    poset._gate(data, args.gate)
    return poset.build_poset(data, args.from_)


def cmd_poset(args) -> tuple:
    data = _affine(args)
    return 0, _emit(args, _gated_poset(args, data))


def cmd_hilbert(args) -> tuple:
    data = _affine(args)
    out = {
        "type": data.name,
        "closedForm": str(poset.hilbert_closed_form(data)),
        "assignments": [
            [[v, m] for v, m in a] for a in poset.exponent_assignment(data)
        ],
        "identities": poset.verify_identities(data, args.gate).to_json(),
        "topDegree": poset.top_degree_report(data, args.gate),
    }
    out["empirical"] = (
        str(poset.hilbert_empirical(poset.build_poset(data)))
        if poset.poset_size(data) <= args.gate
        else None
    )
    return 0, dumps(out)


def cmd_typea(args) -> tuple:
    n = args.n
    out = {"n": n}
    if args.window:
        s = typea.AffinePermutation(_ints(args.window))
        n = out["n"] = s.n
        entry = {"window": list(s.window), "boundary": list(typea.boundary(s))}
        entry["length"] = typea.length_by_game(s)
        if s.is_dominant():
            g = typea.gamma_vector(s)
            entry.update(gamma=list(g), formulaLength=typea.formula_length(g), inHypercube=all(x < i for i, x in enumerate(g, 1)))
        out["window"] = entry
    if args.gamma:
        if n is None:
            raise UsageError("--gamma needs --n")
        s = typea.gamma_inverse(_ints(args.gamma), n)
        out["fromGamma"] = {"window": list(s.window), "boundary": list(typea.boundary(s))}
    if n is None:
        raise UsageError("--n or --window is required")
    if args.check_lengths:
        r = typea.check_length_formula(n, args.bound)
        out["lengths"] = {"bound": r.bound, "checked": r.checked, "match": True}
    if args.hypercube:
        prod_form = typea.hypercube_product(n)
        out["hypercube"] = {
            "sum": str(typea.hypercube_hilbert(n)),
            "product": str(prod_form),
            "windows": [list(s.window) for s in typea.hypercube_windows(n)],
        }
    return 0, dumps(out)


def cmd_verify(args) -> tuple:
    if args.graph:
        from .verify import verify_graph

        reports = [verify_graph(_graph(args), args.gate, args.seed)]
    else:
        names = expand_selector(args.type, args.max_rank)
        reports = run_verify(names, args.gate, args.seed, args.expect_counterexample, args.workers)
    payload = [r.to_json(timing=args.timing) for r in reports]
    ok = all(r.ok for r in reports)
    body = payload[0] if len(payload) == 1 else {"ok": ok, "reports": payload}
    return (0 if ok else 1), dumps(body)


EXPORTABLE = ("catalog", "orbit", "poset", "translations", "hilbert", "verify")


def cmd_export(args) -> tuple:
    handler = {
        "catalog": cmd_catalog,
        "orbit": cmd_orbit,
        "poset": cmd_poset,
        "translations": lambda a: cmd_weyl(_with(a, translations=True, word=None, factorize=0)),
        "hilbert": cmd_hilbert,
        "verify": cmd_verify,
    }[args.object]
    code, text = handler(args)
    if args.out and args.out != "-":
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise IoFailure(f"cannot write {args.out}: {exc}") from None
        return code, ""
    return code, text


def _with(ns, **kw):
    d = vars(ns).copy()
    d.update(kw)
    return argparse.Namespace(**d)


# parser ---------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--graph", metavar="FILE", help="graph JSON file")
    p.add_argument("--type", metavar="NAME", help="catalog type such as C~2, B3 or A~2-skew")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--gate-nodes", type=int, default=None, dest="gate_nodes")
    p.add_argument("--emit", choices=("json", "dot"), default="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="alcove", description="Numbers game and affine Weyl group toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="Cartan data for a type")
    p.add_argument("--max-rank", type=int, default=8)
    p.set_defaults(func=cmd_catalog)

    for name, func, text in (
        ("play", cmd_play, "fire a sequence or play to termination"),
        ("orbit", cmd_orbit, "two-way closure of a configuration"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--start", help='configuration such as "(-2,1,1)"')
        p.add_argument("--node-cap", type=int, default=game.DEFAULT_CAP)
        p.add_argument("--step-cap", type=int, default=game.DEFAULT_CAP)
        p.add_argument("--policy", default="min-index")
        if name == "play":
            p.add_argument("--seq", help="comma-separated vertices; omit to play to termination")
        p.set_defaults(func=func)

    p = sub.add_parser("strategy", parents=[common], help="run the sub-(-1) strategy")
    p.add_argument("--from", dest="from_", type=int, default=0)
    p.add_argument("--policy", default="min-index", help="all, min-index, most-negative or random:SEED")
    p.set_defaults(func=cmd_strategy)

    p = sub.add_parser("weyl", parents=[common], help="translations and group elements")
    p.add_argument("--translations", action="store_true")
    p.add_argument("--word", help="comma-separated generator word")
    p.add_argument("--factorize", type=int, default=0, metavar="RADIUS")
    p.set_defaults(func=cmd_weyl)

    for name, func, text in (
        ("poset", cmd_poset, "graded poset of the strategy"),
        ("hilbert", cmd_hilbert, "rank generating function"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--from", dest="from_", type=int, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("typea", parents=[common], help="affine permutations")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--window", help="comma-separated window")
    p.add_argument("--gamma", help="comma-separated gamma vector")
    p.add_argument("--check-lengths", action="store_true")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--hypercube", action="store_true")
    p.set_defaults(func=cmd_typea)

    p = sub.add_parser("verify", parents=[common], help="run check suites")
    p.add_argument("--expect-counterexample", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")
    p.add_argument("--max-rank", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="write an object to a file")
    p.add_argument("object", choices=EXPORTABLE)
    p.add_argument("--out", default="-")
    p.add_argument("--from", dest="from_", type=int, default=None)
    p.add_argument("--start")
    p.add_argument("--node-cap", type=int, default=game.DEFAULT_CAP)
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--expect-counterexample", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.gate = resolve_gate(args.gate_nodes)
        code, text = args.func(args)
    except (UsageError, *USAGE_ERRORS) as exc:
        sys.stderr.write(f"alcove: error: {type(exc).__name__}: {exc}\n")
        return 2
    except AlcoveError as exc:
        sys.stdout.write(dumps({"ok": False, "error": type(exc).__name__, "message": str(exc)}))
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
