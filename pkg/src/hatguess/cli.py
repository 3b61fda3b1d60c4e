"""Command-line interface.

Exit codes: 0 wins/solvable/true, 1 loses/unsolvable/false, 2
timeout/not-found, 3 usage or I/O error.  Verdict lines are machine
readable; every randomized subcommand is reproducible given --seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions, linear, saturated, solver, strategies
from .errors import FormatError, NotReducibleError, ParameterError, WorkBudgetError
from .graphs import build_graph, load_graph, parse_graph_spec, save_graph
from .strategies import load_table_strategy, parse_table_strategy, save_table_strategy

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_TIMEOUT = 2
EXIT_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def load_any_strategy(path: str):
    with open(path, encoding="utf-8") as handle:
        doc = json.load(handle)
    kind = doc.get("kind")
    if kind == "table":
        return parse_table_strategy(doc)
    if kind == "linear":
        return linear.parse_linear_strategy(doc)
    raise FormatError(f"unknown strategy kind {kind!r}")


def _build_parser() -> _Parser:
    top = _Parser(prog="hatguess", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit graphs and constructed strategies")
    p.add_argument("what", choices=["graph", "sum", "c4-linear", "bipartite", "multipartite", "dicycle", "reduce"])
    p.add_argument("--spec", help="graph generator, e.g. cycle:5 or dicycle:3,3,3")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--sizes", help="comma-separated part sizes")
    p.add_argument("--matrix", action="append", help="saturated matrix file (repeatable)")
    p.add_argument("--graph")
    p.add_argument("--strategy")
    p.add_argument("--v1", type=int, help="degree-1 vertex to drop (reduce)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="exhaustively verify a strategy file")
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("linear-verify", help="verify an affine strategy algebraically")
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", required=True)

    p = sub.add_parser("solve", help="decide q-solvability")
    p.add_argument("--graph", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=solver.DEFAULT_NODE_BUDGET)
    p.add_argument("--timeout-secs", type=float, default=solver.DEFAULT_TIME_BUDGET)
    p.add_argument("--out")

    p = sub.add_parser("hg", help="compute the hat guessing number up to --q-max")
    p.add_argument("--graph", required=True)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=solver.DEFAULT_NODE_BUDGET)
    p.add_argument("--timeout-secs", type=float, default=solver.DEFAULT_TIME_BUDGET)

    p = sub.add_parser("linear-decide", help="decide affine solvability over GF(q)")
    p.add_argument("--graph", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--budget-ops", type=int, default=10**9)
    p.add_argument("--timeout-secs", type=float)
    p.add_argument("--out")

    p = sub.add_parser("saturated", help="check / construct / search saturated matrices")
    p.add_argument("action", choices=["check", "random", "search"])
    p.add_argument("--matrix")
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-nodes", type=int, default=saturated.DEFAULT_SEARCH_NODES)
    p.add_argument("--out")

    p = sub.add_parser("adversary", help="run an adversary construction")
    p.add_argument("kind", choices=["cycle-minus-edge", "lll", "robust"])
    p.add_argument("--graph")
    p.add_argument("--strategy")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--q-low", type=int)
    p.add_argument("--q-high", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=10_000)
    p.add_argument("--random-trials", type=int, default=0)

    p = sub.add_parser("minrank", help="brute-force minimum rank over GF(q)")
    p.add_argument("--graph", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--budget-ops", type=int, default=10**8)

    return top


def _require(args, names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise _UsageError("missing required flags: " + " ".join("--" + n for n in missing))


def _cmd_construct(args) -> int:
    what = args.what
    if what == "graph":
        _require(args, ["spec"])
        save_graph(args.out, build_graph(parse_graph_spec(args.spec)))
    elif what == "sum":
        _require(args, ["n"])
        save_table_strategy(args.out, constructions.complete_graph_strategy(args.n))
    elif what == "c4-linear":
        linear.save_linear_strategy(args.out, constructions.c4_linear_strategy())
    elif what == "bipartite":
        _require(args, ["m", "q", "matrix"])
        mat = saturated.load_matrix(args.matrix[0])
        save_table_strategy(
            args.out, constructions.bipartite_from_saturated(args.m, mat.n, args.q, mat)
        )
    elif what == "multipartite":
        _require(args, ["m", "r", "q", "matrix"])
        mat = saturated.load_matrix(args.matrix[0])
        save_table_strategy(
            args.out,
            constructions.multipartite_strategy(args.m, args.r, mat.n, args.q, mat),
        )
    elif what == "dicycle":
        _require(args, ["sizes", "q", "matrix"])
        sizes = [int(s) for s in args.sizes.split(",")]
        mats = [saturated.load_matrix(f) for f in args.matrix]
        save_table_strategy(
            args.out,
            constructions.directed_cycle_strategy(sizes, args.q, mats, seed=args.seed),
        )
    else:  # reduce
        _require(args, ["graph", "strategy", "v1", "q"])
        g = load_graph(args.graph)
        s = load_table_strategy(args.strategy)
        save_table_strategy(args.out, strategies.tree_reduction(g, s, args.v1, args.q))
    return EXIT_TRUE


def _cmd_verify(args) -> int:
    g = load_graph(args.graph)
    s = load_any_strategy(args.strategy)
    if isinstance(s, linear.LinearStrategy):
        s = linear.to_table(g, s)
    q = args.q if args.q is not None else s.q
    verdict = strategies.verify_wins(g, s, q, workers=args.workers)
    if verdict.outcome == "loses":
        print(f"verdict loses witness={','.join(map(str, verdict.witness))}")
        return EXIT_FALSE
    print(f"verdict {verdict.outcome}")
    return EXIT_TRUE if verdict.outcome == "wins" else EXIT_TIMEOUT


def _cmd_linear_verify(args) -> int:
    g = load_graph(args.graph)
    s = load_any_strategy(args.strategy)
    if not isinstance(s, linear.LinearStrategy):
        raise FormatError("linear-verify needs a strategy of kind 'linear'")
    verdict = linear.linear_verify(g, s)
    if verdict.outcome == "loses":
        print(f"verdict loses witness={','.join(map(str, verdict.witness))}")
        return EXIT_FALSE
    print("verdict wins")
    return EXIT_TRUE


def _cmd_solve(args) -> int:
    g = load_graph(args.graph)
    verdict = solver.decide_solvable(
        g, args.q, node_budget=args.budget_nodes, time_budget=args.timeout_secs
    )
    print(f"verdict {verdict.outcome} nodes={verdict.nodes} ms={verdict.ms:.1f}")
    if verdict.outcome == "solvable":
        if args.out:
            save_table_strategy(args.out, verdict.witness)
        return EXIT_TRUE
    return EXIT_FALSE if verdict.outcome == "unsolvable" else EXIT_TIMEOUT


def _cmd_hg(args) -> int:
    g = load_graph(args.graph)
    bound = solver.hat_guessing_number(
        g, args.q_max, node_budget=args.budget_nodes, time_budget=args.timeout_secs
    )
    for q, verdict in sorted(bound.verdicts.items()):
        print(f"q={q} verdict {verdict.outcome} nodes={verdict.nodes} ms={verdict.ms:.1f}")
    print(f"hg value={bound.value} exact={'true' if bound.exact else 'false'}")
    return EXIT_TRUE if bound.exact else EXIT_TIMEOUT


def _cmd_linear_decide(args) -> int:
    g = load_graph(args.graph)
    decision = linear.decide_linear_solvable(
        g, args.q, op_budget=args.budget_ops, time_budget=args.timeout_secs
    )
    print(f"verdict {decision.status} ops={decision.ops}")
    if decision.status == "solvable":
        if args.out:
            linear.save_linear_strategy(args.out, decision.witness)
        return EXIT_TRUE
    return EXIT_FALSE if decision.status == "unsolvable" else EXIT_TIMEOUT


def _cmd_saturated(args) -> int:
    if args.action == "check":
        _require(args, ["matrix"])
        mat = saturated.load_matrix(args.matrix)
        t = args.t if args.t is not None else mat.t
        ok, viol = saturated.is_t_saturated(mat.rows, mat.q, t)
        if ok:
            print("saturated ok")
            return EXIT_TRUE
        print(f"saturated violation {','.join(map(str, viol))}")
        return EXIT_FALSE
    if args.action == "random":
        _require(args, ["n", "l", "q", "t"])
        mat = saturated.random_saturated(args.n, args.l, args.q, args.t, args.seed)
        if mat is None:
            print("saturated not-found")
            return EXIT_TIMEOUT
        print(f"saturated found n={mat.n}")
        if args.out:
            saturated.save_matrix(args.out, mat)
        return EXIT_TRUE
    _require(args, ["n-max", "l", "q", "t"])
    result = saturated.search_saturated(
        args.n_max, args.l, args.q, args.t, node_budget=args.budget_nodes
    )
    print(f"saturated {result.status}" + (f" n={result.matrix.n}" if result.matrix else ""))
    if result.status == "found":
        if args.out:
            saturated.save_matrix(args.out, result.matrix)
        return EXIT_TRUE
    return EXIT_FALSE if result.status == "none" else EXIT_TIMEOUT


def _cmd_adversary(args) -> int:
    if args.kind == "cycle-minus-edge":
        _require(args, ["n"])
        if args.random_trials:
            import random as _random

            from .graphs import cycle_minus_edge
            from .strategies import random_table_strategy

            g = cycle_minus_edge(args.n)
            rng = _random.Random(args.seed)
            for _ in range(args.random_trials):
                s = random_table_strategy(g, 3, rng)
                linear.cycle_minus_edge_adversary(args.n, s)
            print(f"adversary defeated {args.random_trials}/{args.random_trials}")
            return EXIT_TRUE
        _require(args, ["strategy"])
        s = load_table_strategy(args.strategy)
        coloring = linear.cycle_minus_edge_adversary(args.n, s)
        print("coloring " + ",".join(map(str, coloring)))
        return EXIT_TRUE
    if args.kind == "lll":
        _require(args, ["graph", "strategy", "q"])
        g = load_graph(args.graph)
        s = load_table_strategy(args.strategy)
        coloring = solver.lll_bad_coloring(g, s, args.q, seed=args.seed, max_iters=args.max_iters)
        if coloring is None:
            print("coloring not-found")
            return EXIT_TIMEOUT
        print("coloring " + ",".join(map(str, coloring)))
        return EXIT_TRUE
    _require(args, ["graph", "strategy", "k", "q-low", "q-high"])
    g = load_graph(args.graph)
    s = load_table_strategy(args.strategy)
    outcome = solver.robust_bad_coloring(
        g, s, args.k, args.q_low, args.q_high, seed=args.seed
    )
    if outcome.status == "found":
        body = " ".join(f"{v}={c}" for v, c in sorted(outcome.assignment.items()))
        print(f"assignment {body}".rstrip())
        return EXIT_TRUE
    print(f"assignment {outcome.status}")
    return EXIT_FALSE if outcome.status == "none" else EXIT_TIMEOUT


def _cmd_minrank(args) -> int:
    g = load_graph(args.graph)
    result = linear.min_rank_bruteforce(g, args.q, op_budget=args.budget_ops)
    if result.status == "timeout":
        print("minrank timeout")
        return EXIT_TIMEOUT
    print(f"minrank value={result.value}")
    return EXIT_TRUE


_COMMANDS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "linear-verify": _cmd_linear_verify,
    "solve": _cmd_solve,
    "hg": _cmd_hg,
    "linear-decide": _cmd_linear_decide,
    "saturated": _cmd_saturated,
    "adversary": _cmd_adversary,
    "minrank": _cmd_minrank,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"hatguess: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except WorkBudgetError as exc:
        print(f"hatguess: refused: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (ParameterError, FormatError, NotReducibleError) as exc:
        print(f"hatguess: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"hatguess: i/o error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except json.JSONDecodeError as exc:
        print(f"hatguess: bad json: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
