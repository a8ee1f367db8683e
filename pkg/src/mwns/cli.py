"""Command-line front end: solve, approx, reduce, lift, verify, oracle, gen, dot."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .blockcut import block_cut_forest
from .blocker import blocker_run, set_trace_hook
from .core import Instance, is_mwns
from .dot import forest_to_dot, instance_to_dot
from .gen import from_multiway_cut, random_instance
from .instance_io import format_instance, parse_instance
from .reducer import ReductionLog, lift_solution, parse_steps, reduce_terminals
from .solver import oracle_opt_x, oracle_solve, solve

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _load(path: str) -> Instance:
    return parse_instance(Path(path).read_text())


def _print_result(result) -> int:
    if result.is_yes:
        print("YES")
        print(" ".join(str(v) for v in sorted(result.solution)))
        return EXIT_YES
    print("NO")
    return EXIT_NO


def _cmd_solve(args) -> int:
    inst = _load(args.file)
    if args.trace:
        set_trace_hook(lambda line: print(line, file=sys.stderr))
    result = solve(inst)
    code = _print_result(result)
    if args.stats and result.stats is not None:
        for line in result.stats.lines():
            print(line)
    return code


def _cmd_approx(args) -> int:
    inst = _load(args.file)
    if args.trace:
        set_trace_hook(lambda line: print(line, file=sys.stderr))
    run = blocker_run(inst.graph, inst.terminals, args.pivot)
    print(" ".join(str(v) for v in sorted(run.result)))
    if args.ratio:
        opt = oracle_opt_x(inst.graph, inst.terminals, args.pivot)
        ratio = len(run.result) / opt if opt else (0.0 if not run.result else float("inf"))
        print(f"opt_x={opt} ratio={ratio:.3f}")
    return EXIT_YES


def _cmd_reduce(args) -> int:
    inst = _load(args.file)
    if args.with_solution:
        s_hat = frozenset(int(tok) for tok in Path(args.with_solution).read_text().split())
    else:
        s_hat = frozenset(v for v in inst.graph.vertices if v not in inst.terminals)
    reduced, log, feasible = reduce_terminals(inst, s_hat)
    if not feasible:
        # more vertices are unavoidable than the budget allows: already a NO;
        # emit the untouched (trivially equivalent) instance with the certificate
        print(format_instance(inst, comment="answer is NO: essential vertices exceed the budget"), end="")
        for step in log.steps:
            print(f"# {step.serialize()}")
        return EXIT_NO
    print(format_instance(reduced), end="")
    print("# reduction log:")
    for step in log.steps:
        print(f"# {step.serialize()}")
    if args.log:
        text = format_instance(log.original) + log.serialize()
        Path(args.log).write_text(text.rstrip("\n") + "\n")
    return EXIT_YES


def _cmd_lift(args) -> int:
    text = Path(args.logfile).read_text()
    instance_lines = [l for l in text.splitlines()
                      if l.split("#", 1)[0].strip()[:1] in ("p", "e", "t", "k")]
    original = parse_instance("\n".join(instance_lines))
    steps = parse_steps(text.splitlines())
    log = ReductionLog(original, tuple(steps))
    reduced = log.reduced()
    solution = frozenset(args.solution) & set(reduced.graph.vertices)
    lifted = lift_solution(log, solution)
    print(" ".join(str(v) for v in sorted(lifted)))
    return EXIT_YES


def _cmd_verify(args) -> int:
    inst = _load(args.file)
    S = frozenset(args.solution)
    if not S <= set(inst.graph.vertices):
        print("invalid: unknown vertices", sorted(S - set(inst.graph.vertices)))
        return EXIT_NO
    if S & inst.terminals:
        print("invalid: deletes terminals", sorted(S & inst.terminals))
        return EXIT_NO
    if len(S) > inst.k:
        print(f"invalid: {len(S)} deletions exceed budget {inst.k}")
        return EXIT_NO
    if not is_mwns(inst.graph, inst.terminals, S):
        print("invalid: two terminals stay doubly connected")
        return EXIT_NO
    print("valid")
    return EXIT_YES


def _cmd_oracle(args) -> int:
    inst = _load(args.file)
    return _print_result(oracle_solve(inst))


def _cmd_gen(args) -> int:
    if args.kind == "random":
        inst = random_instance(args.n, args.p, args.terminals, args.k, args.seed,
                               independent=args.independent)
        comment = (f"gen random --n {args.n} --p {args.p} --terminals {args.terminals} "
                   f"--k {args.k} --seed {args.seed}")
        print(format_instance(inst, comment=comment), end="")
        return EXIT_YES
    inst = from_multiway_cut(_load(args.file))
    print(format_instance(inst, comment="gen from-multiway-cut"), end="")
    return EXIT_YES


def _cmd_important(args) -> int:
    inst = _load(args.file)
    if args.terminal not in inst.terminals:
        raise ValueError(f"{args.terminal} is not a terminal of the instance")
    budget = args.budget if args.budget is not None else inst.k + 1
    from .separators import SeparatorQuery, enumerate_important_separators
    query = SeparatorQuery.of(inst.graph, {args.terminal},
                              inst.terminals - {args.terminal},
                              undeletable=inst.terminals)
    for sep in enumerate_important_separators(query, budget):
        print(" ".join(str(v) for v in sorted(sep)))
    return EXIT_YES


def _cmd_dot(args) -> int:
    inst = _load(args.file)
    if args.bcf:
        print(forest_to_dot(block_cut_forest(inst.graph)), end="")
    else:
        print(instance_to_dot(inst), end="")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwns",
        description="Find small vertex sets after whose removal every terminal "
                    "pair can be separated by deleting one more vertex.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact answer within the budget")
    p.add_argument("file")
    p.add_argument("--stats", action="store_true", help="print search statistics")
    p.add_argument("--trace", action="store_true", help="stream blocker iteration traces to stderr")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("approx", help="14-approximate near-separator avoiding a pivot")
    p.add_argument("file")
    p.add_argument("--pivot", type=int, required=True)
    p.add_argument("--ratio", action="store_true", help="compare against the enumerated optimum")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(fn=_cmd_approx)

    p = sub.add_parser("reduce", help="shrink the terminal set, keeping the answer")
    p.add_argument("file")
    p.add_argument("--with-solution", metavar="S_FILE",
                   help="file of vertex ids forming a known near-separator")
    p.add_argument("--log", metavar="PATH", help="write a replayable reduction log")
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("lift", help="turn a reduced-instance solution into an original one")
    p.add_argument("logfile")
    p.add_argument("--solution", type=int, nargs="*", default=[], required=True)
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("verify", help="check a proposed solution")
    p.add_argument("file")
    p.add_argument("--solution", type=int, nargs="*", default=[], required=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("oracle", help="brute-force answer (small instances)")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("gen", help="generate instances")
    gensub = p.add_subparsers(dest="kind", required=True)
    pr = gensub.add_parser("random")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--p", type=float, required=True)
    pr.add_argument("--terminals", type=int, required=True)
    pr.add_argument("--k", type=int, required=True)
    pr.add_argument("--seed", type=int, required=True)
    pr.add_argument("--independent", action=argparse.BooleanOptionalAction, default=True)
    pr.set_defaults(fn=_cmd_gen)
    pm = gensub.add_parser("from-multiway-cut")
    pm.add_argument("file")
    pm.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("important",
                       help="debug dump: important separators pushing one terminal away")
    p.add_argument("file")
    p.add_argument("--terminal", type=int, required=True)
    p.add_argument("--budget", type=int, default=None,
                   help="size limit (default: instance budget + 1)")
    p.set_defaults(fn=_cmd_important)

    p = sub.add_parser("dot", help="DOT export of the graph or its block-cut forest")
    p.add_argument("file")
    p.add_argument("--bcf", action="store_true")
    p.set_defaults(fn=_cmd_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary maps everything to exit 2
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        set_trace_hook(None)


if __name__ == "__main__":
    sys.exit(main())
