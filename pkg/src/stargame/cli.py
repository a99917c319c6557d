"""Command-line entry point.

Subcommands: solve, verify, minsize, gen, bench.  Output is line-oriented
``key value`` text; wall-clock numbers sit on their own line so that
everything else is reproducible byte for byte.  Exit codes are 0/1/2
throughout: yes / no / error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import gamegen, report
from .arena import Player, SafetyGame, emit_game, load_game
from .errors import StargameError
from .minsize import (
    ABOVE_BOUND,
    FOUND,
    NO_WINNING,
    decide_min_size,
    load_dimacs,
    min_star_strategy_size,
    reduce_sat,
)
from .order import (
    PartialOrder,
    check_tba_simulation,
    emit_order,
    make_order,
)
from .solvers import solve_attractor, solve_otfur, solve_otfur_antichain
from .strategy import (
    StarStrategy,
    is_winning_star,
    check_order_winning,
    load_strategy,
    save_strategy,
    strategy_from_win,
)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _load_explicit(path: str) -> SafetyGame:
    game = load_game(path)
    problems = game.validate()
    if problems:
        raise StargameError(f"invalid game {path}: {problems[0]}")
    return game


def _family_game(args) -> tuple[SafetyGame, PartialOrder | None]:
    if args.family == "nim":
        if args.n is None:
            raise StargameError("--family nim needs --n")
        game, order = gamegen.gen_nim_implicit(args.n, args.extra_edges)
        return game, order
    spec = gamegen.VectorGameSpec(args.dims, args.bound)
    game, order = gamegen.gen_vector_implicit(spec)
    return game, order


def _surface_order_trust(game: SafetyGame, order: PartialOrder,
                         trusted: bool) -> None:
    """The antichain solver is only sound for tba-simulations; say so
    loudly when the supplied order is not one, but do not refuse: the
    unsound runs are part of what the tool demonstrates."""
    if trusted:
        return
    if game.explicit:
        problems = check_tba_simulation(order, game)
        if problems:
            _warn(f"order is not a tba-simulation ({len(problems)} "
                  f"violations), first: {problems[0]}")
        return
    _sample_order_on_explored(game, order)


def _sample_order_on_explored(game: SafetyGame, order: PartialOrder,
                              limit: int = 60) -> None:
    """Spot-check the alternating-simulation conditions over explored
    states whose successors are already materialized."""
    indices = [i for i in range(min(game.interned_count(), limit))
               if game._succ[i] is not None]
    for i in indices:
        for j in indices:
            if i == j or not order.ge(i, j):
                continue
            if order.ge(j, i):
                _warn(f"order sample: antisymmetry breach at "
                      f"{game.name_of(i)} / {game.name_of(j)}")
                return
            if game.bad_idx(i):
                continue
            si, sj = game.succ_idx(i), game.succ_idx(j)
            if game.owner_idx(i) is Player.A:
                bad_succ = [ii for ii in si
                            if not any(order.ge(ii, jj) for jj in sj)]
            else:
                bad_succ = [jj for jj in sj
                            if not any(order.ge(ii, jj) for ii in si)]
            if bad_succ:
                _warn(f"order sample: alternating condition fails at pair "
                      f"({game.name_of(i)}, {game.name_of(j)})")
                return


def cmd_solve(args) -> int:
    started = time.perf_counter()
    if (args.game is None) == (args.family is None):
        return _fail("give exactly one of GAME or --family")
    order = None
    if args.game is not None:
        game = _load_explicit(args.game)
        source = args.game
        if args.order:
            order = make_order(args.order, game)
    else:
        game, order = _family_game(args)
        source = f"family:{args.family}"
        if args.order:
            order = make_order(args.order, game)

    strategy = None
    extra_stats: dict[str, int] = {}
    anti_maybe = anti_losing = None
    if args.algo == "attractor":
        result = solve_attractor(game)
        a_wins = game.initial in result.win
        stats = {"vertices_explored": len(result.win) + len(result.attractor),
                 "rounds": result.rounds}
        if a_wins:
            strategy = StarStrategy(strategy_from_win(game, result.win))
    else:
        if args.algo == "otfur-ac":
            if order is None:
                return _fail("--algo otfur-ac needs --order")
            _surface_order_trust(game, order, args.trust_order)
            solved = solve_otfur_antichain(
                game, order, waiting=args.waiting,
                check_invariants=args.check_invariants)
            if not game.explicit:
                _surface_order_trust(game, order, args.trust_order)
            anti_maybe, anti_losing = solved.anti_maybe, solved.anti_losing
        else:
            solved = solve_otfur(game, waiting=args.waiting)
        a_wins = solved.a_wins
        strategy = solved.strategy
        stats = solved.stats.as_dict()

    print(f"winner {'A' if a_wins else 'B'}")
    for key, value in stats.items():
        print(f"stat {key} {value}")
    if anti_maybe is not None:
        print(f"anti-maybe {' '.join(anti_maybe)}")
        print(f"anti-losing {' '.join(anti_losing)}")
    if args.strategy_out:
        if a_wins and strategy is not None:
            save_strategy(strategy, args.strategy_out)
            print(f"strategy-out {args.strategy_out}")
        else:
            _warn("no winning strategy to write")
    wall_ms = (time.perf_counter() - started) * 1000.0
    if args.report:
        payload = {
            "command": "solve",
            "game": {
                "name": game.name,
                "source": source,
                "explicit": game.explicit,
                "vertices": len(game.vertices()) if game.explicit else None,
            },
            "algo": args.algo,
            "order": args.order,
            "waiting": args.waiting,
            "winner": "A" if a_wins else "B",
            "stats": stats,
            "strategy": (None if strategy is None or not a_wins else
                         {"support_size": strategy.size,
                          "entries": dict(sorted(strategy.support.items()))}),
            "anti_maybe": anti_maybe,
            "anti_losing": anti_losing,
            "wall_ms": wall_ms,
        }
        report.write_run_report(args.report, payload)
        print(f"report {args.report}")
    print(f"time_ms {wall_ms:.3f}")
    return 0 if a_wins else 1


def cmd_verify(args) -> int:
    game = _load_explicit(args.game)
    if args.what == "tba-sim":
        order = make_order(args.order, game)
        problems = check_tba_simulation(order, game)
        if problems:
            print(f"violation {problems[0]}")
            print(f"violations {len(problems)}")
            return 1
        print("ok tba-sim")
        return 0
    strategy = load_strategy(args.strategy)
    if args.mode == "winning":
        good = is_winning_star(game, strategy)
        print(f"strategy {'winning' if good else 'not-winning'}")
        return 0 if good else 1
    if not args.order:
        return _fail("--mode order-winning needs --order")
    order = make_order(args.order, game)
    outcome = check_order_winning(game, strategy, order)
    if outcome.winning:
        print("strategy order-winning")
        return 0
    if outcome.no_completion_at:
        print("strategy no-order-completion "
              + " ".join(outcome.no_completion_at))
    else:
        print(f"strategy not-order-winning bad={outcome.bad_reached}")
    return 1


def cmd_minsize(args) -> int:
    game = _load_explicit(args.game)
    if args.k is None:
        outcome = min_star_strategy_size(game, budget=args.budget)
    else:
        outcome = decide_min_size(game, args.k, budget=args.budget)
    if outcome.status == FOUND:
        print(f"size {outcome.size}")
        if args.witness_out and outcome.witness is not None:
            save_strategy(outcome.witness, args.witness_out)
            print(f"witness-out {args.witness_out}")
        return 0
    if outcome.status == NO_WINNING:
        print("no-winning-strategy")
        return 1
    if outcome.status == ABOVE_BOUND:
        print(f"above-k {args.k}")
        return 1
    print("budget-exhausted")
    return 2


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
        print(f"wrote {path}")


def cmd_gen(args) -> int:
    order = None
    if args.kind == "nim":
        game, order, _ = gamegen.gen_nim(args.n, args.extra_edges)
    elif args.kind == "vector":
        spec = gamegen.VectorGameSpec(args.dims, args.bound)
        game, order, _ = gamegen.gen_vector(spec)
    elif args.kind == "pitfall":
        if args.which == "nonclosed":
            game, order = gamegen.gen_nonclosed_sim_game()
        else:
            game, order = gamegen.gen_nontba_sim_game()
    elif args.kind == "random":
        game = gamegen.gen_random(args.vertices, args.density, args.seed,
                                  allow_deadends=args.allow_deadends)
    else:  # sat
        phi = load_dimacs(args.cnf)
        reduction = reduce_sat(phi)
        game = reduction.game
        print(f"vars {phi.num_vars}")
        print(f"clauses {len(phi.clauses)}")
        print(f"k {reduction.k}")
    _write_text(args.out, emit_game(game))
    if args.order_out:
        if order is None:
            return _fail(f"gen {args.kind} has no companion order")
        Path(args.order_out).write_text(emit_order(order, game),
                                        encoding="utf-8")
        print(f"wrote {args.order_out}")
    return 0


def cmd_bench(args) -> int:
    ns = [int(tok) for tok in args.n.split(",") if tok]
    algos = [tok for tok in args.algos.split(",") if tok]
    rows = []
    for n in ns:
        instance = f"nim-{n}"
        for algo in algos:
            game, order = gamegen.gen_nim_implicit(n)
            started = time.perf_counter()
            if algo == "otfur":
                solved = solve_otfur(game, waiting=args.waiting)
            elif algo == "otfur-ac":
                if args.order != "nim-mod3":
                    order = make_order(args.order, game)
                solved = solve_otfur_antichain(game, order,
                                               waiting=args.waiting)
            else:
                return _fail(f"unknown bench algo {algo!r}")
            wall_ms = (time.perf_counter() - started) * 1000.0
            row = {"instance": instance, "algo": algo,
                   "winner": solved.winner, "wall_ms": f"{wall_ms:.3f}"}
            row.update(solved.stats.as_dict())
            rows.append(row)
    sys.stdout.write(report.bench_table(rows))
    if {"otfur", "otfur-ac"} <= set(algos):
        for n in ns:
            instance = f"nim-{n}"
            plain = next(r for r in rows if r["instance"] == instance
                         and r["algo"] == "otfur")
            pruned = next(r for r in rows if r["instance"] == instance
                          and r["algo"] == "otfur-ac")
            ratio = pruned["vertices_explored"] / plain["vertices_explored"]
            print(f"ratio {instance} vertices_explored {ratio:.3f}")
    if args.out:
        table_path, figure_path = report.write_bench_outputs(args.out, rows)
        print(f"wrote {table_path}")
        print(f"wrote {figure_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stargame",
        description="Solve, verify and generate finite turn-based safety games.")
    sub = parser.add_subparsers(dest="command", required=True)

    solve_p = sub.add_parser("solve", help="compute the winner of a game")
    solve_p.add_argument("game", nargs="?", help="game file in the text format")
    solve_p.add_argument("--family", choices=["nim", "vector"],
                         help="solve a generated family instance on the fly")
    solve_p.add_argument("--n", type=int, help="ball count for --family nim")
    solve_p.add_argument("--dims", type=int, default=2)
    solve_p.add_argument("--bound", type=int, default=3)
    solve_p.add_argument("--extra-edges", action="store_true", default=None,
                         help="include the 8-ball give-back edges")
    solve_p.add_argument("--algo", default="otfur",
                         choices=["attractor", "otfur", "otfur-ac"])
    solve_p.add_argument("--order",
                         help="nim-mod3 | vector | equality | file:<path>")
    solve_p.add_argument("--waiting", choices=["fifo", "lifo"], default="fifo")
    solve_p.add_argument("--check-invariants", action="store_true")
    solve_p.add_argument("--trust-order", action="store_true",
                         help="skip the tba-simulation sanity checks")
    solve_p.add_argument("--strategy-out", help="write the winning strategy")
    solve_p.add_argument("--report", help="write a JSON run report")
    solve_p.set_defaults(func=cmd_solve)

    verify_p = sub.add_parser("verify", help="check orders and strategies")
    verify_sub = verify_p.add_subparsers(dest="what", required=True)
    tba_p = verify_sub.add_parser("tba-sim")
    tba_p.add_argument("game")
    tba_p.add_argument("--order", required=True)
    strat_p = verify_sub.add_parser("strategy")
    strat_p.add_argument("game")
    strat_p.add_argument("strategy")
    strat_p.add_argument("--mode", required=True,
                         choices=["winning", "order-winning"])
    strat_p.add_argument("--order")
    verify_p.set_defaults(func=cmd_verify)

    minsize_p = sub.add_parser(
        "minsize", help="exact minimal winning star-strategy size")
    minsize_p.add_argument("game")
    minsize_p.add_argument("--k", type=int,
                           help="decide 'minimum <= k' instead of searching")
    minsize_p.add_argument("--budget", type=int, default=500_000)
    minsize_p.add_argument("--witness-out")
    minsize_p.set_defaults(func=cmd_minsize)

    gen_p = sub.add_parser("gen", help="generate games and orders")
    gen_sub = gen_p.add_subparsers(dest="kind", required=True)
    nim_p = gen_sub.add_parser("nim")
    nim_p.add_argument("--n", type=int, required=True)
    nim_p.add_argument("--extra-edges", action="store_true", default=None)
    vec_p = gen_sub.add_parser("vector")
    vec_p.add_argument("--dims", type=int, required=True)
    vec_p.add_argument("--bound", type=int, required=True)
    pit_p = gen_sub.add_parser("pitfall")
    pit_p.add_argument("--which", required=True,
                       choices=["nonclosed", "nontba"])
    rand_p = gen_sub.add_parser("random")
    rand_p.add_argument("--vertices", type=int, required=True)
    rand_p.add_argument("--density", type=float, required=True)
    rand_p.add_argument("--seed", type=int, required=True)
    rand_p.add_argument("--allow-deadends", action="store_true")
    sat_p = gen_sub.add_parser("sat")
    sat_p.add_argument("--cnf", required=True, help="DIMACS CNF file")
    for sp in (nim_p, vec_p, pit_p, rand_p, sat_p):
        sp.add_argument("-o", "--out", help="output game file (default stdout)")
        sp.add_argument("--order-out", help="write the companion order file")
    gen_p.set_defaults(func=cmd_gen)

    bench_p = sub.add_parser("bench", help="compare solvers over a family")
    bench_p.add_argument("family", choices=["nim"])
    bench_p.add_argument("--n", required=True,
                         help="comma-separated ball counts, e.g. 50,100,200")
    bench_p.add_argument("--algos", default="otfur,otfur-ac")
    bench_p.add_argument("--order", default="nim-mod3")
    bench_p.add_argument("--waiting", choices=["fifo", "lifo"],
                         default="lifo",
                         help="depth-first order exposes the pruning")
    bench_p.add_argument("--out", help="directory for bench.tsv and bench.png")
    bench_p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StargameError as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
