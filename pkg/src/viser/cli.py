"""Command-line interface: solve, verify, bench, oracle.

Exit codes: 0 success, 2 parse/validation error, 3 information error
(exploiter requested without exploiter payoffs), 4 solver fault,
5 failed certificate or oracle disagreement, 6 instance exceeds oracle
size caps.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench, files, oracle
from .core import (EXPLOITER, VICTIM, BimatrixGame, InformationError,
                   MarkovGame, evaluate_policies, expected_payoff)
from .bimatrix import (TOL_VERIFY, EmptyMaximinSetError, in_exploiter_set,
                       in_victim_set, solve_exploiter, solve_victim)
from .lp import SolverStallError
from .markov import (exploiter_stage_membership, solve_exploiter_markov,
                     solve_victim_markov, stage_membership)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFORMATION = 3
EXIT_SOLVER = 4
EXIT_CERTIFICATE = 5
EXIT_ORACLE_SIZE = 6


def _solve_one(game, player, epsilon):
    if isinstance(game, BimatrixGame):
        if player == VICTIM:
            return files.victim_solution_to_dict(solve_victim(game.A))
        if game.B is None:
            raise InformationError("exploiter payoffs absent from game file")
        return files.exploiter_solution_to_dict(
            solve_exploiter(game.A, game.B, epsilon), epsilon)
    if player == VICTIM:
        res = solve_victim_markov(game.without_exploiter_payoffs())
        return files.markov_result_to_dict(res, game.H, game.S)
    if game.R_e is None:
        raise InformationError("exploiter rewards absent from game file")
    res = solve_exploiter_markov(game, epsilon)
    return files.markov_result_to_dict(res, game.H, game.S, epsilon)


def cmd_solve(args) -> int:
    try:
        game = files.load_game(args.game)
    except (files.GameFileError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    players = [VICTIM, EXPLOITER] if args.player == "both" else [args.player]
    try:
        solutions = [_solve_one(game, p, args.epsilon) for p in players]
    except InformationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFORMATION
    except (SolverStallError, EmptyMaximinSetError, RuntimeError) as exc:
        print(f"solver fault: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    files.save_solutions(solutions, args.out)
    for sol in solutions:
        print(f"{sol['player']}: guaranteed_payoff = {sol['guaranteed_payoff']:.9g}")
    return EXIT_OK


def _verify_one(game, sol, tol):
    """Yield (check name, passed) pairs."""
    player = sol["player"]
    epsilon = float(sol.get("metadata", {}).get("epsilon", 0.0))
    if isinstance(game, BimatrixGame):
        x = files.strategy_from_solution(sol)
        claimed = float(sol["guaranteed_payoff"])
        z_star = solve_victim(game.A).p_v
        if player == VICTIM:
            yield "victim value matches", abs(claimed - z_star) <= tol
            yield "victim membership", in_victim_set(game.A, z_star, x, tol)
        else:
            if game.B is None:
                raise InformationError("exploiter payoffs absent from game file")
            ref = solve_exploiter(game.A, game.B, epsilon)
            yield "exploiter value matches", abs(claimed - ref.p_e) <= tol
            yield "exploiter membership", in_exploiter_set(
                game.A, game.B, z_star - epsilon, claimed, x, tol)
        return
    policy = files.policy_from_solution(sol, player)
    claimed = float(sol["guaranteed_payoff"])
    if player == VICTIM:
        res = solve_victim_markov(game.without_exploiter_payoffs())
        yield "victim value matches", abs(claimed - res.guaranteed_payoff) <= tol * game.H
        for h in range(1, game.H + 1):
            for s in range(game.S):
                yield (f"victim stage membership (h={h}, s={s})",
                       stage_membership(game, res, h, s, policy.strategy(h, s),
                                        tol * (game.H - h + 1)))
    else:
        if game.R_e is None:
            raise InformationError("exploiter rewards absent from game file")
        res = solve_exploiter_markov(game, epsilon)
        yield "exploiter value matches", abs(claimed - res.guaranteed_payoff) <= tol * game.H
        for h in range(1, game.H + 1):
            for s in range(game.S):
                yield (f"exploiter stage membership (h={h}, s={s})",
                       exploiter_stage_membership(
                           game, res, h, s, policy.strategy(h, s),
                           tol * (game.H - h + 1), epsilon))


def cmd_verify(args) -> int:
    try:
        game = files.load_game(args.game)
        solutions = files.load_solutions(args.solution)
    except (files.GameFileError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    all_ok = True
    try:
        for sol in solutions:
            for name, ok in _verify_one(game, sol, args.tol):
                all_ok &= ok
                print(f"[{'PASS' if ok else 'FAIL'}] {sol['player']}: {name}")
    except InformationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFORMATION
    except (files.GameFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SolverStallError, EmptyMaximinSetError, RuntimeError) as exc:
        print(f"solver fault: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK if all_ok else EXIT_CERTIFICATE


def cmd_bench(args) -> int:
    if args.kind == "block":
        if args.r_max < 0:
            print("error: --r-max must be >= 0", file=sys.stderr)
            return EXIT_PARSE
        rows = bench.run_block_experiment(range(1, args.r_max + 1),
                                          S=args.states, H=args.horizon,
                                          csv_path=args.out)
    else:
        try:
            sizes = [int(x) for x in args.sizes.split(",") if x]
            seeds = [int(x) for x in args.seeds.split(",") if x]
        except ValueError:
            print("error: --sizes/--seeds must be comma-separated integers",
                  file=sys.stderr)
            return EXIT_PARSE
        if any(n < 1 for n in sizes):
            print("error: sizes must be >= 1", file=sys.stderr)
            return EXIT_PARSE
        rows = bench.run_random_experiment(sizes, seeds, S=args.states,
                                           H=args.horizon, csv_path=args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _oracle_bimatrix(game: BimatrixGame) -> int:
    n, m = game.n, game.m
    grid_ok = n <= oracle.GRID_MAX_DIM
    vertex_ok = n + m <= oracle.VERTEX_MAX_SIZE
    if not (grid_ok or vertex_ok):
        print(f"game too large for oracles (n={n}, m={m})", file=sys.stderr)
        return EXIT_ORACLE_SIZE
    status = EXIT_OK
    victim = solve_victim(game.A)
    if grid_ok:
        resolution = 1e-3
        approx, _ = oracle.grid_maximin(game.A, resolution)
        col_range = float(np.max(game.A.max(axis=0) - game.A.min(axis=0)))
        bound = 2 * col_range * resolution
        delta = abs(victim.p_v - approx)
        ok = delta <= bound
        print(f"victim: lp {victim.p_v:.9g}  grid {approx:.9g}  "
              f"delta {delta:.3g} (bound {bound:.3g}) {'ok' if ok else 'FAIL'}")
        status = status if ok else EXIT_CERTIFICATE
    if vertex_ok and game.B is not None:
        vertices = oracle.enumerate_x_star_vertices(game.A, victim.p_v)
        value, _ = oracle.oracle_exploiter_value(game.B, vertices)
        exploiter = solve_exploiter(game.A, game.B)
        delta = abs(exploiter.p_e - value)
        ok = delta <= 1e-6
        print(f"exploiter: lp {exploiter.p_e:.9g}  vertex-oracle {value:.9g}  "
              f"delta {delta:.3g} (bound 1e-06) {'ok' if ok else 'FAIL'}")
        status = status if ok else EXIT_CERTIFICATE
    return status


def _oracle_markov(game: MarkovGame) -> int:
    size = (game.S ** game.H) * ((game.n * game.m) ** game.H)
    if size > oracle.TRAJECTORY_CAP:
        print(f"game too large for trajectory oracle ({size} paths)",
              file=sys.stderr)
        return EXIT_ORACLE_SIZE
    res_v = solve_victim_markov(game.without_exploiter_payoffs())
    if game.R_e is not None:
        nu = solve_exploiter_markov(game).policy
    else:
        from .core import MarkovPolicy
        nu = MarkovPolicy.uniform(EXPLOITER, game.H, game.S, game.m)
    fast = expected_payoff(game, evaluate_policies(game, res_v.policy, nu, VICTIM))
    slow = oracle.exhaustive_policy_eval(game, res_v.policy, nu, VICTIM)
    delta = abs(fast - slow)
    ok = delta <= 1e-9 * max(1.0, abs(slow))
    print(f"policy evaluation: recursive {fast:.12g}  trajectory {slow:.12g}  "
          f"delta {delta:.3g} {'ok' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CERTIFICATE


def cmd_oracle(args) -> int:
    try:
        game = files.load_game(args.game)
    except (files.GameFileError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if isinstance(game, BimatrixGame):
            return _oracle_bimatrix(game)
        return _oracle_markov(game)
    except oracle.OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_SIZE
    except (SolverStallError, EmptyMaximinSetError, RuntimeError) as exc:
        print(f"solver fault: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="viser",
        description="Security-strategy and informed-best-response solver "
                    "for bimatrix and finite-horizon Markov games.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a game for one or both players")
    p.add_argument("game", help="game JSON file")
    p.add_argument("--player", choices=[VICTIM, EXPLOITER, "both"],
                   default="both")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="victim maximin slack accepted by the exploiter")
    p.add_argument("--out", required=True, help="solution JSON output path")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file's certificates")
    p.add_argument("game")
    p.add_argument("solution")
    p.add_argument("--tol", type=float, default=TOL_VERIFY)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="run the benchmark sweeps")
    p.add_argument("kind", choices=["block", "random"])
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--r-max", type=int, default=10,
                   help="block sweep runs r = 1..r_max")
    p.add_argument("--sizes", default="2,4,8",
                   help="comma-separated action counts for random games")
    p.add_argument("--seeds", default="0,1,2,3,4",
                   help="comma-separated seeds per size")
    p.add_argument("--states", type=int, default=10)
    p.add_argument("--horizon", type=int, default=10)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("oracle", help="cross-check LP results against "
                                      "brute-force oracles (small games only)")
    p.add_argument("game")
    p.set_defaults(fn=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "epsilon", 0.0) < 0:
        print("error: epsilon must be >= 0", file=sys.stderr)
        return EXIT_PARSE
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
