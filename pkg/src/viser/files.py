"""JSON schemas for games and solutions.

Game files: ``{"type": "bimatrix", "A": [[...]], "B": [[...]]}`` (B optional)
or ``{"type": "markov", "S": int, "n": int, "m": int, "H": int, "mu": [...],
"R_v": [h][s][n][m], "R_e": optional, "P": [h][s][n][m][S]}``.  A missing
B / R_e is legal and means victim-information mode.

Solution files carry: player, strategy (bimatrix) or policy (markov, nested
[h][s][action]), guaranteed_payoff, duals (w, alpha) for exploiter runs, and
solver metadata.
"""

from __future__ import annotations

import json

import numpy as np

from .core import (EXPLOITER, VICTIM, BimatrixGame, MarkovGame, MarkovPolicy,
                   MixedStrategy)
from .bimatrix import TOL_VERIFY, ExploiterSolution, VictimSolution
from .markov import MpviserResult


class GameFileError(ValueError):
    """Malformed or inconsistent game/solution file."""


def load_game(path) -> BimatrixGame | MarkovGame:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GameFileError(f"invalid JSON: {exc}") from exc
    return game_from_dict(data)


def game_from_dict(data) -> BimatrixGame | MarkovGame:
    if not isinstance(data, dict) or "type" not in data:
        raise GameFileError("game file must be an object with a 'type' field")
    kind = data["type"]
    try:
        if kind == "bimatrix":
            return BimatrixGame(np.array(data["A"], dtype=float),
                                None if data.get("B") is None
                                else np.array(data["B"], dtype=float))
        if kind == "markov":
            G = MarkovGame(np.array(data["R_v"], dtype=float),
                           np.array(data["P"], dtype=float),
                           np.array(data["mu"], dtype=float),
                           None if data.get("R_e") is None
                           else np.array(data["R_e"], dtype=float))
            declared = (data.get("H", G.H), data.get("S", G.S),
                        data.get("n", G.n), data.get("m", G.m))
            if declared != (G.H, G.S, G.n, G.m):
                raise GameFileError(
                    f"declared sizes {declared} do not match tensors "
                    f"{(G.H, G.S, G.n, G.m)}")
            return G
    except GameFileError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise GameFileError(f"bad game file: {exc}") from exc
    raise GameFileError(f"unknown game type {kind!r}")


def game_to_dict(game: BimatrixGame | MarkovGame) -> dict:
    if isinstance(game, BimatrixGame):
        out = {"type": "bimatrix", "A": game.A.tolist()}
        if game.B is not None:
            out["B"] = game.B.tolist()
        return out
    out = {"type": "markov", "S": game.S, "n": game.n, "m": game.m,
           "H": game.H, "mu": game.mu.tolist(), "R_v": game.R_v.tolist(),
           "P": game.P.tolist()}
    if game.R_e is not None:
        out["R_e"] = game.R_e.tolist()
    return out


def save_game(game, path) -> None:
    with open(path, "w") as fh:
        json.dump(game_to_dict(game), fh)
        fh.write("\n")


def _metadata(epsilon: float = 0.0) -> dict:
    return {"tol_verify": TOL_VERIFY, "epsilon": epsilon}


def victim_solution_to_dict(sol: VictimSolution) -> dict:
    return {"player": VICTIM, "strategy": sol.x_star.probs.tolist(),
            "guaranteed_payoff": sol.p_v, "metadata": _metadata()}


def exploiter_solution_to_dict(sol: ExploiterSolution, epsilon: float = 0.0) -> dict:
    return {"player": EXPLOITER, "strategy": sol.y_star.probs.tolist(),
            "guaranteed_payoff": sol.p_e,
            "duals": {"w": sol.w_star.tolist(), "alpha": sol.alpha_star},
            "metadata": _metadata(epsilon)}


def markov_result_to_dict(result: MpviserResult, H: int, S: int,
                          epsilon: float = 0.0) -> dict:
    policy = [[result.policy.strategy(h, s).probs.tolist() for s in range(S)]
              for h in range(1, H + 1)]
    out = {"player": result.policy.owner, "policy": policy,
           "guaranteed_payoff": result.guaranteed_payoff,
           "metadata": _metadata(epsilon)}
    if result.duals is not None:
        out["duals"] = {
            "w": [[result.duals[(h, s)][0].tolist() for s in range(S)]
                  for h in range(1, H + 1)],
            "alpha": [[result.duals[(h, s)][1] for s in range(S)]
                      for h in range(1, H + 1)]}
    return out


def save_solutions(solutions: list[dict], path) -> None:
    payload = solutions[0] if len(solutions) == 1 else solutions
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_solutions(path) -> list[dict]:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GameFileError(f"invalid JSON: {exc}") from exc
    solutions = data if isinstance(data, list) else [data]
    for sol in solutions:
        if not isinstance(sol, dict) or "player" not in sol:
            raise GameFileError("solution entries must carry a 'player' field")
        if sol["player"] not in (VICTIM, EXPLOITER):
            raise GameFileError(f"unknown player {sol['player']!r}")
        if "strategy" not in sol and "policy" not in sol:
            raise GameFileError("solution must carry a strategy or a policy")
    return solutions


def policy_from_solution(sol: dict, owner: str) -> MarkovPolicy:
    table = np.array(sol["policy"], dtype=float)
    if table.ndim != 3:
        raise GameFileError("policy must be nested [h][s][action]")
    return MarkovPolicy.from_array(owner, table)


def strategy_from_solution(sol: dict) -> MixedStrategy:
    return MixedStrategy(np.array(sol["strategy"], dtype=float))
