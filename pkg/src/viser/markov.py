"""Markov-perfect solving by backward induction over stage games.

Each (step, state) pair induces a bimatrix stage game whose entries add the
immediate reward and the expected continuation value.  The victim solves its
maximin LP per stage; the exploiter additionally solves its dual best-response
LP per stage, reusing the victim stage values it can compute on its own.

States at a fixed step are independent once the next step's values are
frozen, so the per-step state loop may run on a thread pool (see
``parallel.worker_count``); the step loop is strictly sequential.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (EXPLOITER, VICTIM, InformationError, MarkovGame,
                   MarkovPolicy, MixedStrategy, ValueTable)
from .bimatrix import (TOL_VERIFY, solve_exploiter_given_value, solve_victim,
                       in_exploiter_set, in_victim_set)
from .parallel import worker_count


@dataclass(frozen=True)
class StageGame:
    h: int
    s: int
    q_v: np.ndarray
    q_e: np.ndarray | None = None


@dataclass(frozen=True)
class MpviserResult:
    policy: MarkovPolicy
    values: ValueTable
    guaranteed_payoff: float
    duals: dict[tuple[int, int], tuple[np.ndarray, float]] | None = None
    victim_values: ValueTable | None = None  # exploiter runs carry these too


def stage_matrix(G: MarkovGame, h: int, s: int, player: str,
                 v_next: ValueTable | None) -> np.ndarray:
    """Stage payoff matrix: reward plus expected continuation value."""
    R = G.rewards(player)
    if h == G.H:
        return R[h - 1, s].copy()
    if v_next is None:
        raise ValueError("continuation values required for h < H")
    return R[h - 1, s] + G.P[h - 1, s] @ v_next.step_vector(h + 1, G.S)


def _map_states(fn, S: int):
    workers = worker_count()
    if workers > 1 and S > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(S)))
    return [fn(s) for s in range(S)]


def solve_victim_markov(G: MarkovGame) -> MpviserResult:
    """Backward induction over the victim's stage maximin LPs.

    Never reads exploiter rewards, so it runs on victim-information games.
    """
    decisions: dict[tuple[int, int], MixedStrategy] = {}
    values: dict[tuple[int, int], float] = {}
    v_next: ValueTable | None = None
    for h in range(G.H, 0, -1):
        def solve_state(s, h=h, v_next=v_next):
            q = stage_matrix(G, h, s, VICTIM, v_next)
            try:
                return solve_victim(q)
            except Exception as exc:
                raise RuntimeError(f"victim stage LP failed at (h={h}, s={s})") from exc
        stage_solutions = _map_states(solve_state, G.S)
        for s, sol in enumerate(stage_solutions):
            decisions[(h, s)] = sol.x_star
            values[(h, s)] = sol.p_v
        v_next = ValueTable(VICTIM, dict(values))
    table = ValueTable(VICTIM, values)
    payoff = float(G.mu @ table.step_vector(1, G.S))
    return MpviserResult(MarkovPolicy(VICTIM, decisions), table, payoff)


def solve_exploiter_markov(G: MarkovGame, epsilon: float = 0.0) -> MpviserResult:
    """Single backward loop computing victim stage values and the exploiter's
    per-stage worst-case best responses with their dual certificates."""
    if G.R_e is None:
        raise InformationError("exploiter rewards required")
    decisions: dict[tuple[int, int], MixedStrategy] = {}
    values_e: dict[tuple[int, int], float] = {}
    values_v: dict[tuple[int, int], float] = {}
    duals: dict[tuple[int, int], tuple[np.ndarray, float]] = {}
    v_next_v: ValueTable | None = None
    v_next_e: ValueTable | None = None
    for h in range(G.H, 0, -1):
        def solve_state(s, h=h, v_next_v=v_next_v, v_next_e=v_next_e):
            q_v = stage_matrix(G, h, s, VICTIM, v_next_v)
            q_e = stage_matrix(G, h, s, EXPLOITER, v_next_e)
            try:
                victim = solve_victim(q_v)
                exploiter = solve_exploiter_given_value(q_v, q_e, victim.p_v, epsilon)
            except Exception as exc:
                raise RuntimeError(f"stage LP failed at (h={h}, s={s})") from exc
            return victim, exploiter
        stage_solutions = _map_states(solve_state, G.S)
        for s, (victim, exploiter) in enumerate(stage_solutions):
            values_v[(h, s)] = victim.p_v
            values_e[(h, s)] = exploiter.p_e
            decisions[(h, s)] = exploiter.y_star
            duals[(h, s)] = (exploiter.w_star, exploiter.alpha_star)
        v_next_v = ValueTable(VICTIM, dict(values_v))
        v_next_e = ValueTable(EXPLOITER, dict(values_e))
    table = ValueTable(EXPLOITER, values_e)
    payoff = float(G.mu @ table.step_vector(1, G.S))
    return MpviserResult(MarkovPolicy(EXPLOITER, decisions), table, payoff,
                         duals=duals, victim_values=ValueTable(VICTIM, values_v))


def stage_membership(G: MarkovGame, result_v: MpviserResult, h: int, s: int,
                     strategy: MixedStrategy, tol: float = TOL_VERIFY) -> bool:
    """Is the strategy stage-optimal for the victim at (h, s)?"""
    q = stage_matrix(G, h, s, VICTIM, result_v.values)
    return in_victim_set(q, result_v.values.value(h, s), strategy, tol)


def exploiter_stage_membership(G: MarkovGame, result_e: MpviserResult, h: int,
                               s: int, strategy: MixedStrategy,
                               tol: float = TOL_VERIFY,
                               epsilon: float = 0.0) -> bool:
    """Is the strategy a stage worst-case best response for the exploiter?"""
    if result_e.victim_values is None:
        raise ValueError("result lacks victim stage values; not an exploiter run")
    q_v = stage_matrix(G, h, s, VICTIM, result_e.victim_values)
    q_e = stage_matrix(G, h, s, EXPLOITER, result_e.values)
    return in_exploiter_set(q_v, q_e,
                            result_e.victim_values.value(h, s) - epsilon,
                            result_e.values.value(h, s), strategy, tol)
