"""Security strategies and informed worst-case best responses in bimatrix games.

The victim solves the classic maximin LP over its own payoff matrix.  The
exploiter, who also knows the victim's matrix, best-responds to the entire
maximin polytope: the inner minimization over that polytope is dualized,
which turns the max-min problem into a single LP over (y, w, alpha).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BimatrixGame, MixedStrategy, GameShapeError
from .lp import LpProblem, LpSolution, solve_lp, OPTIMAL, UNBOUNDED

# Certificate checks run three orders of magnitude above solver tolerance.
TOL_VERIFY = 1e-6


class EmptyMaximinSetError(RuntimeError):
    """The dual LP came back unbounded: the maximin polytope is numerically
    empty (the victim value was overestimated beyond the retry slack)."""


@dataclass(frozen=True)
class VictimSolution:
    x_star: MixedStrategy
    p_v: float


@dataclass(frozen=True)
class ExploiterSolution:
    y_star: MixedStrategy
    w_star: np.ndarray
    alpha_star: float
    p_e: float


def _victim_problem(A: np.ndarray) -> LpProblem:
    # Variables [x_1..x_n, z], z free.  max z s.t. z <= x'A e_j, 1'x = 1.
    n, m = A.shape
    c = np.zeros(n + 1)
    c[n] = 1.0
    a_ub = np.hstack([-A.T, np.ones((m, 1))])
    b_ub = np.zeros(m)
    a_eq = np.concatenate([np.ones(n), [0.0]]).reshape(1, -1)
    free = np.zeros(n + 1, dtype=bool)
    free[n] = True
    return LpProblem.build(c, a_ub, b_ub, a_eq, [1.0], free)


def solve_victim(A) -> VictimSolution:
    """Maximin strategy and value over the victim's own payoff matrix."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise GameShapeError("payoff matrix must be 2-D")
    sol = solve_lp(_victim_problem(A))
    if sol.status != OPTIMAL:
        raise RuntimeError(f"victim LP unexpectedly {sol.status}")
    n = A.shape[0]
    x_star = MixedStrategy(sol.primal[:n])
    p_v = float(sol.objective_value)
    assert float(np.min(x_star.probs @ A)) >= p_v - TOL_VERIFY
    return VictimSolution(x_star, p_v)


def _exploiter_problem(A, B, z_obj) -> LpProblem:
    # Variables [y (m), w (m), alpha], alpha free.
    # max z_obj * 1'w - alpha  s.t.  alpha + e_i'By - e_i'Aw >= 0,  1'y = 1.
    n, m = A.shape
    c = np.concatenate([np.zeros(m), np.full(m, z_obj), [-1.0]])
    a_ub = np.hstack([-B, A, -np.ones((n, 1))])
    b_ub = np.zeros(n)
    a_eq = np.concatenate([np.ones(m), np.zeros(m), [0.0]]).reshape(1, -1)
    free = np.zeros(2 * m + 1, dtype=bool)
    free[2 * m] = True
    return LpProblem.build(c, a_ub, b_ub, a_eq, [1.0], free)


def solve_exploiter_given_value(A, B, z_star: float,
                                epsilon: float = 0.0) -> ExploiterSolution:
    """Exploiter LP with a precomputed victim value (used per Markov stage)."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise GameShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    n, m = A.shape
    z_eff = z_star - epsilon
    # Downward slack so float overestimation of the victim value cannot make
    # the maximin polytope empty (dual unbounded <=> primal infeasible).
    delta = 1e-9 * max(1.0, abs(z_eff))
    sol = solve_lp(_exploiter_problem(A, B, z_eff - delta))
    if sol.status == UNBOUNDED:
        sol = solve_lp(_exploiter_problem(A, B, z_eff - delta * 100))
        if sol.status == UNBOUNDED:
            raise EmptyMaximinSetError(
                "exploiter LP unbounded: maximin polytope numerically empty")
    if sol.status != OPTIMAL:
        raise RuntimeError(f"exploiter LP unexpectedly {sol.status}")
    y_star = MixedStrategy(sol.primal[:m])
    w_star = np.maximum(sol.primal[m:2 * m], 0.0)
    alpha_star = float(sol.primal[2 * m])
    p_e = float(z_eff * np.sum(w_star) - alpha_star)
    assert np.min(alpha_star + B @ y_star.probs - A @ w_star) >= -TOL_VERIFY
    return ExploiterSolution(y_star, w_star, alpha_star, p_e)


def solve_exploiter(A, B, epsilon: float = 0.0) -> ExploiterSolution:
    """Worst-case best response to the victim's (epsilon-)maximin polytope.

    Recomputes the victim value internally; the exploiter knows A, and taking
    the value as an argument invites mismatched inputs.
    """
    z_star = solve_victim(A).p_v
    return solve_exploiter_given_value(A, B, z_star, epsilon)


def solve_viser(game: BimatrixGame,
                epsilon: float = 0.0) -> tuple[VictimSolution, ExploiterSolution]:
    """Convenience wrapper: both players' independent solves."""
    if game.B is None:
        raise GameShapeError("exploiter payoffs required to solve both players")
    return solve_victim(game.A), solve_exploiter(game.A, game.B, epsilon)


def in_victim_set(A, z_star: float, x: MixedStrategy,
                  tol: float = TOL_VERIFY) -> bool:
    """Is x a member of the victim's maximin polytope at value z_star?"""
    A = np.asarray(A, dtype=float)
    if len(x) != A.shape[0]:
        raise GameShapeError("strategy size does not match matrix")
    return bool(np.min(x.probs @ A) >= z_star - tol)


def in_exploiter_set(A, B, z_star: float, p_e: float, y: MixedStrategy,
                     tol: float = TOL_VERIFY) -> bool:
    """Is y an optimal worst-case best response?  Decided by checking whether
    some w >= 0 certifies e_i'By + (z* 1' - e_i'A) w >= p_e for every row i."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    n, m = A.shape
    if len(y) != m:
        raise GameShapeError("strategy size does not match matrix")
    lhs = -(z_star * np.ones((n, m)) - A)
    rhs = B @ y.probs - p_e + tol
    sol = solve_lp(LpProblem.build(np.zeros(m), a_ub=lhs, b_ub=rhs))
    return sol.status == OPTIMAL


def exploiter_security(B) -> VictimSolution:
    """The exploiter's plain security strategy (maximin over columns of B)."""
    B = np.asarray(B, dtype=float)
    return solve_victim(B.T)
