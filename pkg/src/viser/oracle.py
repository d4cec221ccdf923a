"""Brute-force verifiers for small games.

Everything here is deliberately naive: grids, basis enumeration, and
explicit trajectory sums.  The exploiter oracle in particular avoids the
dual construction used by the solver, so a bug in the duality derivation
cannot hide in both code paths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import MarkovGame, MarkovPolicy, MixedStrategy
from .lp import LpProblem, solve_lp, OPTIMAL

GRID_MAX_DIM = 4
VERTEX_MAX_SIZE = 16  # n + m cap for basis enumeration
TRAJECTORY_CAP = int(1e7)


class OracleSizeError(ValueError):
    """Instance exceeds the documented brute-force size caps."""


@dataclass(frozen=True)
class Polytope:
    """Maximin polytope {x in simplex : x'A e_j >= z*} with its vertex list."""

    dimension: int
    ineq_lhs: np.ndarray  # rows a with a'x >= b
    ineq_rhs: np.ndarray
    vertices: np.ndarray  # (k, dimension)


def _simplex_grid_chunks(n: int, k: int):
    """Yield chunks of grid points of the (n-1)-simplex at denominator k."""
    if n == 1:
        yield np.ones((1, 1))
        return
    if n == 2:
        i = np.arange(k + 1)
        yield np.column_stack([i, k - i]) / k
        return

    def pairs(t):
        # All (j, l) with j + l <= t, fully vectorized.
        counts = t + 1 - np.arange(t + 1)
        j = np.repeat(np.arange(t + 1), counts)
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        l = np.arange(counts.sum()) - np.repeat(starts, counts)
        return j, l

    if n == 3:
        j, l = pairs(k)
        yield np.column_stack([j, l, k - j - l]) / k
        return
    if n == 4:
        for i in range(k + 1):
            j, l = pairs(k - i)
            yield np.column_stack([np.full(j.size, i), j, l, k - i - j - l]) / k
        return
    raise OracleSizeError(f"grid oracle limited to dimension {GRID_MAX_DIM}")


def grid_maximin(A, resolution: float) -> tuple[float, np.ndarray]:
    """Max over a simplex grid of the exact min over pure columns.

    Approximation error is at most L * resolution with L the largest
    column range of A.  Independent of the LP machinery by construction.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n > GRID_MAX_DIM:
        raise OracleSizeError(f"grid oracle limited to {GRID_MAX_DIM} rows")
    k = max(1, int(round(1.0 / resolution)))
    best_val = -np.inf
    best_x = None
    for chunk in _simplex_grid_chunks(n, k):
        mins = (chunk @ A).min(axis=1)
        i = int(np.argmax(mins))
        if mins[i] > best_val:
            best_val = float(mins[i])
            best_x = chunk[i].copy()
    return best_val, best_x


def enumerate_x_star_vertices(A, z_star: float) -> np.ndarray:
    """All vertices of {x in simplex : x'A e_j >= z*} by basis enumeration.

    Picks n-1 active rows out of the m column constraints and n sign
    constraints (the simplex equality is always active) and keeps the
    feasible solutions, deduplicated at 1e-8.
    """
    A = np.asarray(A, dtype=float)
    n, m = A.shape
    if n + m > VERTEX_MAX_SIZE:
        raise OracleSizeError(f"vertex enumeration capped at n + m <= {VERTEX_MAX_SIZE}")
    # Inequalities a'x >= b: columns of A vs z*, then coordinates vs 0.
    lhs = np.vstack([A.T, np.eye(n)])
    rhs = np.concatenate([np.full(m, z_star), np.zeros(n)])
    vertices = []
    for active in itertools.combinations(range(n + m), n - 1):
        M = np.vstack([lhs[list(active)], np.ones(n)])
        b = np.concatenate([rhs[list(active)], [1.0]])
        try:
            x = np.linalg.solve(M, b)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > 1e8:
            continue
        if np.min(lhs @ x - rhs) < -1e-8:
            continue
        if not any(np.max(np.abs(x - v)) <= 1e-8 for v in vertices):
            vertices.append(x)
    return np.array(vertices).reshape(len(vertices), n)


def x_star_polytope(A, z_star: float) -> Polytope:
    A = np.asarray(A, dtype=float)
    n, m = A.shape
    lhs = np.vstack([A.T, np.eye(n)])
    rhs = np.concatenate([np.full(m, z_star), np.zeros(n)])
    return Polytope(n, lhs, rhs, enumerate_x_star_vertices(A, z_star))


def oracle_exploiter_value(B, vertices) -> tuple[float, np.ndarray]:
    """max_y min over the listed maximin vertices of x'By.

    Built as a direct small LP over (y, t); never touches the dual (w, alpha)
    construction used by the solver.
    """
    B = np.asarray(B, dtype=float)
    vertices = np.asarray(vertices, dtype=float)
    if vertices.size == 0:
        raise ValueError("empty vertex list")
    m = B.shape[1]
    payoffs = vertices @ B  # (k, m): row k is the payoff vector against vertex k
    # Variables [y (m), t]; max t s.t. t <= payoffs[k] @ y, 1'y = 1.
    c = np.concatenate([np.zeros(m), [1.0]])
    a_ub = np.hstack([-payoffs, np.ones((payoffs.shape[0], 1))])
    a_eq = np.concatenate([np.ones(m), [0.0]]).reshape(1, -1)
    free = np.zeros(m + 1, dtype=bool)
    free[m] = True
    sol = solve_lp(LpProblem.build(c, a_ub, np.zeros(payoffs.shape[0]),
                                   a_eq, [1.0], free))
    if sol.status != OPTIMAL:
        raise RuntimeError(f"oracle LP unexpectedly {sol.status}")
    return float(sol.objective_value), sol.primal[:m].copy()


def exhaustive_policy_eval(G: MarkovGame, pi: MarkovPolicy, nu: MarkovPolicy,
                           player: str) -> float:
    """Overall payoff by explicit probability-weighted trajectory enumeration."""
    size = (G.S ** G.H) * ((G.n * G.m) ** G.H)
    if size > TRAJECTORY_CAP:
        raise OracleSizeError(f"trajectory count {size} exceeds cap {TRAJECTORY_CAP}")
    R = G.rewards(player)
    total = 0.0

    def walk(h, s, prob, reward):
        nonlocal total
        if prob == 0.0:
            return
        x = pi.strategy(h, s).probs
        y = nu.strategy(h, s).probs
        for av in range(G.n):
            for ae in range(G.m):
                p = prob * x[av] * y[ae]
                r = reward + R[h - 1, s, av, ae]
                if h == G.H:
                    total += p * r
                else:
                    for s2 in range(G.S):
                        walk(h + 1, s2, p * G.P[h - 1, s, av, ae, s2], r)

    for s0 in range(G.S):
        walk(1, s0, float(G.mu[s0]), 0.0)
    return total
