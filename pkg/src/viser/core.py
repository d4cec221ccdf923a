"""Domain types for bimatrix and finite-horizon Markov games.

All types are immutable after construction (arrays are frozen with
``writeable=False``) and validated eagerly, so downstream solvers never
have to re-check shapes or probability constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Slack allowed when validating probability vectors.
TOL_FEAS = 1e-6

VICTIM = "victim"
EXPLOITER = "exploiter"


class GameShapeError(ValueError):
    """Raised when matrix / tensor dimensions are inconsistent."""


class InformationError(ValueError):
    """Raised when a computation needs payoff data the caller did not supply."""


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite entries")
    arr.setflags(write=False)
    return arr


def _check_distribution(p: np.ndarray, what: str, tol: float = TOL_FEAS) -> None:
    if np.min(p) < -tol:
        raise ValueError(f"{what} has negative entries (min {np.min(p):g})")
    if abs(float(np.sum(p)) - 1.0) > tol:
        raise ValueError(f"{what} does not sum to 1 (sum {np.sum(p):g})")


@dataclass(frozen=True)
class MixedStrategy:
    """Probability vector over a player's pure actions.

    Entries are clamped to [0, 1] and renormalized when the total is within
    ``TOL_FEAS`` of 1; larger violations are rejected so that solver bugs
    cannot hide behind silent renormalization.
    """

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise GameShapeError("strategy must be a non-empty vector")
        if not np.all(np.isfinite(p)):
            raise ValueError("strategy has non-finite entries")
        if np.min(p) < -TOL_FEAS:
            raise ValueError(f"strategy entry below zero: {np.min(p):g}")
        p = np.clip(p, 0.0, 1.0)
        total = float(np.sum(p))
        if abs(total - 1.0) > TOL_FEAS:
            raise ValueError(f"strategy sums to {total:g}, expected 1")
        p = p / total
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @classmethod
    def pure(cls, index: int, size: int) -> "MixedStrategy":
        p = np.zeros(size)
        p[index] = 1.0
        return cls(p)

    @classmethod
    def uniform(cls, size: int) -> "MixedStrategy":
        return cls(np.full(size, 1.0 / size))

    def __len__(self) -> int:
        return self.probs.size


@dataclass(frozen=True)
class BimatrixGame:
    """Two-player game; ``B is None`` models the victim's information set."""

    A: np.ndarray
    B: np.ndarray | None = None

    def __post_init__(self):
        a = _frozen(self.A)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise GameShapeError("payoff matrix must be 2-D and non-empty")
        object.__setattr__(self, "A", a)
        if self.B is not None:
            b = _frozen(self.B)
            if b.shape != a.shape:
                raise GameShapeError(f"B shape {b.shape} != A shape {a.shape}")
            object.__setattr__(self, "B", b)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.A.shape[1]

    def without_exploiter_payoffs(self) -> "BimatrixGame":
        return BimatrixGame(self.A)


@dataclass(frozen=True)
class MarkovGame:
    """Finite-horizon Markov game (steps 1..H, states 0..S-1).

    ``R_v`` and ``R_e`` are indexed ``[h-1, s, a_v, a_e]``, the transition
    tensor ``P`` is indexed ``[h-1, s, a_v, a_e, s']``.  ``R_e is None``
    models the victim's information set.
    """

    R_v: np.ndarray
    P: np.ndarray
    mu: np.ndarray
    R_e: np.ndarray | None = None

    def __post_init__(self):
        rv = _frozen(self.R_v)
        if rv.ndim != 4:
            raise GameShapeError("R_v must have shape (H, S, n, m)")
        H, S, n, m = rv.shape
        if min(H, S, n, m) < 1:
            raise GameShapeError("empty Markov game")
        p = _frozen(self.P)
        if p.shape != (H, S, n, m, S):
            raise GameShapeError(f"P shape {p.shape}, expected {(H, S, n, m, S)}")
        flat = p.reshape(-1, S)
        if np.min(flat) < -TOL_FEAS or np.max(np.abs(flat.sum(axis=1) - 1.0)) > TOL_FEAS:
            raise ValueError("transition rows must be probability vectors")
        mu = _frozen(self.mu)
        if mu.shape != (S,):
            raise GameShapeError(f"mu shape {mu.shape}, expected ({S},)")
        _check_distribution(mu, "mu")
        object.__setattr__(self, "R_v", rv)
        object.__setattr__(self, "P", p)
        object.__setattr__(self, "mu", mu)
        if self.R_e is not None:
            re = _frozen(self.R_e)
            if re.shape != rv.shape:
                raise GameShapeError(f"R_e shape {re.shape} != R_v shape {rv.shape}")
            object.__setattr__(self, "R_e", re)

    @property
    def H(self) -> int:
        return self.R_v.shape[0]

    @property
    def S(self) -> int:
        return self.R_v.shape[1]

    @property
    def n(self) -> int:
        return self.R_v.shape[2]

    @property
    def m(self) -> int:
        return self.R_v.shape[3]

    def without_exploiter_payoffs(self) -> "MarkovGame":
        return MarkovGame(self.R_v, self.P, self.mu)

    def rewards(self, player: str) -> np.ndarray:
        if player == VICTIM:
            return self.R_v
        if player == EXPLOITER:
            if self.R_e is None:
                raise InformationError("exploiter rewards are not available")
            return self.R_e
        raise ValueError(f"unknown player {player!r}")


@dataclass(frozen=True)
class MarkovPolicy:
    """Per-(step, state) mixed strategy; keys are (h, s) with h in 1..H."""

    owner: str
    decisions: dict[tuple[int, int], MixedStrategy]

    def __post_init__(self):
        if self.owner not in (VICTIM, EXPLOITER):
            raise ValueError(f"unknown owner {self.owner!r}")

    def check_complete(self, H: int, S: int) -> None:
        missing = [(h, s) for h in range(1, H + 1) for s in range(S)
                   if (h, s) not in self.decisions]
        if missing:
            raise GameShapeError(f"policy missing entries, e.g. {missing[0]}")

    def strategy(self, h: int, s: int) -> MixedStrategy:
        return self.decisions[(h, s)]

    @classmethod
    def uniform(cls, owner: str, H: int, S: int, size: int) -> "MarkovPolicy":
        return cls(owner, {(h, s): MixedStrategy.uniform(size)
                           for h in range(1, H + 1) for s in range(S)})

    @classmethod
    def from_array(cls, owner: str, table: np.ndarray) -> "MarkovPolicy":
        """Build from an array indexed [h-1, s, action]."""
        H, S, _ = table.shape
        return cls(owner, {(h, s): MixedStrategy(table[h - 1, s])
                           for h in range(1, H + 1) for s in range(S)})


@dataclass(frozen=True)
class ValueTable:
    """Expected cumulative payoff from step h onward, keyed by (h, s)."""

    owner: str
    values: dict[tuple[int, int], float]

    def value(self, h: int, s: int) -> float:
        return self.values[(h, s)]

    def step_vector(self, h: int, S: int) -> np.ndarray:
        return np.array([self.values[(h, s)] for s in range(S)])


def bimatrix_payoff(x: MixedStrategy, M, y: MixedStrategy) -> float:
    """Expected payoff x'My of the mixed-strategy profile (x, y)."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise GameShapeError("payoff matrix must be 2-D")
    if len(x) != M.shape[0] or len(y) != M.shape[1]:
        raise GameShapeError(
            f"strategy sizes ({len(x)}, {len(y)}) do not match matrix {M.shape}")
    return float(x.probs @ M @ y.probs)


def evaluate_policies(G: MarkovGame, pi: MarkovPolicy, nu: MarkovPolicy,
                      player: str) -> ValueTable:
    """Exact stage values of a fixed policy pair via backward recursion."""
    R = G.rewards(player)
    pi.check_complete(G.H, G.S)
    nu.check_complete(G.H, G.S)
    values: dict[tuple[int, int], float] = {}
    v_next = np.zeros(G.S)
    for h in range(G.H, 0, -1):
        v_here = np.empty(G.S)
        for s in range(G.S):
            x = pi.strategy(h, s).probs
            y = nu.strategy(h, s).probs
            stage = R[h - 1, s] + G.P[h - 1, s] @ v_next
            v_here[s] = float(x @ stage @ y)
            values[(h, s)] = v_here[s]
        v_next = v_here
    return ValueTable(player, values)


def expected_payoff(G: MarkovGame, table: ValueTable) -> float:
    """Overall payoff: initial-distribution average of the step-1 values."""
    return float(G.mu @ table.step_vector(1, G.S))
