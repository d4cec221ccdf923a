"""Solver toolkit for games with one-sided information asymmetry.

One player (the victim) knows only its own payoffs and plays a maximin
security strategy; the other (the exploiter) knows both payoff matrices and
best-responds to the victim's whole maximin polytope.  The package solves
both players' problems for bimatrix games and, via backward induction over
stage games, for finite-horizon Markov games, and ships brute-force oracles
plus a benchmark harness.
"""

from .core import (EXPLOITER, VICTIM, BimatrixGame, GameShapeError,
                   InformationError, MarkovGame, MarkovPolicy, MixedStrategy,
                   ValueTable, bimatrix_payoff, evaluate_policies,
                   expected_payoff)
from .lp import (INFEASIBLE, OPTIMAL, UNBOUNDED, LpProblem, LpSolution,
                 SolverStallError, solve_lp)
from .bimatrix import (EmptyMaximinSetError, ExploiterSolution, VictimSolution,
                       exploiter_security, in_exploiter_set, in_victim_set,
                       solve_exploiter, solve_victim, solve_viser)
from .markov import (MpviserResult, StageGame, exploiter_stage_membership,
                     solve_exploiter_markov, solve_victim_markov,
                     stage_matrix, stage_membership)
from .oracle import (OracleSizeError, Polytope, enumerate_x_star_vertices,
                     exhaustive_policy_eval, grid_maximin,
                     oracle_exploiter_value, x_star_polytope)

__all__ = [
    "BimatrixGame", "MarkovGame", "MarkovPolicy", "MixedStrategy",
    "ValueTable", "VICTIM", "EXPLOITER", "GameShapeError", "InformationError",
    "bimatrix_payoff", "evaluate_policies", "expected_payoff",
    "LpProblem", "LpSolution", "SolverStallError", "solve_lp",
    "OPTIMAL", "INFEASIBLE", "UNBOUNDED",
    "VictimSolution", "ExploiterSolution", "EmptyMaximinSetError",
    "solve_victim", "solve_exploiter", "solve_viser",
    "in_victim_set", "in_exploiter_set", "exploiter_security",
    "MpviserResult", "StageGame", "stage_matrix", "solve_victim_markov",
    "solve_exploiter_markov", "stage_membership", "exploiter_stage_membership",
    "Polytope", "OracleSizeError", "grid_maximin", "enumerate_x_star_vertices",
    "x_star_polytope", "oracle_exploiter_value", "exhaustive_policy_eval",
]

__version__ = "0.1.0"
