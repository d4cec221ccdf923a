"""Benchmark generators and experiment drivers with CSV emission.

Two families: block-diagonal games built from a fixed 3x2 example where
security play and informed best response diverge sharply, and uniformly
random Markov games.  Block games have the closed-form guarantee 10/r per
step (10H/r over the horizon), which the experiments record alongside the
computed and realized payoffs.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

import numpy as np

from .core import (EXPLOITER, VICTIM, BimatrixGame, MarkovGame,
                   evaluate_policies, expected_payoff)
from .markov import MpviserResult, solve_exploiter_markov, solve_victim_markov

# 3x2 example: two secure rows worth 10 each, one trap row; the exploiter's
# first column pays it 20/10 against the secure rows, the second almost nothing.
BLOCK_A = np.array([[10.0, 10.0],
                    [10.0, 10.0],
                    [-1.0, -1.0]])
BLOCK_B = np.array([[20.0, -1.0],
                    [10.0, -1.0],
                    [-1.0, 0.0]])

CSV_HEADER = ["kind", "size_param", "total_entries", "p_v", "p_e",
              "payoff_v", "payoff_e", "analytic_v", "analytic_e",
              "time_victim_s", "time_exploiter_s"]


@dataclass(frozen=True)
class ExperimentRow:
    kind: str  # "block" | "random"
    size_param: int  # r for block games, n for random games
    total_entries: int  # H * S * n * m
    p_v: float
    p_e: float
    payoff_v: float
    payoff_e: float
    analytic_v: float | None
    analytic_e: float | None
    time_victim_s: float
    time_exploiter_s: float


def gen_block_bimatrix(r: int) -> BimatrixGame:
    """Block-diagonal game with r copies of the 3x2 example on the diagonal."""
    if r < 1:
        raise ValueError("r must be >= 1")
    A = np.kron(np.eye(r), BLOCK_A)
    B = np.kron(np.eye(r), BLOCK_B)
    return BimatrixGame(A, B)


def gen_block_markov(r: int, S: int = 10, H: int = 10) -> MarkovGame:
    """Block bimatrix rewards at every step/state, uniform transitions,
    deterministic start in state 0."""
    game = gen_block_bimatrix(r)
    n, m = game.n, game.m
    R_v = np.broadcast_to(game.A, (H, S, n, m)).copy()
    R_e = np.broadcast_to(game.B, (H, S, n, m)).copy()
    P = np.full((H, S, n, m, S), 1.0 / S)
    mu = np.zeros(S)
    mu[0] = 1.0
    return MarkovGame(R_v, P, mu, R_e)


def gen_random_markov(n: int, S: int = 10, H: int = 10, seed: int = 0) -> MarkovGame:
    """Square random game: rewards i.i.d. uniform on [-1, 1], transitions by
    normalizing i.i.d. uniforms, uniform initial distribution.

    Fully determined by the 64-bit seed through numpy's default PCG64
    generator; the draw order is rewards (victim then exploiter) followed by
    transitions, so a fixed seed reproduces the same game forever.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    R_v = rng.uniform(-1.0, 1.0, size=(H, S, n, n))
    R_e = rng.uniform(-1.0, 1.0, size=(H, S, n, n))
    raw = rng.uniform(0.0, 1.0, size=(H, S, n, n, S)) + 1e-12
    P = raw / raw.sum(axis=-1, keepdims=True)
    mu = np.full(S, 1.0 / S)
    return MarkovGame(R_v, P, mu, R_e)


def _run_markov_instance(G: MarkovGame, kind: str, size_param: int,
                         analytic_v: float | None,
                         analytic_e: float | None) -> ExperimentRow:
    t0 = time.perf_counter()
    res_v = solve_victim_markov(G.without_exploiter_payoffs())
    t1 = time.perf_counter()
    res_e = solve_exploiter_markov(G)
    t2 = time.perf_counter()
    payoff_v = expected_payoff(
        G, evaluate_policies(G, res_v.policy, res_e.policy, VICTIM))
    payoff_e = expected_payoff(
        G, evaluate_policies(G, res_v.policy, res_e.policy, EXPLOITER))
    return ExperimentRow(
        kind=kind, size_param=size_param,
        total_entries=G.H * G.S * G.n * G.m,
        p_v=res_v.guaranteed_payoff, p_e=res_e.guaranteed_payoff,
        payoff_v=payoff_v, payoff_e=payoff_e,
        analytic_v=analytic_v, analytic_e=analytic_e,
        time_victim_s=t1 - t0, time_exploiter_s=t2 - t1)


def run_block_experiment(r_values, S: int = 10, H: int = 10,
                         csv_path=None) -> list[ExperimentRow]:
    rows = []
    for r in r_values:
        G = gen_block_markov(r, S=S, H=H)
        rows.append(_run_markov_instance(G, "block", r,
                                         analytic_v=10.0 * H / r,
                                         analytic_e=10.0 * H / r))
    if csv_path is not None:
        write_csv(rows, csv_path)
    return rows


def run_random_experiment(n_values, seeds, S: int = 10, H: int = 10,
                          csv_path=None) -> list[ExperimentRow]:
    rows = []
    for n in n_values:
        for seed in seeds:
            G = gen_random_markov(n, S=S, H=H, seed=seed)
            rows.append(_run_markov_instance(G, "random", n, None, None))
    if csv_path is not None:
        write_csv(rows, csv_path)
    return rows


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([
                row.kind, row.size_param, row.total_entries,
                repr(row.p_v), repr(row.p_e),
                repr(row.payoff_v), repr(row.payoff_e),
                "" if row.analytic_v is None else repr(row.analytic_v),
                "" if row.analytic_e is None else repr(row.analytic_e),
                repr(row.time_victim_s), repr(row.time_exploiter_s)])


def read_csv(path) -> list[ExperimentRow]:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        for rec in reader:
            rows.append(ExperimentRow(
                kind=rec[0], size_param=int(rec[1]), total_entries=int(rec[2]),
                p_v=float(rec[3]), p_e=float(rec[4]),
                payoff_v=float(rec[5]), payoff_e=float(rec[6]),
                analytic_v=float(rec[7]) if rec[7] else None,
                analytic_e=float(rec[8]) if rec[8] else None,
                time_victim_s=float(rec[9]), time_exploiter_s=float(rec[10])))
    return rows
