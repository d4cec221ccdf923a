import numpy as np
import pytest

from viser import (EXPLOITER, VICTIM, MarkovGame, MarkovPolicy, MixedStrategy,
                   evaluate_policies, expected_payoff, in_victim_set,
                   solve_exploiter, solve_victim)
from viser.bench import BLOCK_A, BLOCK_B, gen_random_markov
from viser.oracle import (OracleSizeError, enumerate_x_star_vertices,
                          exhaustive_policy_eval, grid_maximin,
                          oracle_exploiter_value, x_star_polytope)


class TestGridMaximin:
    def test_matching_pennies(self):
        value, x = grid_maximin(np.array([[1.0, -1.0], [-1.0, 1.0]]), 1e-3)
        assert value == pytest.approx(0.0, abs=2e-3)
        assert x == pytest.approx([0.5, 0.5], abs=1e-3)

    def test_zero_matrix(self):
        value, _ = grid_maximin(np.zeros((3, 2)), 1e-2)
        assert value == 0.0

    def test_example_game(self):
        value, _ = grid_maximin(BLOCK_A, 1e-3)
        assert value == pytest.approx(10.0, abs=11 * 2e-3)

    def test_dimension_cap(self):
        with pytest.raises(OracleSizeError):
            grid_maximin(np.zeros((5, 2)), 1e-2)


class TestVertexEnumeration:
    def test_example_game(self):
        vertices = enumerate_x_star_vertices(BLOCK_A, 10.0)
        expect = {(1.0, 0.0, 0.0), (0.0, 1.0, 0.0)}
        got = {tuple(np.round(v, 9)) for v in vertices}
        assert got == expect

    def test_zero_matrix_gives_unit_vectors(self):
        vertices = enumerate_x_star_vertices(np.zeros((3, 2)), 0.0)
        got = {tuple(np.round(v, 9)) for v in vertices}
        assert got == {(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)}

    def test_matching_pennies_single_vertex(self):
        A = np.array([[1.0, -1.0], [-1.0, 1.0]])
        vertices = enumerate_x_star_vertices(A, 0.0)
        assert vertices.shape == (1, 2)
        assert vertices[0] == pytest.approx([0.5, 0.5], abs=1e-9)

    def test_size_cap(self):
        with pytest.raises(OracleSizeError):
            enumerate_x_star_vertices(np.zeros((10, 10)), 0.0)

    def test_vertices_pass_membership(self):
        rng = np.random.default_rng(51)
        for _ in range(15):
            n, m = rng.integers(2, 5, size=2)
            A = rng.uniform(-1, 1, size=(n, m))
            z = solve_victim(A).p_v
            poly = x_star_polytope(A, z)
            assert poly.vertices.shape[0] >= 1
            assert np.min(poly.ineq_lhs @ poly.vertices.T - poly.ineq_rhs[:, None]) >= -1e-8
            for v in poly.vertices:
                assert in_victim_set(A, z, MixedStrategy(v), 1e-7)


class TestExploiterOracle:
    def test_example_game(self):
        vertices = enumerate_x_star_vertices(BLOCK_A, 10.0)
        value, y = oracle_exploiter_value(BLOCK_B, vertices)
        assert value == pytest.approx(10.0, abs=1e-9)
        assert y == pytest.approx([1.0, 0.0], abs=1e-9)

    def test_zero_matrix(self):
        vertices = enumerate_x_star_vertices(np.zeros((2, 2)), 0.0)
        value, _ = oracle_exploiter_value(np.zeros((2, 2)), vertices)
        assert value == pytest.approx(0.0)

    def test_zero_sum_matching_pennies(self):
        A = np.array([[1.0, -1.0], [-1.0, 1.0]])
        vertices = enumerate_x_star_vertices(A, 0.0)
        value, _ = oracle_exploiter_value(-A, vertices)
        assert value == pytest.approx(0.0, abs=1e-9)

    def test_empty_vertex_list_rejected(self):
        with pytest.raises(ValueError):
            oracle_exploiter_value(np.zeros((2, 2)), np.zeros((0, 2)))


class TestAgreementWithLp:
    def test_small_random_games(self):
        rng = np.random.default_rng(61)
        for _ in range(12):
            n, m = rng.integers(2, 5, size=2)
            A = rng.uniform(-1, 1, size=(n, m))
            B = rng.uniform(-1, 1, size=(n, m))
            resolution = 1e-2
            approx, _ = grid_maximin(A, resolution)
            victim = solve_victim(A)
            col_range = float(np.max(A.max(axis=0) - A.min(axis=0)))
            assert abs(victim.p_v - approx) <= 2 * col_range * resolution
            vertices = enumerate_x_star_vertices(A, victim.p_v)
            value, _ = oracle_exploiter_value(B, vertices)
            assert abs(solve_exploiter(A, B).p_e - value) <= 1e-6


class TestExhaustivePolicyEval:
    def test_single_step_equals_stage_payoff(self):
        G = gen_random_markov(2, S=2, H=1, seed=5)
        pi = MarkovPolicy.uniform(VICTIM, 1, 2, 2)
        nu = MarkovPolicy.uniform(EXPLOITER, 1, 2, 2)
        direct = sum(G.mu[s] * float(pi.strategy(1, s).probs @ G.R_v[0, s]
                                     @ nu.strategy(1, s).probs)
                     for s in range(2))
        assert exhaustive_policy_eval(G, pi, nu, VICTIM) == pytest.approx(direct, abs=1e-12)

    def test_matches_recursive_evaluation(self):
        for seed in range(5):
            G = gen_random_markov(2, S=2, H=2, seed=seed)
            rng = np.random.default_rng(1000 + seed)
            pi = MarkovPolicy(VICTIM, {(h, s): MixedStrategy(rng.dirichlet(np.ones(2)))
                                       for h in (1, 2) for s in (0, 1)})
            nu = MarkovPolicy(EXPLOITER, {(h, s): MixedStrategy(rng.dirichlet(np.ones(2)))
                                          for h in (1, 2) for s in (0, 1)})
            fast = expected_payoff(G, evaluate_policies(G, pi, nu, VICTIM))
            slow = exhaustive_policy_eval(G, pi, nu, VICTIM)
            assert fast == pytest.approx(slow, abs=1e-9)

    def test_deterministic_chain_pure_policies(self):
        # Two steps, transition always to state 1; pure policies pick entry (0, 1).
        R = np.zeros((2, 2, 2, 2))
        R[0, 0, 0, 1] = 3.0
        R[1, 1, 0, 1] = 4.0
        P = np.zeros((2, 2, 2, 2, 2))
        P[..., 1] = 1.0
        G = MarkovGame(R, P, np.array([1.0, 0.0]))
        pi = MarkovPolicy(VICTIM, {(h, s): MixedStrategy.pure(0, 2)
                                   for h in (1, 2) for s in (0, 1)})
        nu = MarkovPolicy(EXPLOITER, {(h, s): MixedStrategy.pure(1, 2)
                                      for h in (1, 2) for s in (0, 1)})
        assert exhaustive_policy_eval(G, pi, nu, VICTIM) == pytest.approx(7.0, abs=1e-12)

    def test_size_cap(self):
        G = gen_random_markov(3, S=4, H=6, seed=0)
        pi = MarkovPolicy.uniform(VICTIM, 6, 4, 3)
        nu = MarkovPolicy.uniform(EXPLOITER, 6, 4, 3)
        with pytest.raises(OracleSizeError):
            exhaustive_policy_eval(G, pi, nu, VICTIM)
