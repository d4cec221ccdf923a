import numpy as np
import pytest

from viser import solve_victim
from viser.bench import (BLOCK_A, BLOCK_B, CSV_HEADER, gen_block_bimatrix,
                         gen_block_markov, gen_random_markov, read_csv,
                         run_block_experiment, run_random_experiment, write_csv)


class TestBlockBimatrixGenerator:
    def test_r1_is_base_game(self):
        g = gen_block_bimatrix(1)
        assert np.array_equal(g.A, BLOCK_A)
        assert np.array_equal(g.B, BLOCK_B)

    def test_r2_layout(self):
        g = gen_block_bimatrix(2)
        assert g.A.shape == (6, 4)
        assert np.array_equal(g.A[:3, :2], BLOCK_A)
        assert np.array_equal(g.A[3:, 2:], BLOCK_A)
        assert np.all(g.A[:3, 2:] == 0.0)
        assert np.all(g.A[3:, :2] == 0.0)

    def test_r3_victim_value(self):
        assert solve_victim(gen_block_bimatrix(3).A).p_v == pytest.approx(10.0 / 3, abs=1e-9)

    def test_rejects_nonpositive_r(self):
        with pytest.raises(ValueError):
            gen_block_bimatrix(0)


class TestBlockMarkovGenerator:
    def test_structure(self):
        G = gen_block_markov(2, S=4, H=3)
        assert (G.H, G.S, G.n, G.m) == (3, 4, 6, 4)
        assert np.array_equal(G.R_v[2, 1], gen_block_bimatrix(2).A)
        assert np.all(G.P == 0.25)
        assert G.mu == pytest.approx([1.0, 0.0, 0.0, 0.0])

    def test_single_step_reduces_to_bimatrix_value(self):
        from viser import solve_victim_markov
        G = gen_block_markov(2, S=3, H=1).without_exploiter_payoffs()
        assert solve_victim_markov(G).guaranteed_payoff == pytest.approx(5.0, abs=1e-9)


class TestRandomMarkovGenerator:
    def test_deterministic_for_fixed_seed(self):
        a = gen_random_markov(3, S=2, H=2, seed=123)
        b = gen_random_markov(3, S=2, H=2, seed=123)
        assert a.R_v.tobytes() == b.R_v.tobytes()
        assert a.R_e.tobytes() == b.R_e.tobytes()
        assert a.P.tobytes() == b.P.tobytes()

    def test_different_seeds_differ(self):
        a = gen_random_markov(2, S=2, H=2, seed=1)
        b = gen_random_markov(2, S=2, H=2, seed=2)
        assert a.R_v.tobytes() != b.R_v.tobytes()

    def test_reward_range(self):
        G = gen_random_markov(2, S=2, H=2, seed=77)
        assert np.min(G.R_v) >= -1.0 and np.max(G.R_v) <= 1.0
        assert np.min(G.R_e) >= -1.0 and np.max(G.R_e) <= 1.0


@pytest.fixture(scope="module")
def rows():
    return run_block_experiment([1, 2, 4], S=4, H=10)


class TestBlockExperiment:
    def test_computed_baselines(self, rows):
        assert [row.p_v for row in rows] == pytest.approx([100.0, 50.0, 25.0], abs=1e-5)
        assert [row.p_e for row in rows] == pytest.approx([100.0, 50.0, 25.0], abs=1e-5)

    def test_analytic_matches(self, rows):
        for row in rows:
            assert row.p_v == pytest.approx(row.analytic_v, abs=1e-5)
            assert row.p_e == pytest.approx(row.analytic_e, abs=1e-5)

    def test_payoffs_dominate_baselines(self, rows):
        for row in rows:
            assert row.payoff_v >= row.p_v - 1e-5
            assert row.payoff_e >= row.p_e - 1e-5

    def test_victim_time_not_slower(self, rows):
        # The exploiter run includes the victim stage LPs plus its own.
        for row in rows:
            assert row.time_victim_s <= row.time_exploiter_s


class TestRandomExperiment:
    def test_rows_and_bounds(self):
        rows = run_random_experiment([2, 3], seeds=[0, 1], S=3, H=3)
        assert len(rows) == 4
        for row in rows:
            assert row.kind == "random"
            assert row.analytic_v is None and row.analytic_e is None
            assert row.payoff_v >= row.p_v - 1e-5
            assert row.payoff_e >= row.p_e - 1e-5
            assert row.total_entries == 3 * 3 * row.size_param ** 2


def test_csv_round_trip(tmp_path):
    rows = run_block_experiment([1, 2], S=2, H=2)
    path = tmp_path / "rows.csv"
    write_csv(rows, path)
    header = path.read_text().splitlines()[0]
    assert header == ",".join(CSV_HEADER)
    back = read_csv(path)
    assert back == rows


def test_csv_empty_analytic_fields(tmp_path):
    rows = run_random_experiment([2], seeds=[0], S=2, H=2)
    path = tmp_path / "rows.csv"
    write_csv(rows, path)
    record = path.read_text().splitlines()[1].split(",")
    assert record[7] == "" and record[8] == ""
    assert read_csv(path) == rows
