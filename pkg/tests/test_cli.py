import json

import numpy as np
import pytest

from viser.bench import (BLOCK_A, BLOCK_B, gen_block_markov,
                         gen_random_markov, read_csv)
from viser.cli import main
from viser.core import BimatrixGame
from viser.files import save_game


@pytest.fixture
def example_game(tmp_path):
    path = tmp_path / "game.json"
    save_game(BimatrixGame(BLOCK_A, BLOCK_B), path)
    return path


@pytest.fixture
def victim_only_game(tmp_path):
    path = tmp_path / "victim_only.json"
    save_game(BimatrixGame(BLOCK_A), path)
    return path


@pytest.fixture
def markov_game(tmp_path):
    path = tmp_path / "markov.json"
    save_game(gen_block_markov(1, S=2, H=2), path)
    return path


class TestSolve:
    def test_victim_value(self, example_game, tmp_path):
        out = tmp_path / "sol.json"
        assert main(["solve", str(example_game), "--player", "victim",
                     "--out", str(out)]) == 0
        sol = json.loads(out.read_text())
        assert sol["player"] == "victim"
        assert sol["guaranteed_payoff"] == pytest.approx(10.0, abs=1e-6)

    def test_exploiter_strategy(self, example_game, tmp_path):
        out = tmp_path / "sol.json"
        assert main(["solve", str(example_game), "--player", "exploiter",
                     "--out", str(out)]) == 0
        sol = json.loads(out.read_text())
        assert sol["guaranteed_payoff"] == pytest.approx(10.0, abs=1e-6)
        assert sol["strategy"] == pytest.approx([1.0, 0.0], abs=1e-9)
        assert "duals" in sol

    def test_exploiter_without_payoffs_is_information_error(
            self, victim_only_game, tmp_path):
        assert main(["solve", str(victim_only_game), "--player", "exploiter",
                     "--out", str(tmp_path / "sol.json")]) == 3

    def test_bad_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["solve", str(bad), "--out", str(tmp_path / "s.json")]) == 2

    def test_markov_both(self, markov_game, tmp_path):
        out = tmp_path / "sol.json"
        assert main(["solve", str(markov_game), "--out", str(out)]) == 0
        sols = json.loads(out.read_text())
        assert [s["player"] for s in sols] == ["victim", "exploiter"]
        assert sols[0]["guaranteed_payoff"] == pytest.approx(20.0, abs=1e-6)

    def test_information_firewall_bytes(self, example_game, victim_only_game,
                                        tmp_path):
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        assert main(["solve", str(example_game), "--player", "victim",
                     "--out", str(out_a)]) == 0
        assert main(["solve", str(victim_only_game), "--player", "victim",
                     "--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()


class TestVerify:
    def test_round_trip(self, example_game, tmp_path):
        out = tmp_path / "sol.json"
        assert main(["solve", str(example_game), "--out", str(out)]) == 0
        assert main(["verify", str(example_game), str(out)]) == 0

    def test_markov_round_trip(self, markov_game, tmp_path):
        out = tmp_path / "sol.json"
        assert main(["solve", str(markov_game), "--out", str(out)]) == 0
        assert main(["verify", str(markov_game), str(out)]) == 0

    def test_insecure_strategy_fails(self, example_game, tmp_path):
        sol = tmp_path / "sol.json"
        sol.write_text(json.dumps({
            "player": "victim", "strategy": [0.0, 0.0, 1.0],
            "guaranteed_payoff": 10.0}))
        assert main(["verify", str(example_game), str(sol)]) == 5

    def test_perturbed_markov_policy_fails(self, markov_game, tmp_path):
        out = tmp_path / "sol.json"
        assert main(["solve", str(markov_game), "--player", "victim",
                     "--out", str(out)]) == 0
        sol = json.loads(out.read_text())
        stage = np.array(sol["policy"][0][0])
        # Move 0.1 mass onto the trap row at one stage.
        stage = stage * 0.9
        stage[2] += 0.1
        sol["policy"][0][0] = stage.tolist()
        out.write_text(json.dumps(sol))
        assert main(["verify", str(markov_game), str(out)]) == 5


class TestBench:
    def test_block_sweep(self, tmp_path):
        out = tmp_path / "rows.csv"
        assert main(["bench", "block", "--r-max", "2", "--states", "2",
                     "--horizon", "2", "--out", str(out)]) == 0
        rows = read_csv(out)
        assert [row.size_param for row in rows] == [1, 2]

    def test_random_sweep(self, tmp_path):
        out = tmp_path / "rows.csv"
        assert main(["bench", "random", "--sizes", "2,3", "--seeds", "0,1",
                     "--states", "2", "--horizon", "2", "--out", str(out)]) == 0
        assert len(read_csv(out)) == 4

    def test_empty_sweep_writes_header_only(self, tmp_path):
        out = tmp_path / "rows.csv"
        assert main(["bench", "block", "--r-max", "0", "--out", str(out)]) == 0
        assert out.read_text().splitlines()[0].startswith("kind,")
        assert read_csv(out) == []

    def test_bad_params(self, tmp_path):
        assert main(["bench", "random", "--sizes", "2;3",
                     "--out", str(tmp_path / "x.csv")]) == 2


class TestOracle:
    def test_example_game_agrees(self, example_game):
        assert main(["oracle", str(example_game)]) == 0

    def test_zero_game(self, tmp_path):
        path = tmp_path / "zero.json"
        save_game(BimatrixGame(np.zeros((2, 2)), np.zeros((2, 2))), path)
        assert main(["oracle", str(path)]) == 0

    def test_large_game_exceeds_caps(self, tmp_path):
        path = tmp_path / "big.json"
        rng = np.random.default_rng(0)
        save_game(BimatrixGame(rng.normal(size=(100, 100))), path)
        assert main(["oracle", str(path)]) == 6

    def test_tiny_markov_game(self, tmp_path):
        path = tmp_path / "markov.json"
        save_game(gen_random_markov(2, S=2, H=2, seed=3), path)
        assert main(["oracle", str(path)]) == 0

    def test_large_markov_game_exceeds_caps(self, tmp_path):
        path = tmp_path / "markov_big.json"
        save_game(gen_random_markov(3, S=4, H=6, seed=3), path)
        assert main(["oracle", str(path)]) == 6
