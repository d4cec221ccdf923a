import subprocess
import sys

import numpy as np
import pytest

from viserplots import CSV_HEADER, SchemaError, build_figure, read_series, render
from viserplots.cli import main

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _bench(tmp_path, *args):
    out = tmp_path / "rows.csv"
    subprocess.run([sys.executable, "-m", "viser.cli", "bench", *args,
                    "--out", str(out)], check=True, capture_output=True)
    return out


@pytest.fixture(scope="module")
def block_csv(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("block")
    return _bench(tmp, "block", "--r-max", "6", "--states", "4",
                  "--horizon", "10")


@pytest.fixture(scope="module")
def random_csv(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("random")
    return _bench(tmp, "random", "--sizes", "2,3", "--seeds", "0,1",
                  "--states", "2", "--horizon", "2")


def test_block_render_is_deterministic(block_csv, tmp_path):
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    render(block_csv, a, "block")
    render(block_csv, b, "block")
    data = a.read_bytes()
    assert data.startswith(PNG_MAGIC)
    assert data == b.read_bytes()


def test_block_payoff_matches_analytic(block_csv):
    series = read_series(block_csv)
    assert series.size.size == 6
    assert np.all(np.isfinite(series.analytic_v))
    assert np.max(np.abs(series.payoff_v - series.analytic_v)) <= 1e-5
    assert np.max(np.abs(series.p_v - series.analytic_v)) <= 1e-5


def test_block_panels_include_analytic_curves(block_csv):
    fig = build_figure(read_series(block_csv), "block")
    victim_ax, exploiter_ax, time_ax = fig.axes
    assert len(victim_ax.lines) == 3
    assert len(exploiter_ax.lines) == 3
    assert len(time_ax.lines) == 2


def test_random_panels_skip_analytic_curves(random_csv):
    fig = build_figure(read_series(random_csv), "random")
    victim_ax, exploiter_ax, _ = fig.axes
    assert len(victim_ax.lines) == 2
    assert len(exploiter_ax.lines) == 2


def test_rows_sorted_by_size(tmp_path):
    csv_path = tmp_path / "rows.csv"
    lines = [",".join(CSV_HEADER),
             "random,4,64,0,0,0,0,,,0.1,0.2",
             "random,2,16,0,0,0,0,,,0.3,0.4"]
    csv_path.write_text("\n".join(lines) + "\n")
    series = read_series(csv_path)
    assert series.size.tolist() == [2.0, 4.0]
    assert series.time_v.tolist() == [0.3, 0.1]


def test_header_only_csv_renders_empty_axes(tmp_path):
    csv_path = tmp_path / "rows.csv"
    csv_path.write_text(",".join(CSV_HEADER) + "\n")
    out = tmp_path / "empty.png"
    assert main([str(csv_path), str(out), "--kind", "block"]) == 0
    assert out.read_bytes().startswith(PNG_MAGIC)


def test_schema_mismatch_is_rejected(tmp_path):
    csv_path = tmp_path / "rows.csv"
    csv_path.write_text("kind,size_param\nblock,1\n")
    assert main([str(csv_path), str(tmp_path / "x.png"),
                 "--kind", "block"]) == 2
    with pytest.raises(SchemaError):
        read_series(csv_path)


def test_missing_file_is_an_error(tmp_path):
    assert main([str(tmp_path / "nope.csv"), str(tmp_path / "x.png"),
                 "--kind", "random"]) == 2


def test_non_numeric_cell_is_rejected(tmp_path):
    csv_path = tmp_path / "rows.csv"
    csv_path.write_text(",".join(CSV_HEADER) + "\n" +
                        "block,1,16,ten,0,0,0,,,0.1,0.2\n")
    with pytest.raises(SchemaError):
        read_series(csv_path)
