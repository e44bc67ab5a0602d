import csv
import io
from pathlib import Path

import pytest

from riumapf.cli import EXIT_ERROR, EXIT_OK, EXIT_UNSOLVED, main
from riumapf.bench import RunRecord
from riumapf.instance import read_plan
from riumapf.maps import format_edge_list

from conftest import claw, cycle, path

ROOT = Path(__file__).resolve().parents[1]
EMPTY = ROOT / "maps" / "empty-16-16.map"


def write_graph(tmp_path, graph, name="g.txt"):
    p = tmp_path / name
    p.write_text(format_edge_list(graph))
    return p


def write_inst(tmp_path, r, S, T, name="i.txt"):
    p = tmp_path / name
    p.write_text(f"r {r}\nn {len(S)}\n" + "".join(f"s {v}\n" for v in S) + "".join(f"t {v}\n" for v in T))
    return p


def record(out: str) -> dict:
    (row,) = list(csv.reader(io.StringIO(out)))
    return dict(zip(RunRecord.columns(), row))


@pytest.mark.parametrize("algo", ["pibt", "lacam", "exact"])
def test_solve_start_equals_target(tmp_path, capsys, algo):
    g = write_graph(tmp_path, path(5))
    inst = write_inst(tmp_path, 1, (0, 4), (0, 4))
    out = tmp_path / "plan.txt"
    code = main(["solve", "--map", str(g), "--instance", str(inst), "--algo", algo, "--out", str(out)])
    assert code == EXIT_OK
    rec = record(capsys.readouterr().out)
    assert rec["solved"] == "true" and rec["makespan"] == "0"
    assert read_plan(out) == [(0, 4)]


def test_solve_infeasible_exits_2(tmp_path, capsys):
    g = write_graph(tmp_path, claw())
    inst = write_inst(tmp_path, 1, (1, 2), (1, 3))
    assert main(["solve", "--map", str(g), "--instance", str(inst), "--algo", "exact"]) == EXIT_UNSOLVED
    cap = capsys.readouterr()
    assert "infeasible" in cap.err
    rec = record(cap.out)
    assert rec["solved"] == "false" and rec["makespan"] == "" and rec["suboptimality"] == ""


def test_solve_grid_then_validate(tmp_path, capsys):
    inst = tmp_path / "i.txt"
    assert main(["gen", "--map", str(EMPTY), "--n", "10", "--r", "1", "--seed", "3",
                 "--out", str(inst)]) == EXIT_OK
    plan = tmp_path / "plan.txt"
    assert main(["solve", "--map", str(EMPTY), "--instance", str(inst), "--algo", "lacam",
                 "--out", str(plan)]) == EXIT_OK
    rec = record(capsys.readouterr().out)
    assert rec["solved"] == "true" and float(rec["time_ms"]) < 60_000
    assert main(["validate", "--map", str(EMPTY), "--instance", str(inst), "--plan", str(plan)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "ok"


def test_validate_rejects_bad_plan(tmp_path, capsys):
    g = write_graph(tmp_path, path(5))
    inst = write_inst(tmp_path, 1, (0,), (4,))
    plan = tmp_path / "plan.txt"
    plan.write_text("0\n2\n4\n")
    assert main(["validate", "--map", str(g), "--instance", str(inst), "--plan", str(plan)]) == EXIT_UNSOLVED
    assert capsys.readouterr().out.startswith("invalid")


def test_r_flag_overrides_file(tmp_path, capsys):
    g = write_graph(tmp_path, path(4))
    inst = write_inst(tmp_path, 1, (0, 2), (0, 2))
    # with r=2 the start set is no longer independent
    assert main(["solve", "--map", str(g), "--instance", str(inst), "--r", "2"]) == EXIT_ERROR


def test_usage_errors_exit_1(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--map", "x"])
    assert exc.value.code == EXIT_ERROR
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--map", str(EMPTY), "--n", "1", "--r", "1", "--algo", "tswap"])
    assert exc.value.code == EXIT_ERROR
    assert main(["solve", "--map", str(tmp_path / "missing.map"), "--instance", "nope"]) == EXIT_ERROR


def test_kernelize_and_export(tmp_path, capsys):
    edges = [(0, 1), (1, 2), (2, 0)] + [(i, i + 1) for i in range(2, 12)]
    from riumapf.graph import Graph
    g = write_graph(tmp_path, Graph.from_edges(13, edges))
    inst = write_inst(tmp_path, 1, (0,), (1,))
    kern = tmp_path / "k.txt"
    assert main(["kernelize", "--map", str(g), "--instance", str(inst), "--out", str(kern)]) == EXIT_OK
    text = kern.read_text()
    assert any(line.startswith("b ") for line in text.splitlines())
    lp1, lp2 = tmp_path / "a.lp", tmp_path / "b.lp"
    for out in (lp1, lp2):
        assert main(["export-lp", "--map", str(kern), "--instance", str(kern), "--tau", "3",
                     "--out", str(out)]) == EXIT_OK
    assert lp1.read_bytes() == lp2.read_bytes()
    assert lp1.read_bytes().startswith(b"Minimize")


def test_trace_command(tmp_path, capsys):
    g = write_graph(tmp_path, cycle(6))
    inst = write_inst(tmp_path, 1, (0, 3), (1, 4))
    plan = tmp_path / "plan.txt"
    plan.write_text("0 3\n1 4\n")
    frames = tmp_path / "frames"
    assert main(["trace", "--map", str(g), "--instance", str(inst), "--plan", str(plan),
                 "--out", str(frames)]) == EXIT_OK
    assert len(list(frames.glob("*.svg"))) == 2
    plan.write_text("0 3\n0 1\n")
    assert main(["trace", "--map", str(g), "--instance", str(inst), "--plan", str(plan),
                 "--out", str(frames)]) == EXIT_ERROR
