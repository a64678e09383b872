import json

import pandas as pd
import pytest

from main import main
from src.utils.serialization import write_json


@pytest.fixture
def solved_basis(tmp_path, data_dir):
    out = tmp_path / "basis.solution.json"
    assert main(["solve", str(data_dir / "basis_2d.json"), "-o", str(out)]) == 0
    return out


def test_solve_basis_lists_three_solutions(capsys, solved_basis):
    document = json.loads(solved_basis.read_text(encoding="utf-8"))
    assert document["status"] == "solved"
    assert len(document["solutions"]) == 3
    assert {tuple(s["v"]) for s in document["solutions"]} == {("1", "0"), ("1", "1"), ("0", "1")}
    assert "Status: solved" in capsys.readouterr().out


def test_solve_writes_csv_report(tmp_path, data_dir):
    csv = tmp_path / "reports" / "basis.csv"
    assert main(["solve", str(data_dir / "basis_2d.json"), "--csv", str(csv)]) == 0
    frame = pd.read_csv(csv)
    assert len(frame) == 6
    assert frame["satisfied"].all()


def test_solve_infeasible_instance_exits_two(tmp_path, data_dir, capsys):
    out = tmp_path / "extra.json"
    assert main(["solve", str(data_dir / "basis_extra_2d.json"), "-o", str(out)]) == 2
    assert json.loads(out.read_text(encoding="utf-8"))["status"] == "infeasible"
    assert "existence is not guaranteed" in capsys.readouterr().out


def test_solve_malformed_instance_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    write_json({"dimension": 2, "families": [{"name": "M0", "elements": [{"f": [0, 0], "y": 1}]}]}, bad)
    assert main(["solve", str(bad)]) == 1
    assert "Error: family 'M0' element 0: covector f is zero" in capsys.readouterr().out


def test_solve_guards(data_dir):
    assert main(["solve", str(data_dir / "basis_3d.json"), "--method", "exact2d"]) == 1
    assert main(["solve", str(data_dir / "basis_2d.json"), "--mode", "classical"]) == 1


def test_solve_classical_file(data_dir):
    assert main(["solve", str(data_dir / "classical_symmetric.json"), "--mode", "classical"]) == 0


def test_verify_own_output(data_dir, solved_basis, capsys):
    assert main(["verify", str(data_dir / "basis_2d.json"), str(solved_basis)]) == 0
    out = capsys.readouterr().out
    assert "NOT satisfied" not in out
    assert "stored masses reproduced: no" not in out


def test_verify_rejects_wrong_x(tmp_path, data_dir):
    candidate = tmp_path / "off.json"
    write_json({"mode": "hyperplane", "e": ["1", "1"], "x": "11/10"}, candidate)
    assert main(["verify", str(data_dir / "basis_2d.json"), str(candidate)]) == 2


def test_verify_any_x_on_the_kernel_line(tmp_path, data_dir):
    candidate = tmp_path / "kernel.json"
    write_json({"mode": "hyperplane", "e": ["0", "1"], "x": "5"}, candidate)
    assert main(["verify", str(data_dir / "parallel_pair_2d.json"), str(candidate)]) == 0


def test_verify_mode_mismatch_exits_one(tmp_path, data_dir):
    candidate = tmp_path / "classical.json"
    write_json({"mode": "points", "f": ["1", "0"], "y": "1"}, candidate)
    assert main(["verify", str(data_dir / "basis_2d.json"), str(candidate)]) == 1


def test_gen_is_reproducible(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    args = ["gen", "--dim", "3", "--families", "3", "--per-family", "5", "--seed", "9"]
    assert main(args + ["-o", str(first)]) == 0
    assert main(args + ["-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_obstruction_report(capsys):
    assert main(["obstruction", "--m", "1", "--l", "2", "--trunc", "2", "--wE", "1,a"]) == 0
    out = capsys.readouterr().out
    assert "e(H)^2 = a*T" in out
    assert "closed form agrees: yes" in out
    assert "e(H)^2 vanishes: no" in out
    assert "applicable (l >= m and w_(l-m)(-E) != 0): yes" in out


def test_obstruction_bad_class_exits_one(capsys):
    assert main(["obstruction", "--m", "1", "--l", "2", "--trunc", "2", "--wE", "1,b"]) == 1
    assert "Error:" in capsys.readouterr().out


def test_plot_writes_svg(tmp_path, data_dir, solved_basis):
    figure = tmp_path / "figs" / "basis.svg"
    args = ["plot", str(data_dir / "basis_2d.json"), str(solved_basis), "--out", str(figure), "--index", "1"]
    assert main(args) == 0
    assert "solution-line" in figure.read_text(encoding="utf-8")


def test_plot_rejects_three_dimensions(tmp_path, data_dir):
    candidate = tmp_path / "three.json"
    write_json({"mode": "hyperplane", "e": ["1", "0", "0"], "x": "1"}, candidate)
    args = ["plot", str(data_dir / "basis_3d.json"), str(candidate), "--out", str(tmp_path / "x.svg")]
    assert main(args) == 1


@pytest.mark.slow
def test_sweep_solution_verifies(tmp_path, data_dir):
    out = tmp_path / "basis_3d.solution.json"
    assert main(["solve", str(data_dir / "basis_3d.json"), "-o", str(out)]) == 0
    solution = json.loads(out.read_text(encoding="utf-8"))["solutions"][0]
    assert solution["method"] == "sweep"
    assert solution["certificate"]["kind"] == "float"
    assert main(["verify", str(data_dir / "basis_3d.json"), str(out)]) == 0


def test_sweep_falls_back_to_whole_line_directions(monkeypatch, data_dir):
    from src.geometry.core import Direction, HopfPoint
    from src.pipelines import commands
    from src.solvers.instance import BestEffort, Method, SweepConfig
    from src.utils.serialization import load_instance

    def no_certificate(instance, cfg):
        return BestEffort(direction=Direction.of((1, 0)), gap=1.0)

    monkeypatch.setattr(commands, "solve_sweep", no_certificate)
    instance = load_instance(data_dir / "parallel_pair_2d.json")
    solutions, best = commands.run_solver(instance, "sweep", SweepConfig())
    assert best is None
    assert solutions[0].method is Method.DEGENERATE
    assert solutions[0].p == HopfPoint.of((0, 1), 0)


def test_sweep_without_fallback_reports_best_effort(monkeypatch, data_dir):
    from src.geometry.core import Direction
    from src.pipelines import commands
    from src.solvers.instance import BestEffort, SweepConfig
    from src.utils.serialization import load_instance

    monkeypatch.setattr(
        commands, "solve_sweep", lambda instance, cfg: BestEffort(direction=Direction.of((1, 0)), gap=0.5)
    )
    instance = load_instance(data_dir / "basis_extra_2d.json")
    solutions, best = commands.run_solver(instance, "sweep", SweepConfig())
    assert solutions == []
    assert best.gap == 0.5


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["hyperplane", "points"])
@pytest.mark.parametrize("dim", [2, 3])
def test_generated_instances_honor_the_exit_code_contract(tmp_path, kind, dim):
    for seed in range(5):
        for families in (dim, dim + 1):
            instance = tmp_path / f"{kind}_{dim}_{families}_{seed}.json"
            solved = tmp_path / f"{kind}_{dim}_{families}_{seed}.solution.json"
            gen = ["gen", "--dim", str(dim), "--families", str(families), "--per-family", "3"]
            assert main(gen + ["--seed", str(seed), "--kind", kind, "-o", str(instance)]) == 0

            code = main(["solve", str(instance), "-o", str(solved)])
            status = json.loads(solved.read_text(encoding="utf-8"))["status"]
            assert code in (0, 2)
            assert (code == 0) == (status == "solved"), (seed, families, status)
            if dim == 2 and families <= dim:
                assert code == 0, (seed, families)
            if code == 0:
                assert main(["verify", str(instance), str(solved)]) == 0, (seed, families)
