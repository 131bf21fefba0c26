import json

import pytest

from app.main import main
from app.modules.generators.instances import grid_matrix
from app.modules.oracle import ryser_permanent
from app.modules.shared.errors import ExitCode
from app.modules.tensor_model.tensor_io import serialize_tensor

IDENTITY4 = "tensor 2 4 4\n1 1 1\n2 2 1\n3 3 1\n4 4 1\n"
ORDER3 = "tensor 3 2 2 2\n1 1 1 1\n2 2 2 1\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_permanent_of_identity(capsys, tensor_file):
    path = tensor_file("id4.tns", IDENTITY4)
    code, out, _ = run(capsys, "compute", "--fn", "perm", "--input", path)
    assert code == ExitCode.OK
    assert out == "1\n"


def test_compute_with_oracle(capsys, tensor_file):
    grid = grid_matrix(3)
    path = tensor_file("grid.tns", serialize_tensor(grid))
    code, out, _ = run(capsys, "compute", "--fn", "perm", "--input", path, "--oracle")
    assert code == ExitCode.OK
    assert out.splitlines() == [str(ryser_permanent(grid)), "oracle: match"]


def test_oracle_mismatch_exit_code(capsys, tensor_file, monkeypatch):
    monkeypatch.setattr("app.commands.compute.reference_value", lambda function, tensor: 0)
    path = tensor_file("id4.tns", IDENTITY4)
    code, _, err = run(capsys, "compute", "--fn", "det", "--input", path, "--oracle")
    assert code == ExitCode.ORACLE_MISMATCH
    assert "differs from oracle value 0" in err


def test_unexpected_failure_exit_code(capsys, tensor_file, monkeypatch):
    def broken(*args, **kwargs):
        raise RuntimeError("table overflow")

    monkeypatch.setattr("app.modules.engines.dispatcher.run_generalized", broken)
    path = tensor_file("id4.tns", IDENTITY4)
    code, out, _ = run(capsys, "compute", "--fn", "perm", "--input", path)
    assert code == ExitCode.INTERNAL == 1
    assert out == ""


def test_hyperdeterminant_on_odd_order(capsys, tensor_file):
    path = tensor_file("cube.tns", ORDER3)
    code, out, err = run(capsys, "compute", "--fn", "hyperdet", "--input", path)
    assert code == ExitCode.USAGE
    assert out == ""
    assert "error: hyperdeterminant requires even tensor order" in err


def test_disc_and_mdperm(capsys, tensor_file):
    path = tensor_file("cube.tns", ORDER3)
    assert run(capsys, "compute", "--fn", "disc", "--input", path)[1] == "1\n"
    assert run(capsys, "compute", "--fn", "mdperm", "--input", path, "--oracle")[1] == "1\noracle: match\n"


def test_bad_tensor_file(capsys, tensor_file):
    path = tensor_file("bad.tns", "tensor 2 2 2\n1 1 0\n")
    code, _, err = run(capsys, "compute", "--fn", "perm", "--input", path)
    assert code == ExitCode.INPUT_FORMAT
    assert "line 2" in err


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run(capsys, "compute", "--fn", "perm", "--input", str(tmp_path / "absent.tns"))
    assert code == ExitCode.USAGE
    assert "cannot read" in err


def test_usage_errors(capsys, tensor_file):
    path = tensor_file("id4.tns", IDENTITY4)
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--fn", "trace", "--input", path])
    assert exc.value.code == ExitCode.USAGE
    assert "error:" in capsys.readouterr().err
    code, _, _ = run(capsys, "--threads", "0", "compute", "--fn", "perm", "--input", path)
    assert code == ExitCode.USAGE


def test_width_cap_exit_code(capsys, tensor_file, monkeypatch):
    from app.config.settings import settings

    monkeypatch.setattr(settings, "MAX_BAG_SIZE", 1)
    path = tensor_file("id4.tns", IDENTITY4)
    code, _, err = run(capsys, "compute", "--fn", "perm", "--input", path)
    assert code == ExitCode.LIMIT
    assert "cap" in err


def test_stats_file(capsys, tensor_file, tmp_path):
    path = tensor_file("id4.tns", IDENTITY4)
    stats_path = tmp_path / "stats.json"
    code, _, _ = run(capsys, "--threads", "2", "compute", "--fn", "det", "--input", path, "--stats", str(stats_path))
    assert code == ExitCode.OK
    stats = json.loads(stats_path.read_text())
    assert set(stats) == {"function", "n", "order", "width_multi_part", "nodes", "ring_mults", "result"}
    assert stats["function"] == "det"
    assert stats["n"] == 4
    assert stats["result"] == "1"


def test_gen_band_then_compute(capsys, tmp_path):
    path = tmp_path / "band.tns"
    code, _, _ = run(capsys, "gen", "band", "--n", "7", "--w1", "1", "--w2", "2", "--seed", "3", "-o", str(path))
    assert code == ExitCode.OK
    text = path.read_text()
    assert text.startswith("c gen band n=7 w1=1 w2=2")

    code, out, _ = run(capsys, "compute", "--fn", "det", "--input", str(path), "--oracle")
    assert code == ExitCode.OK
    value, verdict = out.splitlines()
    assert verdict == "oracle: match"


def test_gen_requires_size(capsys):
    code, _, err = run(capsys, "gen", "band")
    assert code == ExitCode.USAGE
    assert "--n" in err


def test_gen_subset_sum_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "subset-sum", "--a", "1,-1", "--delta", "1")
    assert code == ExitCode.OK
    lines = out.splitlines()
    assert lines[0].startswith("c gen subset-sum")
    assert lines[1] == "zonotopes 3"
    assert lines.count("z 2") == 2
    assert lines[-2:] == ["z 1", "0 -1 1"]


def test_decomp_and_supplied_decomposition(capsys, tmp_path):
    band = tmp_path / "band.tns"
    run(capsys, "gen", "band", "--n", "6", "-o", str(band))
    gr, td = tmp_path / "band.gr", tmp_path / "band.td"

    code, out, _ = run(capsys, "decomp", "--input", str(band), "--graph", "symmetrized", "--gr", str(gr), "--td", str(td))
    assert code == ExitCode.OK
    assert out == "width 1 2\n"
    assert gr.read_text().splitlines()[0] == "p tw 6 5"
    assert td.read_text().startswith("s td ")

    _, with_td, _ = run(capsys, "compute", "--fn", "det", "--input", str(band), "--td", str(td), "--td-graph", "symmetrized")
    _, heuristic, _ = run(capsys, "compute", "--fn", "det", "--input", str(band))
    assert with_td == heuristic


def test_compute_with_column_decomposition(capsys, tmp_path):
    band = tmp_path / "band.tns"
    run(capsys, "gen", "band", "--n", "6", "--w1", "2", "--w2", "0", "-o", str(band))
    td = tmp_path / "band.td"
    run(capsys, "decomp", "--input", str(band), "--graph", "column", "--td", str(td))
    code, out, _ = run(
        capsys, "compute", "--fn", "perm", "--input", str(band), "--td", str(td), "--td-graph", "column", "--oracle"
    )
    assert code == ExitCode.OK
    assert out.endswith("oracle: match\n")


def test_broken_decomposition_file(capsys, tensor_file):
    path = tensor_file("id4.tns", IDENTITY4)
    td = tensor_file("broken.td", "s td 1 1 8\nb 1 1\n")
    code, _, err = run(capsys, "compute", "--fn", "perm", "--input", path, "--td", td)
    assert code == ExitCode.INPUT_FORMAT
    assert "error:" in err


def test_mvol_few_directions(capsys, tmp_path):
    path = tmp_path / "few.zon"
    stats_path = tmp_path / "stats.json"
    run(capsys, "gen", "few-directions", "--a", "1,2,3", "--b", "1,1,1", "-o", str(path))
    code, out, _ = run(capsys, "mvol", "--input", str(path), "--oracle", "--stats", str(stats_path))
    assert code == ExitCode.OK
    assert out.splitlines() == ["17", "oracle: match"]
    stats = json.loads(stats_path.read_text())
    assert stats["function"] == "mvol"
    assert stats["result"] == "17"
    assert stats["n"] == 3


def test_mvol_errors(capsys, tmp_path):
    subset_sum = tmp_path / "ss.zon"
    run(capsys, "gen", "subset-sum", "--a", "1,2", "-o", str(subset_sum))
    code, _, err = run(capsys, "mvol", "--input", str(subset_sum))
    assert code == ExitCode.INPUT_FORMAT
    assert "coefficient" in err

    few = tmp_path / "few.zon"
    run(capsys, "gen", "few-directions", "--a", "1,2,3", "--b", "1,1,1", "-o", str(few))
    code, _, _ = run(capsys, "mvol", "--input", str(few), "--max-extra-directions", "0")
    assert code == ExitCode.LIMIT


def test_bench_small_sizes(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "8,16,32", "--fn", "det")
    assert code == ExitCode.OK
    lines = out.splitlines()
    assert [line.split()[0] for line in lines[:3]] == ["n=8", "n=16", "n=32"]
    assert sum(line.startswith("ratio") for line in lines) == 2


def test_bench_rejects_bad_sizes(capsys):
    code, _, _ = run(capsys, "bench", "--sizes", "0")
    assert code == ExitCode.USAGE
