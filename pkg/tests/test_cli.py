import csv
import io
import json

from specpair.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_scale4(capsys):
    code, out, _ = run(capsys, "validate", "--spec", "scale4")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["degenerate"] is False


def test_validate_middlethird_fails(capsys):
    code, out, _ = run(capsys, "validate", "--spec", "middlethird")
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    names = {c["name"] for c in payload["checks"] if not c["passed"]}
    assert "hadamard_unitarity" in names


def test_pair_scale4(capsys):
    code, out, _ = run(capsys, "pair", "--spec", "scale4", "--box", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["orthogonal"] is True
    assert payload["tiling"]["ok"] is True
    assert payload["tiling"]["method"] == "exact"
    assert payload["max_off_diagonal"] == 0.0


def test_measure_export(capsys):
    code, out, _ = run(capsys, "measure", "--spec", "scale4",
                       "--quadrature-depth", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8
    assert {r["weight"] for r in rows} == {"0.125"}
    assert "0.65625" in {r["x0"] for r in rows}  # 1/2 + 1/8 + 1/32


def test_transform_single_point(capsys):
    code, out, _ = run(capsys, "transform", "--spec", "scale4", "--s", "1")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["re"]) == 0.0 and float(row["im"]) == 0.0
    assert row["backend"] == "product"


def test_transform_grid_both_backends(capsys):
    code, out, _ = run(capsys, "transform", "--spec", "scale4",
                       "--grid=-2:2:9", "--backend", "both")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9
    assert all(float(r["discrepancy"]) < 1e-4 for r in rows)


def test_transform_requires_target(capsys):
    code, _, err = run(capsys, "transform", "--spec", "scale4")
    assert code == 2
    assert "transform needs" in err


def test_spectrum_table(capsys):
    code, out, _ = run(capsys, "spectrum", "--spec", "scale4", "--s", "2",
                       "--enum-depth", "8", "--product-depth", "30")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["depth"] for r in rows] == [str(d) for d in range(9)]
    final = float(rows[-1]["sigma"])
    assert 0.999 < final <= 1 + 1e-9
    assert all(float(r["increment"]) >= 0 for r in rows)


def test_spectrum_frequency_list(capsys):
    code, out, _ = run(capsys, "spectrum", "--spec", "scale4",
                       "--enum-depth", "2", "--frequencies")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["xi0"] for r in rows} == {"0", "1", "4", "5"}
    assert {r["word"] for r in rows} == {"00", "01", "10", "11"}


def test_cuntz_scale4(capsys):
    code, out, _ = run(capsys, "cuntz", "--spec", "scale4", "--box", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["failures"] == []
    assert payload["relations"]["range_orthogonality"] == 0.0


def test_cuntz_middlethird_fails(capsys):
    code, out, _ = run(capsys, "cuntz", "--spec", "middlethird")
    assert code == 1
    payload = json.loads(out)
    assert any("completeness" in f for f in payload["failures"])
    assert any("validation" in f for f in payload["failures"])


def test_unknown_spec_is_usage_error(capsys):
    code, _, err = run(capsys, "validate", "--spec", "nonexistent")
    assert code == 2
    assert "error" in err


def test_outputs_are_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code = main(["transform", "--spec", "scale4", "--grid=-4:4:17",
                     "--out", str(path)])
        assert code == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_written_file_matches_stdout(tmp_path, capsys):
    out_path = tmp_path / "sigma.csv"
    code = main(["spectrum", "--spec", "scale4", "--s", "2",
                 "--enum-depth", "4", "--out", str(out_path)])
    assert code == 0
    capsys.readouterr()
    code2, out, _ = run(capsys, "spectrum", "--spec", "scale4", "--s", "2",
                        "--enum-depth", "4")
    assert code2 == 0
    assert out_path.read_bytes().decode("utf-8") == out


def test_vector_flag_parses_rationals(capsys):
    code, out, _ = run(capsys, "transform", "--spec", "scale4x2",
                       "--s", "1/2,3/4")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["t0"]) == 0.5 and float(row["t1"]) == 0.75
