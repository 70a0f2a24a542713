import csv
import io
import json

import pytest

from secantplanes import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coeffs_symbolic(capsys):
    code, out, _ = run(capsys, "coeffs", "--d", "3")
    assert code == 0
    assert "Pbeta    -2*m + 12" in out


def test_coeffs_numeric_json(capsys):
    code, out, _ = run(capsys, "coeffs", "--d", "2", "--g", "8", "--m", "9", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == cli.SCHEMA
    assert {r["name"]: r["value"] for r in doc["rows"]}["Pc"] == "-20/1"


def test_coeffs_times_factorial(capsys):
    _, out, _ = run(capsys, "coeffs", "--d", "3", "--times-factorial", "--format", "csv")
    rows = {r["name"]: r["polynomial"] for r in csv.DictReader(io.StringIO(out))}
    assert rows["Pgamma"] == "-3*m + 28"


@pytest.mark.parametrize("argv", [
    ["coeffs", "--d", "0"],
    ["coeffs", "--d", "2", "--g", "8"],
    ["table", "virtual_slopes", "--a", "6"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_verify_graphs(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "graphs", "--d-max", "6")
    assert code == 0
    assert "false" not in out


def test_verify_oracle_family(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--d-max", "4", "--mode", "family",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["failures"] == []


def test_verify_failure_manifest(capsys, monkeypatch):
    from secantplanes import verify

    def broken(bounds):
        return [verify.CheckResult("series", "forced", False, 0.0, {"why": "test"})]

    monkeypatch.setitem(verify.SUITE_FUNCS, "series", broken)
    code, _, err = run(capsys, "verify", "--suite", "series")
    assert code == 1
    manifest = json.loads(err)
    assert manifest["schema"] == cli.SCHEMA
    assert manifest["failures"][0]["name"] == "forced"


def test_table_slopes(capsys):
    code, out, _ = run(capsys, "table", "slopes", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    assert rows[1]["bn_margin"] == "693/12389"


def test_table_virtual_slopes(capsys):
    code, out, _ = run(capsys, "table", "virtual_slopes", "--a", "2..5", "--d-max", "10",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 40
    assert {r["status"] for r in doc["rows"]} == {"match", "vanishing"}


def test_table_xy_taylor(capsys):
    _, out, _ = run(capsys, "table", "xy_taylor", "--order", "10", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["Y"] for r in rows[2:4]] == ["1/2", "-10/3"]
    assert all(r["X"] == r["X_closed"] for r in rows)


def test_output_is_byte_stable(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    for _ in range(2):
        assert cli.main(["table", "slopes", "--format", "json", "--output", "a.json"]) == 0
        first = (tmp_path / "a.json").read_bytes()
        assert cli.main(["table", "slopes", "--format", "json", "--output", "b.json"]) == 0
        assert (tmp_path / "b.json").read_bytes() == first
    assert b"\r\n" not in first


def test_env_default_output(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    assert cli.main(["table", "xy_taylor", "--format", "csv"]) == 0
    assert (tmp_path / "xy_taylor.csv").read_text().startswith("n,X,Y")


def test_unwritable_output(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, _ = run(capsys, "table", "slopes", "--output", str(blocker / "sub" / "t.csv"))
    assert code == 2
