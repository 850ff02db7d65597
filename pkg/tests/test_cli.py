import json
import subprocess
import sys

import pytest

from braidkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_d4_at_g3(capsys):
    code, out, _ = run(capsys, "analyze", "--q", "1/3,2/3;1,1/3")
    assert code == 0
    assert "standard: yes, Cartan: A_2, |Δ_+|=3, dim=27" in out
    assert "m-matrix: 2 1; 1 2" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--q", "1/4,1/4;1,3/4", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["schema_version"] == 1
    assert data["cartan_type"] == "G2"
    assert data["dimension"] == 4096
    assert len(data["positive_roots"]) == 6


def test_analyze_dot(capsys):
    code, out, _ = run(capsys, "analyze", "--q", "1/5,4/5;1,1/2", "--format", "dot")
    assert code == 0
    assert out.startswith("graph D {")
    assert 'label="ζ_5^4"' in out


def test_analyze_not_standard(capsys):
    code, out, _ = run(capsys, "analyze", "--q", "1,1/3;1,1/5")
    assert code == 0
    assert "standard: no" in out
    assert "m-matrix: 2 -; 4 2" in out


def test_non_square_is_input_error(capsys):
    code, _, err = run(capsys, "analyze", "--q", "1/3,2/3;1")
    assert code == 2
    assert "not square" in err


def test_malformed_entry_names_position(capsys):
    code, _, err = run(capsys, "analyze", "--q", "1/3,2/3;1,abc")
    assert code == 2
    assert "row 2, column 2" in err


def test_overflow_exit_code(capsys):
    code, out, _ = run(capsys, "analyze", "--q", "1/5,4/5;1,1/2", "--max-points", "1")
    assert code == 3
    assert "Indeterminate" in out


def test_env_var_caps_points(capsys, monkeypatch):
    monkeypatch.setenv("BRAIDKIT_MAX_POINTS", "1")
    code, out, _ = run(capsys, "analyze", "--q", "1/5,4/5;1,1/2")
    assert code == 3 and "Indeterminate" in out
    code, _, _ = run(capsys, "analyze", "--q", "1/5,4/5;1,1/2", "--max-points", "100")
    assert code == 0
    monkeypatch.setenv("BRAIDKIT_MAX_POINTS", "zero")
    code, _, err = run(capsys, "analyze", "--q", "1/5,4/5;1,1/2")
    assert code == 2 and "BRAIDKIT_MAX_POINTS" in err


def test_relations_overflow_exit_code(capsys):
    code, out, _ = run(capsys, "relations", "--q", "1/5,4/5;1,1/2", "--degree", "3", "--max-points", "1")
    assert code == 3 and "Indeterminate" in out


def test_file_input(capsys, tmp_path):
    f = tmp_path / "b.yaml"
    f.write_text('{rank: 2, q: [["1/3", "2/3"], ["1", "1/3"]]}\n')
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 0 and "dim=27" in out
    code, _, err = run(capsys, "analyze", str(f), "--q", "1/3")
    assert code == 2 and "not both" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.yaml"))
    assert code == 2
    code, _, err = run(capsys, "analyze")
    assert code == 2


def test_nichols_rank1(capsys):
    code, out, _ = run(capsys, "nichols", "--q", "1/4", "--degree", "6")
    assert code == 0
    assert out.strip().endswith("1,1,1,1,0,0,0")
    code, out, _ = run(capsys, "nichols", "--q", "1/4", "--degree", "3", "--format", "json")
    assert json.loads(out)["dims"] == [1, 1, 1, 1]


def test_degree_must_be_positive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nichols", "--q", "1/4", "--degree", "0"])
    assert exc.value.code == 2


def test_relations_text_and_json(capsys):
    code, out, _ = run(capsys, "relations", "--q", "1/3,2/3;1,1/3", "--degree", "7")
    assert code == 0
    assert "dims match: yes" in out
    code, out, _ = run(capsys, "relations", "--q", "1/3,2/3;1,1/3", "--degree", "4", "--format", "json")
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["total_dimension"] == 27
    code, _, err = run(capsys, "relations", "--q", "1/2,1/4;1,1/4", "--degree", "3")
    assert code == 2 and "not of standard type" in err


def test_relations_rejects_dot(capsys):
    code, _, err = run(capsys, "relations", "--q", "1/3", "--degree", "2", "--format", "dot")
    assert code == 2 and "--format dot" in err


def test_lift_with_and_without_datum(capsys, tmp_path):
    code, out, _ = run(capsys, "lift", "--q", "1/5,2/5;1/5,2/5")
    assert code == 0
    assert "liftable case 2i" in out
    f = tmp_path / "d.yaml"
    f.write_text('{factors: [5, 5], g: [[1, 0], [0, 1]], chi: [["1/5", "1/5"], ["2/5", "2/5"]]}')
    code, out, _ = run(capsys, "lift", "--datum", str(f), "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "i,j,m,verdict,case_id,reason"
    assert lines[1].startswith("1,2,2,liftable,2i")
    code, _, err = run(capsys, "lift", "--datum", str(f), "--q", "1/3")
    assert code == 2


def test_scan_csv_and_summary(capsys):
    code, out, _ = run(capsys, "scan", "--nmax", "3")
    assert code == 0
    assert out.splitlines()[0] == "q11,q12,q21,q22,i,j,m,verdict,case_id"
    code, out, _ = run(capsys, "scan", "--nmax", "3", "--format", "json")
    data = json.loads(out)
    assert data["mismatches"] == 0 and data["schema_version"] == 1
    assert len(data["table"]) == data["rows"]


def test_enumerate_standard_a2(capsys):
    code, out, _ = run(capsys, "enumerate", "--order", "5", "--filter", "standard-A2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert {d["family"] for d in data["diagrams"]} == {"D1", "D2", "D3", "D4"}
    code, out, _ = run(capsys, "enumerate", "--order", "3", "--format", "csv")
    assert out.splitlines()[0] == "braiding,standard,cartan,family"
    code, out, _ = run(capsys, "enumerate", "--order", "3", "--filter", "standard", "--format", "dot")
    assert out.count("graph D") >= 1


def test_output_is_deterministic(capsys):
    first = run(capsys, "enumerate", "--order", "4", "--format", "json")
    second = run(capsys, "enumerate", "--order", "4", "--format", "json")
    assert first == second
    first = run(capsys, "relations", "--q", "1/5,4/5;1,1/2", "--degree", "5", "--format", "json")
    assert first == run(capsys, "relations", "--q", "1/5,4/5;1,1/2", "--degree", "5", "--format", "json")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "braidkit.cli", "nichols", "--q", "1/4", "--degree", "6"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "1,1,1,1,0,0,0" in proc.stdout
