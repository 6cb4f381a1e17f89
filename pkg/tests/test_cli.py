import json
import subprocess
import sys


from superell.cli import main


def run_cli(tmp_path, spec, *args):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps(spec))
    proc = subprocess.run(
        [sys.executable, "-m", "superell.cli", str(path), *args],
        capture_output=True, text=True, timeout=600)
    return proc


EX1 = {"n": 4, "f": [["x^2-3", 1], ["x^2+3", 1], ["x^2-6*x-3", 1]], "p": 3}
EX2 = {"n": 3, "f": [1, 0, -1, 0, 1], "p": 2}


class TestCli:
    def test_example1_text(self, tmp_path):
        proc = run_cli(tmp_path, EX1)
        assert proc.returncode == 0
        assert "P1(T) = 1 + T + 3*T^2 + 3*T^3" in proc.stdout
        assert "11 + 0 = 11" in proc.stdout

    def test_example2_json(self, tmp_path):
        proc = run_cli(tmp_path, EX2, "--json")
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["P1"] == [1, 0, 2]
        assert data["epsilon"] == 4
        assert data["delta"] == 4
        assert data["conductor_exponent"] == 8
        assert data["report"]["galois"]["filtration_sizes"] == [6, 2, 2, 2, 1]

    def test_validation_exit_code(self, tmp_path):
        proc = run_cli(tmp_path, {"n": 3, "f": [1, 0, -1, 0, 1], "p": 3})
        assert proc.returncode == 2

    def test_catalog_exhausted_exit_code(self, tmp_path):
        proc = run_cli(tmp_path, EX1, "--max-degree", "2")
        assert proc.returncode == 3

    def test_deterministic_json(self, tmp_path):
        out1 = run_cli(tmp_path, EX1, "--json").stdout
        out2 = run_cli(tmp_path, EX1, "--json").stdout
        assert out1 == out2

    def test_trace_goes_to_stderr(self, tmp_path):
        proc = run_cli(tmp_path, EX2, "--trace")
        assert proc.returncode == 0
        assert "candidate field" in proc.stderr

    def test_field_tower_flag(self, tmp_path):
        tower = {"p": 3, "unramified_modulus": [1, 0, 1],
                 "eisenstein": [[-3, 0, 0, 0, 1]], "precision": 40}
        tpath = tmp_path / "tower.json"
        tpath.write_text(json.dumps(tower))
        path = tmp_path / "curve.json"
        path.write_text(json.dumps(EX1))
        proc = subprocess.run(
            [sys.executable, "-m", "superell.cli", str(path),
             "--field-tower", str(tpath), "--json"],
            capture_output=True, text=True, timeout=600)
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["conductor_exponent"] == 11
        assert data["P1"] == [1, 1, 3, 3]

    def test_in_process_main(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        path.write_text(json.dumps(EX2))
        rc = main([str(path), "--json"])
        assert rc == 0
        data = json.loads(capsys.readouterr().out)
        assert data["conductor_exponent"] == 8

    def test_bad_precision(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        path.write_text(json.dumps(EX2))
        assert main([str(path), "--precision", "4"]) == 2
