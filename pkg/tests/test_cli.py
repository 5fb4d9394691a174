import json

import pytest

from rswan.cli import main, load_config_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestRsw:
    def test_unit_unit_example(self, capsys):
        code, out, _ = run(capsys, "rsw", "--field", "2/Q2", "--shape",
                           "unit-unit", "--x", "x1", "--y", "x2", "--n", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["rsw"]["n"] == 1
        # beta is x1 dlog x2 = x1 dx2 / x2
        assert payload["rsw"]["beta"] == "x1/x2*dx2"

    def test_x_pi_example(self, capsys):
        code, out, _ = run(capsys, "rsw", "--shape", "x-pi", "--x", "x1",
                           "--m", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["rsw"]["n"] == 2
        assert payload["rsw"]["beta"] == "1/x1*dx1"

    def test_malformed_shape(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["rsw", "--shape", "bogus", "--x", "x1"])
        assert exc.value.code == 2

    def test_missing_argument(self, capsys):
        code, _, err = run(capsys, "rsw", "--shape", "unit-unit", "--x",
                           "x1")
        assert code == 2


class TestSweep:
    ARGS = ["sweep", "--beta", "dx1", "--n", "1", "--m", "1",
            "--center", "1", "--radius", "1"]

    def test_flagship_match(self, capsys):
        code, out, _ = run(capsys, *self.ARGS)
        assert code == 0
        assert json.loads(out)["verdict"] == "MATCH"

    def test_corrupted_prediction(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--corrupt-prediction")
        assert code == 1
        assert json.loads(out)["verdict"] == "FAIL"

    def test_budget_zero(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--budget", "0")
        assert code == 3
        assert json.loads(out)["verdict"] == "UNDECIDED"

    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--out", "csv")
        assert code == 0
        assert out.splitlines()[0].startswith("tangent,")
        assert "1/2" in out

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run(capsys, *self.ARGS, "--out-file", str(path))
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["verdict"] == "MATCH"


class TestOtherCommands:
    def test_construct(self, capsys):
        code, out, _ = run(capsys, "construct", "--beta", "dx1", "--n",
                           "1", "--m", "1")
        assert code == 0
        assert json.loads(out)["rsw"]["beta"] == "dx1"

    def test_quadsweep(self, capsys):
        code, out, _ = run(capsys, "quadsweep", "--field", "Q2i",
                           "--shape", "x-y", "--x", "x1", "--y", "x2",
                           "--center", "1,1", "--s", "1")
        assert code == 0
        assert json.loads(out)["verdict"] == "MATCH"

    def test_probe(self, capsys):
        code, out, _ = run(capsys, "probe", "--beta", "dx1", "--n", "1",
                           "--m", "1", "--center", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["target"] == 2 and len(payload["values"]) == 2

    def test_filtration(self, capsys):
        code, out, _ = run(capsys, "filtration", "--beta", "dx1", "--n",
                           "1", "--m", "1", "--centers", "3", "--n-max",
                           "3", "--seed", "5")
        assert code == 0
        assert json.loads(out)["estimate"] == 1

    def test_conductor(self, capsys):
        code, out, _ = run(capsys, "conductor", "--field", "Q2c", "--a",
                           "1+u1*pi^2", "--m", "1")
        assert code == 0
        assert json.loads(out)["conductor"] == 4

    def test_conductor_undecided(self, capsys):
        code, _, err = run(capsys, "conductor", "--a", "u1^2", "--m", "1")
        assert code == 3


class TestConfig:
    def test_flat_file_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "rswan.cfg"
        cfg.write_text("field = Q2c  # comment\nseed = 4\n")
        assert load_config_file(str(cfg)) == {"field": "Q2c", "seed": "4"}
        code, out, _ = run(capsys, "conductor", "--a", "pi", "--m", "1",
                           "--config", str(cfg))
        assert code == 0
        assert json.loads(out)["conductor"] == 7  # e' + 1 over the cubic
        # flags override the file
        code, out, _ = run(capsys, "conductor", "--a", "pi", "--m", "1",
                           "--config", str(cfg), "--field", "Q2")
        assert json.loads(out)["conductor"] == 3

    def test_bad_config_line(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("just words\n")
        with pytest.raises(ValueError):
            load_config_file(str(cfg))


class TestVerify:
    def test_all_deterministic(self, capsys):
        code1, out1, _ = run(capsys, "verify", "all", "--seed", "7")
        code2, out2, _ = run(capsys, "verify", "all", "--seed", "7")
        assert code1 == code2 == 0
        assert out1 == out2
        assert "0 failed" in out1

    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "forms")
        assert code == 0
        assert out.startswith("forms:")
