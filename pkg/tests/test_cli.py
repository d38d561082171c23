import json

import pytest

from hbstrata import cli, reporting


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


class TestTypes:
    def test_generic_g4(self, capsys):
        assert run_json(capsys, "types", "--profile", "4", "--filter", "generic")["count"] == 7

    def test_odd_generic_ss_is_empty(self, capsys):
        assert run_json(capsys, "types", "--profile", "3", "--filter", "generic-ss")["count"] == 0

    def test_two_even_blocks(self, capsys):
        d = run_json(capsys, "types", "--profile", "2,2", "--filter", "generic-ss")
        assert d["count"] == 4
        assert all(r["supersingular"] and r["generic"] for r in d["rows"])

    def test_from_field_data(self, capsys):
        assert run_json(capsys, "types", "--disc", "5", "--p", "11")["profile"] == [1, 1]

    def test_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("HBSTRATA_MAX_G", "3")
        code, _, err = run(capsys, "types", "--profile", "4")
        assert code == 2 and "bound" in err
        monkeypatch.setenv("HBSTRATA_MAX_G", "x")
        assert run(capsys, "types", "--profile", "2")[0] == 2


class TestComponents:
    def test_five_cycle(self, capsys):
        d = run_json(capsys, "components", "--g", "5", "--tau", "0,2")
        assert d["count"] == 4 and d["max_dimension"] == 2 and d["w"] == 2

    def test_six_cycle(self, capsys):
        d = run_json(capsys, "components", "--g", "6", "--tau", "0,2,3,4")
        assert sorted(c["dimension"] for c in d["components"]) == [2, 2, 2, 2, 3]

    def test_empty_tau(self, capsys):
        d = run_json(capsys, "components", "--g", "3", "--tau", "")
        assert d["count"] == 2 and d["max_dimension"] == 0

    def test_errors(self, capsys):
        assert run(capsys, "components", "--g", "13", "--tau", "0")[0] == 2
        assert run(capsys, "components", "--tau", "0")[0] == 2
        assert run(capsys, "components", "--g", "3", "--tau", "a")[0] == 2
        assert run(capsys, "components", "--g", "3", "--tau", "5")[0] == 2


class TestCount:
    def test_pipeline(self, capsys):
        d = run_json(capsys, "count", "--disc", "5", "--p", "3", "--n", "3")
        assert d["total_components"] == 14
        assert d["class_factor"]["value"] == {"num": "6", "den": "1"}

    def test_override(self, capsys):
        assert run_json(capsys, "count", "--profile", "3", "--class-factor", "1")["total_components"] == 8
        d = run_json(capsys, "count", "--profile", "2", "--class-factor", "3/1")
        assert d["total_components"] == 4 + 2 * 2

    def test_h_not_needed(self, capsys):
        d = run_json(capsys, "count", "--profile", "1,1")
        assert d["total_components"] == 4 and d["class_factor"] is None

    def test_errors(self, capsys):
        code, _, err = run(capsys, "count", "--disc", "5", "--p", "5", "--n", "3")
        assert code == 2 and "ramif" in err
        assert run(capsys, "count", "--profile", "2")[0] == 2
        assert run(capsys, "count", "--profile", "2", "--disc", "5", "--p", "3")[0] == 2
        assert run(capsys, "count", "--disc", "5")[0] == 2
        assert run(capsys, "count", "--profile", "2", "--class-factor", "-1")[0] == 2
        assert run(capsys, "count", "--profile", "2", "--class-factor", "1/3")[0] == 2
        assert run(capsys, "count", "--profile", "2", "--class-factor", "2", "--p", "4")[0] == 2

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2

    def test_formats(self, capsys):
        code, out, _ = run(capsys, "count", "--disc", "5", "--p", "3", "--n", "3", "--format", "csv")
        assert code == 0 and "total_components,,14" in out
        code, out, _ = run(capsys, "count", "--disc", "5", "--p", "3", "--n", "3")
        assert code == 0 and "total components: 14" in out

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "r.json"
        code, out, _ = run(capsys, "count", "--profile", "3", "--class-factor", "1", "--format", "json",
                           "-o", str(target))
        assert code == 0 and out == ""
        assert reporting.from_json(target.read_text()).total_components == 8


class TestVerify:
    def test_reduced_run(self, capsys):
        import time
        start = time.perf_counter()
        code, out, _ = run(capsys, "verify", "--max-g", "4", "--fields", "3^2")
        assert code == 0 and "all suites passed" in out
        assert time.perf_counter() - start < 5

    def test_deterministic(self, capsys):
        argv = ["verify", "--max-g", "4", "--fields", "2^2,3", "--samples", "50", "--seed", "9",
                "--format", "json"]
        first = run(capsys, *argv)[1]
        second = run(capsys, *argv)[1]
        assert first == second
        assert json.loads(first)["config"]["seed"] == 9

    def test_failure_exit_code(self, capsys, monkeypatch):
        from hbstrata import counting

        real = counting.count_by_closed_form
        monkeypatch.setattr(counting, "count_by_closed_form", lambda pr, H: real(pr, H) + 1)
        code, out, _ = run(capsys, "verify", "--max-g", "4", "--fields", "3^2", "--suite", "formula_equivalence")
        assert code == 1 and "FAIL" in out

    def test_bad_fields(self, capsys):
        assert run(capsys, "verify", "--fields", "x^2")[0] == 2
        assert run(capsys, "verify", "--fields", "4^2")[0] == 2
        assert run(capsys, "verify", "--fields", ",")[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "hbstrata", "count", "--profile", "3", "--class-factor", "1",
                           "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0 and "total_components,,8" in proc.stdout
