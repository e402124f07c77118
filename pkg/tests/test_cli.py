import json

import pytest

from shiftmorita.cli import main

from conftest import DIAMOND_TEXT


@pytest.fixture()
def matrix_file(tmp_path):
    p = tmp_path / "diamond.mx"
    p.write_text(DIAMOND_TEXT + "\n")
    return str(p)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestFgraph:
    def test_diamond_report(self, matrix_file, capsys):
        assert main(["fgraph", matrix_file]) == 0
        out = capsys.readouterr().out
        assert "vertex count: 4" in out
        assert "label count: 3" in out
        assert "edge count: 8" in out

    def test_deterministic(self, matrix_file, capsys):
        main(["fgraph", matrix_file])
        first = capsys.readouterr().out
        main(["fgraph", matrix_file])
        assert capsys.readouterr().out == first

    def test_json_mirror(self, matrix_file, capsys):
        assert main(["fgraph", matrix_file, "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["vertex count"] == 4
        assert len(data["edges"]) == 8

    def test_dot_output(self, matrix_file, tmp_path, capsys):
        dot = tmp_path / "g.dot"
        assert main(["fgraph", matrix_file, "--dot", str(dot)]) == 0
        capsys.readouterr()
        assert dot.read_text().count("->") == 8

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = write(tmp_path, "bad.mx", "a b\n10\n00\n")
        assert main(["fgraph", bad]) == 2
        assert "zero row" in capsys.readouterr().err

    def test_missing_file_exit_2(self, capsys):
        assert main(["fgraph", "/nonexistent.mx"]) == 2


class TestOrderCommand:
    def test_report(self, matrix_file, capsys):
        assert main(["order", matrix_file]) == 0
        out = capsys.readouterr().out
        assert "{b} < {a,b}" in out
        assert "{a,b} ^ {b,c} = {b}" in out


class TestCoresCommand:
    def test_report(self, matrix_file, capsys):
        assert main(["cores", matrix_file]) == 0
        out = capsys.readouterr().out
        assert "{a,b,c}: {b} {a,b} {b,c} {a,b,c}" in out


class TestCdCommand:
    def test_report(self, matrix_file, capsys):
        assert main(["cd", matrix_file]) == 0
        out = capsys.readouterr().out
        assert out.count("[{") > 7
        assert "Cll:" in out


class TestLgisCheck:
    def test_pass(self, matrix_file, capsys):
        assert main(["lgis-check", matrix_file, "--maxlen", "1"]) == 0
        assert "verdict: PASS" in capsys.readouterr().out


class TestOracleCheck:
    def test_pass(self, matrix_file, capsys):
        assert main(["oracle-check", matrix_file, "--depth", "5"]) == 0
        out = capsys.readouterr().out
        assert "failures: 0" in out

    def test_depth_too_small_exit_2(self, matrix_file, capsys):
        assert main(["oracle-check", matrix_file, "--depth", "3"]) == 2

    def test_corrupt_negative_control_exit_1(self, matrix_file, capsys):
        assert main(["oracle-check", matrix_file, "--corrupt"]) == 1
        assert "MISMATCH" in capsys.readouterr().out

    def test_single_letter_shift(self, tmp_path, capsys):
        f = write(tmp_path, "one.mx", "a\n1\n")
        assert main(["oracle-check", f, "--depth", "4"]) == 0


class TestDecideCommand:
    def test_equivalent_exit_0(self, matrix_file, capsys):
        assert main(["decide", matrix_file, matrix_file]) == 0
        assert capsys.readouterr().out.startswith("EQUIVALENT")

    def test_not_equivalent_exit_1(self, tmp_path, capsys):
        f2 = write(tmp_path, "f2.mx", "a b\n11\n11\n")
        f3 = write(tmp_path, "f3.mx", "a b c\n111\n111\n111\n")
        assert main(["decide", f2, f3]) == 1
        out = capsys.readouterr().out
        assert out.startswith("NOT EQUIVALENT")
        assert "certificate" in out

    def test_cross_check_flag(self, matrix_file, capsys):
        assert main(["decide", matrix_file, matrix_file, "--cross-check"]) == 0


class TestSelftest:
    def test_tiny_sweep(self, capsys):
        assert main(["selftest", "--max-letters", "1", "--random-count", "3"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 7


class TestUsage:
    def test_unknown_flag_exit_2(self, matrix_file):
        with pytest.raises(SystemExit) as exc:
            main(["fgraph", matrix_file, "--bogus"])
        assert exc.value.code == 2

    def test_unknown_command_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_invariant_violation_exit_3(self, matrix_file, monkeypatch, capsys):
        import shiftmorita.cli as cli
        from shiftmorita.shift import InvariantViolation

        def boom(args):
            raise InvariantViolation("synthetic failure")

        monkeypatch.setattr(cli, "cmd_order", boom)
        assert main(["order", matrix_file]) == 3
        assert "invariant" in capsys.readouterr().err
