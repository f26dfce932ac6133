import json
import subprocess
import sys

import pytest

from polyaut.adjoint import inverse_adjoint_data
from polyaut.automorphism import invert, parse_map
from polyaut.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def subprocess_run(*argv, stdin=None):
    return subprocess.run([sys.executable, "-m", "polyaut", *argv], input=stdin,
                          capture_output=True, text=True, timeout=60)


class TestGoldens:
    def test_invert(self, capsys):
        assert call(capsys, "invert", "-n", "2", "x1+x2^2; x2") == (0, "x1-x2^2; x2\n", "")

    def test_jac_non_constant(self, capsys):
        code, out, _ = call(capsys, "jac", "-n", "2", "x1^2; x2")
        assert code == 0
        assert out.splitlines() == ["2*x1", "note: non-constant"]

    def test_jac_constant_has_no_note(self, capsys):
        assert call(capsys, "jac", "-n", "2", "x1+x2^2; x2")[1] == "1\n"

    def test_reconstruct_json(self, capsys, tmp_path):
        data = inverse_adjoint_data(invert(parse_map("x1+x2^2; x2+3")))
        path = tmp_path / "theta.json"
        path.write_text(data.to_json())
        code, out, _ = call(capsys, "reconstruct", "--json", str(path))
        assert code == 0
        assert json.loads(out) == {"schema": 1, "map": "x1+x2^2; x2+3"}

    def test_reconstruct_from_stdin(self):
        data = inverse_adjoint_data(invert(parse_map("x1+x2^2; x2+3"))).to_json()
        res = subprocess_run("reconstruct", "-", stdin=data)
        assert res.returncode == 0
        assert res.stdout == "x1+x2^2; x2+3\n"

    def test_inverse_data_feeds_reconstruct(self, capsys, tmp_path):
        code, out, _ = call(capsys, "ad", "-n", "2", "--inverse-data", "x1+x2^2; x2+3")
        assert code == 0
        path = tmp_path / "theta.json"
        path.write_text(out)
        assert call(capsys, "reconstruct", str(path))[1] == "x1+x2^2; x2+3\n"

    def test_compose(self, capsys):
        assert call(capsys, "compose", "-n", "2", "x1+x2^2; x2", "x1-x2^2; x2")[1] == "x1; x2\n"

    def test_exp(self, capsys):
        assert call(capsys, "exp", "-n", "2", "x2^2; 1")[1] == "x1+x2^2+x2+1/3; x2+1\n"

    def test_lnd_check(self, capsys):
        assert call(capsys, "lnd-check", "-n", "2", "x2^2; 1")[1].startswith("yes")
        assert call(capsys, "lnd-check", "-n", "2", "x1; 0")[1].startswith("no")
        assert call(capsys, "lnd-check", "-n", "2", "--bound", "2", "x2^2; 1")[1].startswith("unknown")

    def test_modify(self, capsys):
        code, out, _ = call(capsys, "modify", "-n", "2", "x2", "1; 0")
        assert code == 0
        assert out.splitlines()[0] == "x2; 0"

    def test_ad(self, capsys):
        assert call(capsys, "ad", "-n", "2", "x1+x2^2; x2", "0; 1")[1] == "2*x2; 1\n"

    def test_weights_json(self, capsys):
        code, out, _ = call(capsys, "weights", "-n", "2", "--dmax", "1", "--json")
        obj = json.loads(out)
        assert code == 0 and obj["schema"] == 1
        assert len(obj["roots"]) == 4 and obj["distinct"]

    def test_decompose_json(self, capsys):
        obj = json.loads(call(capsys, "decompose", "-n", "2", "-d", "1", "--json")[1])
        weights = {tuple(h["weight"]) for h in obj["highest_weights"]}
        assert weights == {(2, 0), (1, 1)}
        assert obj["multiplicity_free"]

    def test_curve_json(self, capsys):
        code, out, _ = call(capsys, "curve", "-n", "5", "--point", "0,1,2,3,4",
                            "--group", "(1 2 3 4 5)", "--json")
        obj = json.loads(out)
        assert code == 0
        assert set(obj) >= {"schema", "generators", "point", "smooth", "orbit", "orbit_size"}
        assert obj["orbit_size"] == 5 and obj["smooth"] is True
        assert len(obj["generators"]) == 4

    def test_curve_default_group_is_symmetric(self, capsys):
        obj = json.loads(call(capsys, "curve", "--point", "0,1,2", "--json")[1])
        assert obj["orbit_size"] == 6

    def test_newton(self, capsys):
        code, out, _ = call(capsys, "newton", "-n", "4", "-j", "3")
        assert code == 0
        assert out.splitlines() == ["p3 = s1^3-3*s1*s2+3*s3", "residual: 0"]


class TestExitCodes:
    def test_parse_error(self, capsys):
        code, out, err = call(capsys, "invert", "-n", "2", "x1+; x2")
        assert code == 2 and out == ""
        assert err.startswith("error:") and len(err.strip().splitlines()) == 1

    def test_dimension_mismatch_is_contract_error(self, capsys):
        assert call(capsys, "invert", "-n", "3", "x1; x2")[0] == 2

    def test_not_an_automorphism(self, capsys):
        code, _, err = call(capsys, "invert", "-n", "2", "x1^2; x2")
        assert code == 1 and "not a nonzero constant" in err

    def test_exp_of_non_lnd(self, capsys):
        assert call(capsys, "exp", "-n", "2", "x1; 0")[0] == 1

    def test_not_reconstructible(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"schema": 1, "n": 2, "partials": ["1; 0", "0; 1"],
                                    "euler": "2*x1; 2*x2"}))
        code, _, err = call(capsys, "reconstruct", str(path))
        assert code == 1 and "not reconstructible" in err

    def test_bad_json_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{")
        assert call(capsys, "reconstruct", str(path))[0] == 2

    def test_unknown_subcommand(self, capsys):
        assert call(capsys, "frobnicate")[0] == 2

    def test_bad_group(self, capsys):
        assert call(capsys, "curve", "--point", "0,1,2", "--group", "(1 4)")[0] == 2


class TestProcess:
    def test_module_entry_point(self):
        res = subprocess_run("invert", "-n", "2", "x1+x2^2; x2")
        assert res.returncode == 0 and res.stdout == "x1-x2^2; x2\n"

    @pytest.mark.parametrize("argv", [
        ("sample", "-n", "3", "--seed", "5"),
        ("curve", "-n", "4", "--seed", "9", "--json"),
        ("weights", "-n", "3", "--dmax", "2"),
    ])
    def test_deterministic(self, argv):
        first, second = subprocess_run(*argv), subprocess_run(*argv)
        assert first.returncode == 0
        assert first.stdout == second.stdout

    def test_invert_round_trip(self, capsys):
        for text in ("x1+x2^2; x2", "2*x1+x2+1; x1+x2", "x1+x2*x3; x2+x3^2; x3"):
            n = str(text.count(";") + 1)
            once = call(capsys, "invert", "-n", n, text)[1].strip()
            twice = call(capsys, "invert", "-n", n, once)[1].strip()
            assert parse_map(twice) == parse_map(text)
