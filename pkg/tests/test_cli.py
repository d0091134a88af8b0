import json

import pytest

from summoner.cli import main
from summoner.scenario import DEMO_NAMES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def antipodal(tmp_path, capsys):
    path = tmp_path / "ap.json"
    code, _, _ = run(capsys, "demo", "antipodal_pair", "--out", str(path))
    assert code == 0
    return str(path)


class TestValidate:
    @pytest.mark.parametrize("name", DEMO_NAMES)
    def test_demo_round_trip(self, name, tmp_path, capsys):
        path = tmp_path / f"{name}.json"
        assert run(capsys, "demo", name, "--out", str(path))[0] == 0
        assert run(capsys, "validate", str(path))[0] == 0

    def test_domain_error_names_candidate(self, antipodal, capsys):
        data = json.load(open(antipodal))
        data["candidates"][0]["t"] = -2.0
        open(antipodal, "w").write(json.dumps(data))
        code, out, _ = run(capsys, "validate", antipodal)
        assert code == 2
        assert "candidate 0" in out

    def test_truncated_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"regime": {')
        code, _, err = run(capsys, "validate", str(path))
        assert code == 1
        assert "bad.json" in err

    def test_unknown_field(self, antipodal, capsys):
        data = json.load(open(antipodal))
        data["surprise"] = True
        open(antipodal, "w").write(json.dumps(data))
        code, _, err = run(capsys, "validate", antipodal)
        assert code == 1
        assert "schema" in err

    def test_missing_file(self, capsys):
        assert run(capsys, "validate", "/nonexistent.json")[0] == 1


class TestClassify:
    def test_chain(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        run(capsys, "demo", "timelike_chain", "--out", str(path))
        code, out, _ = run(capsys, "classify", str(path))
        assert code == 0
        assert "FEASIBLE chain=[0, 1, 2, 3]" in out

    def test_antipodal(self, antipodal, capsys):
        code, out, _ = run(capsys, "classify", antipodal)
        assert code == 0
        assert "INFEASIBLE pair=(0, 1)" in out

    def test_undetermined(self, antipodal, capsys):
        data = json.load(open(antipodal))
        data["delta"] = 1.5  # delayed pasts overlap; no chain either
        open(antipodal, "w").write(json.dumps(data))
        code, out, _ = run(capsys, "classify", antipodal)
        assert code == 0
        assert "UNDETERMINED" in out


class TestBound:
    def test_antipodal(self, antipodal, capsys):
        code, out, _ = run(capsys, "bound", antipodal, "--json")
        assert code == 0
        report = json.loads(out)
        assert report["bounds"]["p_lower"] == pytest.approx(5 / 6, abs=1e-12)
        assert report["bounds"]["p_upper"] == pytest.approx(5 / 6, abs=1e-12)

    def test_sphere(self, tmp_path, capsys):
        path = tmp_path / "s.json"
        run(capsys, "demo", "sphere", "--out", str(path))
        code, out, _ = run(capsys, "bound", str(path), "--json")
        assert json.loads(out)["bounds"]["p_upper"] == pytest.approx(17 / 24, abs=1e-12)

    def test_regime_mismatch(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        run(capsys, "demo", "classical", "--out", str(path))
        assert run(capsys, "bound", str(path))[0] == 2


class TestSimulate:
    def test_clone_distribute(self, antipodal, capsys):
        code, out, _ = run(
            capsys, "simulate", antipodal, "--strategy", "clone_distribute",
            "--trials", "5000", "--seed", "42", "--json",
        )
        assert code == 0
        sim = json.loads(out)["sim"]
        assert sim["overall_mean"] == pytest.approx(5 / 6, abs=0.005)

    def test_galilean_exact(self, tmp_path, capsys):
        path = tmp_path / "g.json"
        run(capsys, "demo", "galilean", "--out", str(path))
        code, out, _ = run(
            capsys, "simulate", str(path), "--strategy", "galilean_route",
            "--trials", "200", "--json",
        )
        assert json.loads(out)["sim"]["overall_mean"] == 1.0

    def test_no_chain_exit(self, antipodal, capsys):
        code, _, err = run(capsys, "simulate", antipodal, "--strategy", "route_chain")
        assert code == 2
        assert "chain" in err

    def test_byte_identical_reports(self, antipodal, capsys):
        args = ("simulate", antipodal, "--strategy", "measure_broadcast",
                "--trials", "500", "--seed", "3", "--json")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1.encode() == out2.encode()


class TestDemo:
    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "demo", "sphere")
        assert code == 0
        data = json.loads(out)
        assert len(data["candidates"]) == 8

    def test_unknown(self, capsys):
        code, _, err = run(capsys, "demo", "nosuch")
        assert code == 1
        assert "available" in err
