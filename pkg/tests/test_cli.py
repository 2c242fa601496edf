import json

import pytest

from krichever import cli
from krichever.core import Poly, VarTable


def run(capsys, *argv):
    code = cli.run(list(argv))
    return code, capsys.readouterr().out


class TestTables:
    def test_psi_text_matches_golden(self, capsys):
        code, out = run(capsys, "psi", "--order", "4")
        assert code == 0
        assert out.strip() == cli.golden_table("psi")

    def test_kappa_text_matches_golden(self, capsys):
        code, out = run(capsys, "kappa", "--order", "4")
        assert code == 0
        assert out.strip() == cli.golden_table("kappa")

    def test_json_round_trips_through_parser(self, capsys):
        code, out = run(capsys, "phi-kh", "--order", "4", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["order"] == 4
        vars = VarTable(*zip(*payload["vars"]))
        for key, terms in payload["values"].items():
            poly = Poly.from_json(terms, vars)
            assert Poly.parse(poly.text(), vars) == poly

    def test_kappa_inv_runs(self, capsys):
        code, out = run(capsys, "kappa-inv", "--order", "3")
        assert code == 0
        assert "kappa_inv(CP_3)" in out


class TestVerify:
    def test_single_suite(self, capsys):
        code, out = run(capsys, "verify", "--suite", "krichever-ode", "--order", "5")
        assert code == 0
        assert "[PASS] krichever-ode" in out

    def test_all_suites_json(self, capsys):
        code, out = run(capsys, "verify", "--order", "4", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert len(payload["reports"]) == 7
        for rep in payload["reports"]:
            assert rep["first_failure"] is None


class TestQuotient:
    def test_small_weights_free(self, capsys):
        code, out = run(capsys, "quotient", "--max-weight", "3")
        assert code == 0
        for line in out.strip().splitlines():
            assert "Indec = Z" in line

    def test_json_schema(self, capsys):
        code, out = run(capsys, "quotient", "--max-weight", "5", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        by_n = {w["n"]: w for w in payload["weights"]}
        assert by_n[5]["Indec"] == {"free": 0, "torsion": [5]}
        assert by_n[5]["rank_L"] == 7


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["bogus"],
            ["psi", "--order", "0"],
            ["verify", "--suite", "nope"],
            ["quotient", "--max-weight", "99"],
            ["psi", "--frobnicate"],
        ],
    )
    def test_exit_code_two(self, argv, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.run(argv)
        assert exc.value.code == 2


class TestDeterminism:
    def test_byte_identical_output(self, capsys):
        _, out1 = run(capsys, "verify", "--order", "4", "--format", "json")
        _, out2 = run(capsys, "verify", "--order", "4", "--format", "json")
        assert out1 == out2

    def test_parallel_runs_identical(self):
        # reports must not depend on scheduling
        from concurrent.futures import ThreadPoolExecutor

        from krichever import genus

        def job():
            return json.dumps(genus.verify_krichever_ode(5).to_json())

        with ThreadPoolExecutor(max_workers=4) as pool:
            outs = list(pool.map(lambda _: job(), range(4)))
        assert len(set(outs)) == 1


class TestOutFile:
    def test_out_writes_lf_utf8(self, tmp_path, capsys):
        path = tmp_path / "psi.txt"
        code = cli.run(["psi", "--order", "2", "--out", str(path)])
        assert code == 0
        data = path.read_bytes()
        assert data.endswith(b"\n") and b"\r" not in data
        assert data.decode("utf-8").strip().splitlines()[0] == "psi(CP_1) = -1/2*p1"


class TestReproducePaper:
    def test_small_run_passes(self, capsys):
        code, out = run(capsys, "reproduce-paper", "--order", "4", "--max-weight", "5")
        assert code == 0
        assert out.strip().endswith("overall: PASS")
