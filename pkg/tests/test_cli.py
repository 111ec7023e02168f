import csv
import io
import json

import pytest

from aalpha.cli import main, parse_sweep
from aalpha.fixtures import FIXTURES, G1, P4
from aalpha.graph import parse_graph, serialize_graph
from aalpha.report import SCHEMA, analyze, from_json, round_sig, to_csv, to_json, to_text


@pytest.fixture
def write_graph(tmp_path):
    def _write(g, name="g.txt"):
        p = tmp_path / name
        p.write_text(serialize_graph(g))
        return p
    return _write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestReport:
    def test_round_sig(self):
        assert round_sig(1 / 3) == 0.333333333333
        assert round_sig(123456789.123456789) == 123456789.123
        assert round_sig(float("inf")) == "inf"
        assert round_sig(0.0) == 0.0

    def test_json_round_trip(self):
        rep = analyze(P4, [0.5, 0.55, 1.0], graph_id="p4", refine=True)
        text = to_json(rep)
        assert from_json(text) == rep
        assert to_json(from_json(text)) == text

    def test_schema_checked(self):
        with pytest.raises(ValueError):
            from_json('{"schema": "other/9"}')

    def test_contents(self):
        d = analyze(P4, [0.55]).data
        assert d["schema"] == SCHEMA
        assert list(d) == ["schema", "graph", "validity", "thresholds", "settings", "points", "intervals"]
        p = d["points"][0]
        assert p["moments"]["p2_delta"] <= 1e-12
        ph = [v for v in p["verdicts"] if v["criterion"] == "peres_horodecki"][0]
        assert ph["outcome"] == "entangled_certified"

    def test_csv_rows(self):
        rep = analyze(G1, [0.8, 0.9])
        rows = list(csv.DictReader(io.StringIO(to_csv(rep))))
        # weighted graph: four criteria per alpha
        assert len(rows) == 8
        assert {r["criterion"] for r in rows} == {"frobenius_ppt", "p3_ppt", "peres_horodecki", "second_moment_ppt"}

    def test_text(self):
        assert "entangled" in to_text(analyze(P4, [0.55]))
        assert "valid state" in to_text(analyze(P4, [0.5, 0.6]))


class TestAnalyze:
    def test_g1_sweep_ppt(self, capsys, write_graph):
        code, out, _ = run(capsys, "analyze", write_graph(G1), "--sweep", "0.75:1.0:26")
        assert code == 0
        d = json.loads(out)
        assert d["intervals"]["ppt_certified"]["frobenius_ppt"] == [[0.75, 1.0]]

    def test_p4_alpha(self, capsys, write_graph):
        code, out, _ = run(capsys, "analyze", write_graph(P4), "--alpha", "0.55")
        assert code == 0
        verdicts = {v["criterion"]: v["outcome"] for v in json.loads(out)["points"][0]["verdicts"]}
        assert verdicts["peres_horodecki"] == "entangled_certified"

    def test_default_sweep(self, capsys, write_graph):
        code, out, _ = run(capsys, "analyze", write_graph(P4))
        assert code == 0 and len(json.loads(out)["points"]) == 100

    def test_byte_identical(self, capsys, write_graph):
        p = write_graph(P4)
        a = run(capsys, "analyze", p, "--refine")[1]
        b = run(capsys, "analyze", p, "--refine")[1]
        assert a == b

    def test_edgeless(self, capsys, tmp_path):
        p = tmp_path / "e.txt"
        p.write_text("graph 4 2 2\n")
        code, _, err = run(capsys, "analyze", p)
        assert code == 3 and "graph has no edges (d_G = 0)" in err

    def test_parse_error(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("graph 4 2 2\nedge 0 1 2\n")
        code, _, err = run(capsys, "analyze", p)
        assert code == 2 and "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "analyze", tmp_path / "nope.txt")[0] == 2

    def test_alpha_out_of_range(self, capsys, write_graph):
        assert run(capsys, "analyze", write_graph(P4), "--alpha", "1.5")[0] == 3

    def test_dimension_override(self, capsys, write_graph):
        p = write_graph(FIXTURES["P6"].graph)
        assert run(capsys, "analyze", p, "--d1", "3", "--d2", "2", "--alpha", "0.8")[0] == 0
        assert run(capsys, "analyze", p, "--d1", "4", "--alpha", "0.8")[0] == 3

    def test_non_state_alpha_reported(self, capsys, write_graph):
        code, out, _ = run(capsys, "analyze", write_graph(P4), "--alpha", "0.3")
        assert code == 0 and json.loads(out)["points"][0]["valid_state"] is False

    def test_formats(self, capsys, write_graph):
        p = write_graph(P4)
        assert run(capsys, "analyze", p, "--alpha", "0.6", "--format", "csv")[1].startswith("alpha,criterion")
        assert run(capsys, "analyze", p, "--alpha", "0.6", "--format", "text")[1].startswith("graph g")

    def test_parse_sweep(self):
        assert parse_sweep("0.5:1:6") == (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
        for bad in ("0.5:1", "a:1:3", "1:0.5:3", "0.1:1:0"):
            with pytest.raises(Exception):
                parse_sweep(bad)

    def test_bad_sweep_exit_code(self, capsys, write_graph):
        with pytest.raises(SystemExit) as exc:
            main(["analyze", str(write_graph(P4)), "--sweep", "x"])
        assert exc.value.code == 2


class TestGenerate:
    def test_complete(self, capsys):
        code, out, _ = run(capsys, "generate", "complete", 4, 2, 2)
        assert code == 0 and parse_graph(out) == FIXTURES["K4"].graph

    def test_path_to_file(self, capsys, tmp_path):
        p = tmp_path / "p6.txt"
        assert run(capsys, "generate", "path", 6, 2, 3, "--out", p)[0] == 0
        assert parse_graph(p.read_text()) == FIXTURES["P6"].graph

    def test_random_reproducible(self, capsys):
        a = run(capsys, "generate", "random", 9, 3, 3, "--seed", 7)[1]
        b = run(capsys, "generate", "random", 9, 3, 3, "--seed", 7)[1]
        assert a == b and not parse_graph(a).is_unweighted

    def test_size_mismatch(self, capsys):
        code, _, err = run(capsys, "generate", "path", 5, 2, 2)
        assert code == 2 and "does not match" in err

    def test_unknown_family(self, capsys):
        with pytest.raises(SystemExit):
            main(["generate", "star", "4", "2", "2"])


class TestReferenceFixtures:
    def test_all_pass(self, capsys):
        code, out, _ = run(capsys, "paper-examples")
        assert code == 0
        assert out.count("PASS") == 9 and "9/9" in out

    def test_only(self, capsys):
        code, out, _ = run(capsys, "paper-examples", "--only", "K4", "-v")
        assert code == 0 and "alpha threshold" in out and "P4" not in out
