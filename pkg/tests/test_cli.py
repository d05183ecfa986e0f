import csv
import io
import json

import pytest

from xtropy.cli import RunConfig, parse_config, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestValues:
    def test_compute_linear_rising(self):
        code, out, _ = invoke("compute", "--dist", "linear-rising", "--weight", "pow:1")
        data = json.loads(out)
        assert code == 0
        assert data["value"] == pytest.approx(-0.5, abs=1e-10)
        for key in ("value", "error", "method", "n", "dist", "weight", "theorem_id", "pass"):
            assert key in data

    def test_rss_uniform(self):
        code, out, _ = invoke("rss", "--dist", "uniform:0,1", "--weight", "unit", "--n", "2")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(-8 / 9, rel=1e-12)

    def test_closed_method(self):
        code, out, _ = invoke("rss", "--dist", "exp:1", "--weight", "pow:1", "--n", "2",
                              "--method", "closed")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(-13 / 288, abs=1e-9)

    def test_srs(self):
        code, out, _ = invoke("srs", "--dist", "uniform:0,1", "--n", "3")
        assert code == 0 and json.loads(out)["value"] == pytest.approx(-0.5, rel=1e-12)

    def test_divergence_is_null_with_reason(self):
        code, out, _ = invoke("rss", "--dist", "pareto:0.5", "--weight", "pow:3", "--n", "2")
        data = json.loads(out)
        assert code == 2
        assert data["value"] is None and "reason" in data

    def test_mc_same_seed_byte_identical(self):
        argv = ("rss", "--dist", "exp:1", "--weight", "pow:1", "--n", "2", "--method", "mc",
                "--draws", "5000", "--seed", "4")
        assert invoke(*argv)[1] == invoke(*argv)[1]

    def test_compare(self):
        code, out, _ = invoke("compare", "--dist", "uniform:0.5,1", "--dist2", "uniform:0,1",
                              "--weight", "pow:1", "--n", "2")
        rows = json.loads(out)
        assert code == 0 and [r["role"] for r in rows] == ["X", "Y"]
        assert rows[0]["relation"] == "<"


class TestErrors:
    def test_bad_dist_names_token(self):
        code, _, err = invoke("compute", "--dist", "gamma:2")
        assert code == 1 and "gamma" in err

    def test_bad_weight(self):
        code, _, err = invoke("compute", "--dist", "exp:1", "--weight", "log")
        assert code == 1 and "log" in err

    def test_unknown_flag(self):
        assert invoke("compute", "--dist", "exp:1", "--bogus")[0] == 1

    def test_missing_dist(self):
        assert invoke("rss", "--n", "2")[0] == 1

    def test_no_closed_form(self):
        assert invoke("rss", "--dist", "beta:2,3", "--method", "closed")[0] == 2

    def test_theorem_failure_exit(self):
        code, out, _ = invoke("verify", "--suite", "rss-element", "--dist", "power:3",
                              "--n", "3")
        assert code == 3 and json.loads(out)["pass"] is False


class TestVerify:
    def test_symmetry(self):
        code, out, _ = invoke("verify", "--suite", "symmetry", "--dist", "uniform:-1,1",
                              "--weight", "pow:1", "--odd-n", "1,3,5")
        data = json.loads(out)
        assert code == 0 and data["pass"] is True
        assert data["theorem_id"] == "symmetry_characterization"

    def test_bound(self):
        code, out, _ = invoke("verify", "--suite", "bound", "--dist", "exp:1",
                              "--weight", "pow:1", "--n-list", "2,3")
        assert code == 0 and json.loads(out)["cases_run"] == 2

    def test_witness_dir(self, tmp_path):
        code, _, _ = invoke("verify", "--suite", "rss-element", "--dist", "power:3", "--n", "3",
                            "--witness-dir", str(tmp_path))
        assert code == 3 and list(tmp_path.glob("rss_element_monotone-*.json"))


class TestTable:
    def test_pareto_sweep(self):
        code, out, _ = invoke("table", "--family", "pareto", "--param", "2,3", "--m-list", "1",
                              "--n-list", "1,2")
        rows = json.loads(out)
        assert code == 0 and len(rows) == 4
        assert all(r["discrepancy"] < 1e-7 for r in rows)

    def test_uniform_row(self):
        _, out, _ = invoke("table", "--family", "power", "--param", "1", "--m-list", "0",
                           "--n-list", "2")
        assert json.loads(out)[0]["quad"] == pytest.approx(-8 / 9, rel=1e-12)

    def test_empty_sweep(self):
        code, _, err = invoke("table", "--family", "power", "--param", "", "--m-list", "1",
                              "--n-list", "2")
        assert code == 1 and "non-empty" in err

    def test_csv_has_17_digits(self):
        code, out, _ = invoke("table", "--family", "power", "--param", "2", "--m-list", "1",
                              "--n-list", "2", "--output", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        value = rows[0]["quad"]
        assert float(value) == json.loads(invoke(
            "table", "--family", "power", "--param", "2", "--m-list", "1", "--n-list", "2")[1]
        )[0]["quad"]
        assert len(value.lstrip("-").replace(".", "").lstrip("0").split("e")[0]) <= 17

    def test_tsv(self):
        _, out, _ = invoke("sample", "--dist", "exp:1", "--n", "3", "--reps", "2",
                           "--output", "tsv")
        header = out.splitlines()[0].split("\t")
        assert header[:5] == ["rep", "scheme", "n", "dist", "seed"]
        assert len(out.splitlines()) == 3


class TestConfig:
    @pytest.mark.parametrize("argv", [
        ["rss", "--dist", "exp:1", "--weight", "pow:2", "--n", "3"],
        ["compute", "--dist", "uniform:0,1", "--method", "mc", "--seed", "9", "--output", "csv"],
        ["srs", "--dist", "power:2.5", "--tol", "1e-08"],
    ])
    def test_render_parse_round_trip(self, argv):
        cfg, _ = parse_config(argv)
        again, _ = parse_config(cfg.render())
        assert again == cfg
        assert again.render() == cfg.render()

    def test_canonical_form(self):
        cfg, _ = parse_config(["rss", "--dist", "exp:1", "--weight", "pow:1"])
        assert isinstance(cfg, RunConfig)
        assert cfg.render() == parse_config(["rss", "--weight", "pow:1.0", "--dist",
                                             "exp:1.0"])[0].render()

    def test_flags_beat_config(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"dist": "exp:1", "n": 3, "weight": "pow:1"}))
        cfg, _ = parse_config(["rss", "--config", str(path), "--n", "2"])
        assert cfg.n == 2 and cfg.weight_spec == parse_config(
            ["rss", "--weight", "pow:1"])[0].weight_spec

    def test_unknown_config_key(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"colour": "red"}))
        code, _, err = invoke("rss", "--config", str(path))
        assert code == 1 and "colour" in err
