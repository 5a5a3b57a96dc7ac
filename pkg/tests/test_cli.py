from __future__ import annotations

import json
from pathlib import Path

import pytest

from indexforge.cli import main
from indexforge.datasets import data_path

FIXTURE_DATA = str(data_path("nuts3.csv"))
FIXTURE_MANIFEST = str(data_path("manifest.csv"))
FIXTURE_TABLE3 = str(data_path("table3.csv"))


def run(argv):
    return main(argv)


class TestValidate:
    def test_bundled_fixture_valid(self, capsys):
        code = run(["validate", "--data", FIXTURE_DATA, "--manifest", FIXTURE_MANIFEST])
        out = capsys.readouterr().out
        assert code == 0
        assert "9 regions, 25 indicators" in out

    def test_json_diagnostics(self, capsys):
        code = run(["validate", "--json"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["status"] == "ok"
        assert payload["pillar_sizes"] == {
            "Population": 5, "SocialWelfare": 7, "Economy": 7, "Environment": 6,
        }

    def test_non_numeric_cell_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        text = Path(FIXTURE_DATA).read_text(encoding="utf-8").replace("103.80", "oops", 1)
        bad.write_text(text, encoding="utf-8")
        code = run(["validate", "--data", str(bad), "--manifest", FIXTURE_MANIFEST])
        err = capsys.readouterr().err
        assert code == 2
        assert "Alto Minho" in err and "PopDens" in err

    def test_missing_manifest_exit_3(self, tmp_path):
        code = run(["validate", "--data", FIXTURE_DATA, "--manifest", str(tmp_path / "nope.csv")])
        assert code == 3


class TestCompute:
    def test_all_methods_artifacts(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = run(["compute", "--methods", "all", "--out", str(out)])
        assert code == 0
        for name in (
            "abreu.csv", "abreu.json", "delphi.csv", "delphi.json",
            "pca.csv", "pca.json", "normalization.csv", "pca_audit.json",
        ):
            assert (out / name).exists(), name

    def test_abreu_artifact_matches_reference(self, tmp_path):
        from conftest import REGIONS, REFERENCE_ABREU

        out = tmp_path / "out"
        run(["compute", "--methods", "abreu", "--out", str(out)])
        payload = json.loads((out / "abreu.json").read_text(encoding="utf-8"))
        for region, expected in zip(REGIONS, REFERENCE_ABREU):
            assert payload["rescaled_index"][region] == pytest.approx(expected, abs=0.03)

    def test_weights_override_routing(self, tmp_path):
        override = tmp_path / "weights.csv"
        override.write_text(
            "scope,id,weight\npillar,Economy,100\npillar,Population,1\n"
            "pillar,SocialWelfare,1\npillar,Environment,1\n",
            encoding="utf-8",
        )
        out_default = tmp_path / "default"
        out_custom = tmp_path / "custom"
        run(["compute", "--methods", "delphi", "--out", str(out_default)])
        run(["compute", "--methods", "delphi", "--out", str(out_custom),
             "--weights", str(override)])
        default_payload = json.loads((out_default / "delphi.json").read_text(encoding="utf-8"))
        custom_payload = json.loads((out_custom / "delphi.json").read_text(encoding="utf-8"))
        assert default_payload["raw_index"] != custom_payload["raw_index"]

    def test_weights_scaling_is_noop(self, tmp_path):
        base = tmp_path / "w1.csv"
        scaled = tmp_path / "w2.csv"
        rows = [("Economy", 28.4), ("Population", 21.0), ("SocialWelfare", 26.2), ("Environment", 24.0)]
        base.write_text(
            "scope,id,weight\n" + "".join(f"pillar,{p},{w}\n" for p, w in rows),
            encoding="utf-8",
        )
        scaled.write_text(
            "scope,id,weight\n" + "".join(f"pillar,{p},{w * 7.5}\n" for p, w in rows),
            encoding="utf-8",
        )
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        run(["compute", "--methods", "delphi", "--out", str(out1), "--weights", str(base)])
        run(["compute", "--methods", "delphi", "--out", str(out2), "--weights", str(scaled)])
        assert (out1 / "delphi.csv").read_bytes() == (out2 / "delphi.csv").read_bytes()

    def test_determinism_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        run(["compute", "--methods", "all", "--out", str(out1)])
        run(["compute", "--methods", "all", "--out", str(out2)])
        for child in sorted(out1.iterdir()):
            assert (out2 / child.name).read_bytes() == child.read_bytes(), child.name

    def test_unknown_method_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            run(["compute", "--methods", "sorcery"])
        assert exc_info.value.code == 2


class TestCompare:
    def test_published_reproduces_reference_correlations(self, tmp_path, capsys):
        out = tmp_path / "cmp"
        code = run(["compare", "--published", FIXTURE_TABLE3, "--out", str(out)])
        assert code == 0
        payload = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert payload["pairwise_r"]["abreu:delphi"] == pytest.approx(0.96, abs=0.005)
        assert payload["pairwise_r"]["abreu:pca"] == pytest.approx(0.86, abs=0.005)
        assert payload["pairwise_r"]["delphi:pca"] == pytest.approx(0.80, abs=0.005)
        for name in ("report.csv", "parallel.svg", "parallel.csv", "scatter.csv"):
            assert (out / name).exists()

    def test_computed_full_report(self, tmp_path):
        out = tmp_path / "cmp"
        code = run(["compare", "--methods", "all", "--out", str(out)])
        assert code == 0
        payload = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert len(payload["methods"]) == 3
        assert payload["pairwise_r"]["abreu:abreu"] == 1.0

    def test_single_method_exit_2(self, tmp_path):
        code = run(["compare", "--methods", "abreu", "--out", str(tmp_path / "x")])
        assert code == 2


class TestReport:
    def test_end_to_end(self, tmp_path):
        out = tmp_path / "all"
        code = run(["report", "--methods", "all", "--out", str(out)])
        assert code == 0
        for name in ("abreu.csv", "pca_audit.json", "report.json", "parallel.svg"):
            assert (out / name).exists()
