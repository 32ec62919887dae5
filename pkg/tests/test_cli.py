"""End-to-end tests of the curve-extremes command line."""

import json
from pathlib import Path

import pandas as pd
import pytest
import yaml

from src.app.main import main


def error_records(stderr: str) -> list[dict]:
    """The JSON error records among the log lines on stderr."""
    records = []
    for line in stderr.splitlines():
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            continue
        if isinstance(record, dict) and set(record) == {"message", "error_code", "details"}:
            records.append(record)
    return records


def run_ok(capsys, *argv: str) -> Path:
    status = main(list(argv))
    captured = capsys.readouterr()
    assert status == 0, captured.err
    return Path(captured.out.strip().splitlines()[-1])


@pytest.mark.e2e
class TestConstantCommand:
    """Test the constant command."""

    ARGV = ("constant", "--kind", "pickands-finite", "--alpha", "1", "--S", "1", "--step", "0.1", "--reps", "200")

    def test_same_seed_same_bytes(self, capsys, tmp_path):
        first = run_ok(capsys, *self.ARGV, "--seed", "4", "--run-dir", str(tmp_path / "a"))
        second = run_ok(capsys, *self.ARGV, "--seed", "4", "--threads", "2", "--run-dir", str(tmp_path / "b"))

        assert first == tmp_path / "a"
        assert (first / "constants.csv").read_bytes() == (second / "constants.csv").read_bytes()
        frame = pd.read_csv(first / "constants.csv")
        assert frame["constant_id"].tolist() == ["pickands_finite"]

        manifest = yaml.safe_load((first / "manifest.yaml").read_text())
        assert manifest["seed"] == 4
        assert manifest["artifacts"] == ["constants.csv"]
        assert manifest["config"]["params"]["kind"] == "pickands-finite"

    def test_invalid_alpha_is_rejected_before_running(self, capsys, output_dir):
        status = main(["constant", "--alpha", "3", "--output-dir", str(output_dir)])
        records = error_records(capsys.readouterr().err)

        assert status == 2
        assert records[-1]["error_code"] == "CONFIG_VALIDATION_ERROR"
        assert records[-1]["details"]["field"] == "params.alpha"
        assert list(output_dir.iterdir()) == []

    def test_unparseable_argument_writes_error_record(self, capsys, output_dir):
        status = main(["constant", "--alpha", "x", "--output-dir", str(output_dir)])
        records = error_records(capsys.readouterr().err)

        assert status == 2
        assert records[-1]["error_code"] == "CONFIG_VALIDATION_ERROR"
        assert records[-1]["details"]["field"] == "arguments"
        assert "--alpha" in records[-1]["details"]["reason"]
        assert list(output_dir.iterdir()) == []

    def test_unknown_command_writes_error_record(self, capsys):
        status = main(["no-such-command"])
        records = error_records(capsys.readouterr().err)

        assert status == 2
        assert records[-1]["error_code"] == "CONFIG_VALIDATION_ERROR"

    def test_help_still_exits_cleanly(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["constant", "--help"])

        assert exc_info.value.code == 0
        assert "--alpha" in capsys.readouterr().out

    def test_failed_precondition_writes_error_record(self, capsys, tmp_path):
        run_dir = tmp_path / "run"
        status = main(
            ["constant", "--kind", "pickands-finite", "--S", "1.03", "--step", "0.05", "--run-dir", str(run_dir)]
        )

        assert status == 3
        assert error_records(capsys.readouterr().err)[-1]["error_code"] == "PRECONDITION_ERROR"
        assert json.loads((run_dir / "error.json").read_text())["error_code"] == "PRECONDITION_ERROR"
        assert not (run_dir / "manifest.yaml").exists()


@pytest.mark.e2e
class TestAsymptoteCommands:
    """Test the asymptote and fbm-sum commands."""

    def test_pinned_preset(self, capsys, output_dir):
        run_dir = run_ok(
            capsys,
            "asymptote",
            "--preset",
            "cor42-alpha1",
            "--constants",
            "pinned",
            "--pin",
            "hat_H_1^(1,-1)=1.5",
            "--output-dir",
            str(output_dir),
        )

        assert run_dir.parent == output_dir
        row = pd.read_csv(run_dir / "asymptote.csv").iloc[0]
        assert row["K"] == pytest.approx(3.0)
        assert row["p"] == 2.0
        assert row["case"] == "fbm-sum/alpha1=alpha2=1"
        used = pd.read_csv(run_dir / "constants_used.csv")
        assert used["constant"].tolist() == ["hat_H_1^(1,-1)"]
        table = pd.read_csv(run_dir / "asymptote_table.csv")
        assert table["u"].tolist() == [2.5, 3.0, 3.5, 4.0, 5.0]

    def test_manifest_reruns_the_command(self, capsys, output_dir):
        first = run_ok(
            capsys,
            "asymptote",
            "--preset",
            "cor41-sub1",
            "--constants",
            "pinned",
            "--pin",
            "H_0.5=1.3",
            "--pin",
            "H_0.75=1.1",
            "--output-dir",
            str(output_dir),
        )
        second = run_ok(capsys, "asymptote", "--config", str(first / "manifest.yaml"))

        assert second != first
        assert (first / "asymptote.csv").read_bytes() == (second / "asymptote.csv").read_bytes()
        manifest = yaml.safe_load((second / "manifest.yaml").read_text())
        assert manifest["config"]["preset"] == "cor41-sub1"

    def test_fbm_sum_cross_check(self, capsys, tmp_path):
        run_dir = run_ok(capsys, "fbm-sum", "--alpha1", "1", "--alpha2", "1.5", "--run-dir", str(tmp_path / "run"))

        check = pd.read_csv(run_dir / "cross_check.csv")
        assert check["source"].tolist() == ["fbm-sum", "4x boundary curve"]
        assert check["rel_diff"].iloc[1] <= 1e-6
        manifest = yaml.safe_load((run_dir / "manifest.yaml").read_text())
        assert manifest["warnings"] == []

    def test_missing_pinned_constant(self, capsys, tmp_path):
        run_dir = tmp_path / "run"
        status = main(
            ["fbm-sum", "--alpha1", "0.5", "--alpha2", "0.75", "--constants", "pinned", "--run-dir", str(run_dir)]
        )

        assert status == 4
        record = json.loads((run_dir / "error.json").read_text())
        assert record["error_code"] == "CONSTANT_UNAVAILABLE"
        assert record["details"]["constant_id"] in ("H_0.5", "H_0.75")
        capsys.readouterr()

    def test_preset_for_another_command(self, capsys):
        assert main(["compare", "--preset", "cor42-alpha1"]) == 2
        assert error_records(capsys.readouterr().err)[-1]["details"]["field"] == "preset"


@pytest.mark.e2e
class TestHarnessCommands:
    """Test simulate, compare and check-expansions."""

    def test_simulate_fbm(self, capsys, tmp_path):
        run_dir = run_ok(
            capsys, "simulate", "--alpha", "0.7", "--n", "16", "--paths", "3", "--run-dir", str(tmp_path / "run")
        )

        frame = pd.read_csv(run_dir / "samples.csv")
        assert list(frame.columns) == ["path", "t", "value"]
        assert len(frame) == 3 * 17
        assert (frame.loc[frame["t"] == 0.0, "value"] == 0.0).all()

    def test_compare(self, capsys, tmp_path):
        run_dir = run_ok(
            capsys,
            "compare",
            "--alpha1",
            "1",
            "--alpha2",
            "1.5",
            "--u",
            "1",
            "2",
            "--grid-ladder",
            "16",
            "32",
            "--reps",
            "200",
            "--plot",
            "--run-dir",
            str(tmp_path / "run"),
        )

        frame = pd.read_csv(run_dir / "comparison.csv")
        assert len(frame) == 4
        assert set(frame["case"]) == {"fbm-sum/alpha1<alpha2,alpha2>1"}
        assert frame["ratio"].notna().all()
        assert "<svg" in (run_dir / "comparison.svg").read_text()

    def test_check_expansions(self, capsys, tmp_path):
        run_dir = run_ok(
            capsys, "check-expansions", "--alpha1", "0.5", "--alpha2", "1.5", "--run-dir", str(tmp_path / "run")
        )

        frame = pd.read_csv(run_dir / "expansions.csv")
        assert set(frame["expansion"]) == {"variance-s", "variance-t", "correlation"}
        assert len(frame) == 9
