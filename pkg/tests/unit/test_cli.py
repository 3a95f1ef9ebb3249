"""Tests for the travel-mas command line."""

from unittest.mock import patch

import pytest
from click.testing import CliRunner

from src.cli.main import EXIT_RUNTIME, EXIT_USAGE, cli
from src.config import get_settings
from src.orchestration import RunMode
from tests.support.corpus import SANDBOX_DIR, TASKS_FILE, write_cassettes


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in ("MAX_STEPS", "MAX_CRITIC_ROUNDS", "PROMPT_DIR", "MODEL_NAME"):
        monkeypatch.delenv(f"TRAVEL_MAS_{name}", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def runner():
    return CliRunner()


def run_fixed(runner, tmp_path):
    cassettes = write_cassettes(tmp_path / "cassettes", RunMode.FIXED)
    args = [
        *("--tasks", str(TASKS_FILE)),
        *("--sandbox", str(SANDBOX_DIR)),
        *("--mode", "fixed"),
        *("--cassette-dir", str(cassettes)),
        *("--out", str(tmp_path / "out")),
    ]
    return runner.invoke(cli, ["run", *args])


def evaluate_fixed(runner, tmp_path):
    args = [
        *("--traces", str(tmp_path / "out" / "runs" / "fixed")),
        *("--sandbox", str(SANDBOX_DIR)),
        *("--tasks", str(TASKS_FILE)),
        *("--out", str(tmp_path / "eval" / "fixed.eval")),
    ]
    return runner.invoke(cli, ["evaluate", *args])


class TestToolsCommand:
    """Tests for the tools command."""

    def test_flight_search(self, runner):
        """Test that matching flights are printed."""
        args = ["Boston", "Rome", "2022-03-10", "--sandbox", str(SANDBOX_DIR)]
        result = runner.invoke(cli, ["tools", "flight_search", *args])

        assert result.exit_code == 0
        assert "returned 2 result(s)" in result.output
        assert "F1001" in result.output
        assert "F1003" not in result.output

    def test_wrong_arity(self, runner):
        """Test that a wrong argument count is a usage error with a hint."""
        result = runner.invoke(
            cli, ["tools", "hotel_search", "Rome", "Lisbon", "--sandbox", str(SANDBOX_DIR)]
        )

        assert result.exit_code == EXIT_USAGE
        assert "Invalid arguments" in result.output
        assert "💡 Usage:" in result.output

    def test_unknown_tool(self, runner):
        """Test that tool names are restricted to the four tools."""
        result = runner.invoke(cli, ["tools", "weather_search", "Rome", "--sandbox", "x"])

        assert result.exit_code == EXIT_USAGE

    def test_missing_sandbox(self, runner, tmp_path):
        """Test that a missing sandbox directory is a configuration error."""
        result = runner.invoke(
            cli, ["tools", "hotel_search", "Rome", "--sandbox", str(tmp_path / "none")]
        )

        assert result.exit_code == EXIT_USAGE
        assert "Configuration Error" in result.output


class TestRunCommand:
    """Tests for the run command."""

    def test_fixed_run_writes_traces(self, runner, tmp_path):
        """Test that a replayed run stores one trace per task."""
        result = run_fixed(runner, tmp_path)

        assert result.exit_code == 0, result.output
        assert "Executed: 10" in result.output
        assert "Delivered: 10" in result.output
        assert len(list((tmp_path / "out" / "runs" / "fixed").glob("*.trace"))) == 10

    def test_rerun_skips_existing_traces(self, runner, tmp_path):
        """Test that a second run resumes instead of repeating work."""
        run_fixed(runner, tmp_path)

        result = run_fixed(runner, tmp_path)

        assert result.exit_code == 0
        assert "Executed: 0" in result.output
        assert "Skipped (trace exists): 10" in result.output

    def test_scripted_run_needs_cassettes(self, runner, tmp_path):
        """Test that replaying without a cassette directory is a usage error."""
        args = ["--tasks", str(TASKS_FILE), "--sandbox", str(SANDBOX_DIR), "--out", str(tmp_path)]
        result = runner.invoke(cli, ["run", *args])

        assert result.exit_code == EXIT_USAGE
        assert "scripted backend requires a script path" in result.output

    def test_missing_task_file(self, runner, tmp_path):
        """Test that a missing task file is a configuration error."""
        result = runner.invoke(
            cli,
            ["run", "--tasks", str(tmp_path / "none.jsonl"), "--sandbox", str(SANDBOX_DIR)],
        )

        assert result.exit_code == EXIT_USAGE
        assert "task file not found" in result.output

    def test_missing_required_option(self, runner):
        """Test that click usage errors exit with the usage code."""
        result = runner.invoke(cli, ["run", "--sandbox", str(SANDBOX_DIR)])

        assert result.exit_code == EXIT_USAGE


class TestEvaluateCommand:
    """Tests for the evaluate command."""

    def test_evaluates_run(self, runner, tmp_path):
        """Test that evaluation prints the rates and writes the file."""
        run_fixed(runner, tmp_path)

        result = evaluate_fixed(runner, tmp_path)

        assert result.exit_code == 0, result.output
        assert "Final Pass Rate" in result.output
        assert "60.00%" in result.output
        assert (tmp_path / "eval" / "fixed.eval").is_file()

    def test_no_traces(self, runner, tmp_path):
        """Test that an empty traces directory is a runtime error."""
        (tmp_path / "out" / "runs" / "fixed").mkdir(parents=True)

        result = evaluate_fixed(runner, tmp_path)

        assert result.exit_code == EXIT_RUNTIME
        assert "Evaluation Error" in result.output


class TestReportCommand:
    """Tests for the report command."""

    def test_single_report(self, runner, tmp_path):
        """Test that a report table is printed and saved."""
        run_fixed(runner, tmp_path)
        evaluate_fixed(runner, tmp_path)

        result = runner.invoke(
            cli, ["report", str(tmp_path / "eval" / "fixed.eval"), "--out", str(tmp_path / "rep")]
        )

        assert result.exit_code == 0, result.output
        assert "Final Pass Rate" in result.output
        assert (tmp_path / "rep" / "report.csv").is_file()

    def test_bad_schema(self, runner, tmp_path):
        """Test that an unreadable evaluation file is a runtime error."""
        path = tmp_path / "bad.eval"
        path.write_text('{"schema_version": 9}', encoding="utf-8")

        result = runner.invoke(cli, ["report", str(path)])

        assert result.exit_code == EXIT_RUNTIME
        assert "schema version 9" in result.output


class TestModelsCommand:
    """Tests for the models command."""

    def test_lists_models(self, runner):
        """Test that served models are listed with the default marked."""
        with patch("src.cli.main.list_remote_models", return_value=["gpt-4o", "llama3"]):
            result = runner.invoke(cli, ["models"])

        assert result.exit_code == 0
        assert "(default)" in result.output
        assert "Total: 2 models" in result.output

    def test_unreachable_endpoint(self, runner):
        """Test that a connection failure is a runtime error."""
        with patch("src.cli.main.list_remote_models", side_effect=ConnectionError("down")):
            result = runner.invoke(cli, ["models"])

        assert result.exit_code == EXIT_RUNTIME
        assert "TRAVEL_MAS_BASE_URL" in result.output


class TestConfigCommand:
    """Tests for the config group."""

    def test_show(self, runner, monkeypatch):
        """Test that settings and environment overrides are shown."""
        monkeypatch.setenv("TRAVEL_MAS_MAX_STEPS", "12")

        result = runner.invoke(cli, ["config", "show"])

        assert result.exit_code == 0
        assert "Current Configuration" in result.output
        assert "Max steps" in result.output
        assert "12" in result.output

    def test_version(self, runner):
        """Test the version flag."""
        result = runner.invoke(cli, ["--version"])

        assert result.exit_code == 0
        assert "0.1.0" in result.output
