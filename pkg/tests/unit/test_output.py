"""Tests for CLI output formatting."""

from pathlib import Path

import pytest

from src.cli.output import format_evaluation, format_run_summary, format_tool_output
from src.evaluation import (
    categorize_failures,
    compute_metrics,
    count_hallucinations,
    evaluate_task,
    undelivered_evaluation,
)
from src.harness import EvaluationFile, RunSummary
from src.orchestration import RevisitStats, RunMode
from src.plans import parse_plan
from src.sandbox import execute_tool, load_sandbox
from tests.support.corpus import R1, SANDBOX_DIR, goal


@pytest.fixture(scope="module")
def sandbox():
    return load_sandbox(SANDBOX_DIR)


@pytest.fixture
def evaluation(sandbox):
    flawed = parse_plan(R1.replace("Pantheon, Rome", "Sky Tower, Rome"))
    evals = [
        evaluate_task(goal("t07"), parse_plan(R1), sandbox),
        evaluate_task(goal("t10"), flawed, sandbox),
        undelivered_evaluation("t08"),
    ]
    return EvaluationFile(
        experiment="fixed",
        mode=RunMode.FIXED,
        config_digests=("abc",),
        metrics=compute_metrics(evals),
        failure_areas=categorize_failures(evals),
        hallucinations=count_hallucinations([parse_plan(R1), flawed, None], sandbox),
        revisits=RevisitStats(task_count=3),
        tasks=tuple(evals),
    )


class TestFormatRunSummary:
    """Tests for format_run_summary function."""

    def test_counts(self):
        """Test that the summary lists executed, skipped and delivered counts."""
        summary = RunSummary(
            experiment="orchestrated",
            runs_dir=Path("out/runs/orchestrated"),
            executed=("t01", "t02"),
            skipped=("t03",),
            delivered=("t01",),
        )

        output = format_run_summary(summary)

        assert "🧳 RUN: orchestrated" in output
        assert "Executed: 2" in output
        assert "Skipped (trace exists): 1" in output
        assert "Delivered: 1" in output
        assert "Errored" not in output

    def test_errored_tasks_are_named(self):
        """Test that crashed tasks are listed by id."""
        summary = RunSummary(
            experiment="fixed",
            runs_dir=Path("out"),
            executed=("t01",),
            errored=("t01",),
        )

        assert "Errored: 1 (t01)" in format_run_summary(summary)


class TestFormatEvaluation:
    """Tests for format_evaluation function."""

    def test_metrics_section(self, evaluation):
        """Test that all six rates are shown."""
        output = format_evaluation(evaluation)

        assert "🎯 EVALUATION: fixed (fixed)" in output
        assert "Delivery Rate" in output
        assert "66.67%" in output
        assert "Final Pass Rate" in output
        assert "33.33%" in output
        assert "Tasks: 3" in output
        assert "📉 Failed constraints by area:" in output
        assert "attraction: 1" in output
        assert "Task Details" not in output

    def test_verbose_lists_failed_constraints(self, evaluation):
        """Test that verbose output names each failed constraint."""
        output = format_evaluation(evaluation, verbose=True)

        assert "📝 Task Details:" in output
        assert "t07: " in output
        assert "Budget/Cost Compliance: total cost 1120.00 exceeds budget 1100.00" in output
        assert "'Sky Tower' is not in the sandbox" in output
        assert "plan not delivered" in output


class TestFormatToolOutput:
    """Tests for format_tool_output function."""

    def test_results(self, sandbox):
        """Test that records are described one per line."""
        records = execute_tool(sandbox, "hotel_search", ["Rome"])

        output = format_tool_output("hotel_search", ["Rome"], records)

        assert output.startswith("hotel_search(Rome) returned 3 result(s):")
        assert "Hotel Trevi" in output

    def test_no_results(self):
        """Test that an empty result shows a warning."""
        output = format_tool_output("hotel_search", ["Paris"], [])

        assert "⚠️" in output
        assert "hotel_search(Paris) returned no results" in output
