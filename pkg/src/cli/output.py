"""CLI output formatting."""

from collections.abc import Sequence

import click

from src.harness import EvaluationFile, RunSummary
from src.sandbox import ToolRecord, describe_results

SEPARATOR = "=" * 60


def format_run_summary(summary: RunSummary) -> str:
    """Format what a batch run did.

    Args:
        summary: Result of cmd_run

    Returns:
        Formatted output string
    """
    lines = ["\n" + SEPARATOR]
    lines.append(click.style(f"🧳 RUN: {summary.experiment}", fg="cyan", bold=True))
    lines.append(SEPARATOR)

    lines.append("\n" + click.style("📊 Statistics:", bold=True))
    lines.append(f"   • Executed: {len(summary.executed)}")
    lines.append(f"   • Skipped (trace exists): {len(summary.skipped)}")
    lines.append(f"   • Delivered: {len(summary.delivered)}")
    if summary.errored:
        errored = ", ".join(summary.errored)
        lines.append(click.style(f"   • Errored: {len(summary.errored)} ({errored})", fg="red"))
    lines.append(click.style(f"   • Traces: {summary.runs_dir}", dim=True))

    lines.append("\n" + SEPARATOR + "\n")
    return "\n".join(lines)


def format_evaluation(evaluation: EvaluationFile, verbose: bool = False) -> str:
    """Format the metrics of one evaluation file, with per-task verdicts when verbose."""
    metrics = evaluation.metrics
    lines = ["\n" + SEPARATOR]
    lines.append(
        click.style(
            f"🎯 EVALUATION: {evaluation.experiment} ({evaluation.mode.value})",
            fg="cyan",
            bold=True,
        )
    )
    lines.append(SEPARATOR)

    rows = [
        ("Delivery Rate", metrics.delivery_rate),
        ("Commonsense Micro Pass Rate", metrics.commonsense_micro),
        ("Commonsense Macro Pass Rate", metrics.commonsense_macro),
        ("Hard Constraint Micro Pass Rate", metrics.hard_micro),
        ("Hard Constraint Macro Pass Rate", metrics.hard_macro),
        ("Final Pass Rate", metrics.final_pass_rate),
    ]
    for label, value in rows:
        lines.append(f"{label:.<40} {click.style(f'{value:.2f}%', fg='green')}")
    lines.append(click.style(f"   Tasks: {metrics.task_count}", dim=True))

    lines.append("\n" + click.style("📉 Failed constraints by area:", bold=True))
    for area, share in evaluation.failure_areas.items():
        lines.append(f"   • {area.value}: {share:.2f}%")

    hallucinations = evaluation.hallucinations
    lines.append("\n" + click.style("👻 Hallucinated mentions:", bold=True))
    for kind, count in hallucinations.counts.items():
        lines.append(f"   • {kind}: {count}")
    lines.append(f"   • plans affected: {hallucinations.share:.2f}%")

    if verbose:
        lines.append("\n" + click.style("📝 Task Details:", bold=True))
        for task in evaluation.tasks:
            status = (
                click.style("✅ pass", fg="green")
                if task.final_passed
                else click.style("❌ fail", fg="red")
            )
            lines.append(f"\n   {task.task_id}: {status}")
            for result in task.results:
                if not result.passed:
                    lines.append(f"      - {result.name}: {result.detail}")

    lines.append("\n" + SEPARATOR + "\n")
    return "\n".join(lines)


def format_tool_output(name: str, arguments: Sequence[str], records: Sequence[ToolRecord]) -> str:
    if not records:
        call = f"{name}({', '.join(arguments)})"
        return click.style(f"⚠️  {call} returned no results", fg="yellow")
    return describe_results(name, arguments, records)
