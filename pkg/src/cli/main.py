"""CLI main entry point."""

import asyncio
import os
import sys
from pathlib import Path
from typing import Any

import click

from src.cli.output import format_evaluation, format_run_summary, format_tool_output
from src.config import PlannerSettings, configure_logging, get_settings, list_remote_models
from src.evaluation import EvaluationError
from src.harness import (
    ReportSchemaError,
    TaskLoadError,
    cmd_evaluate,
    cmd_report,
    cmd_run,
    load_tasks,
    render_text,
)
from src.llm_gateway import BackendConfig, BackendKind, GatewayError
from src.orchestration import RunConfig, RunMode, TraceFormatError
from src.sandbox import TOOL_SPECS, SandboxLoadError, ToolArgumentError, execute_tool, load_sandbox

EXIT_USAGE = 1
EXIT_RUNTIME = 2

MODES = {
    "fixed": RunMode.FIXED,
    "orchestrated": RunMode.ORCHESTRATED,
    "single": RunMode.SINGLE_AGENT,
}


class PlannerGroup(click.Group):
    """Click group mapping usage errors to exit 1 and other click errors to exit 2."""

    def main(self, *args: Any, **kwargs: Any) -> Any:
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_RUNTIME)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)


def _fail(message: str, code: int, tip: str | None = None) -> None:
    click.echo(f"❌ {message}", err=True)
    if tip:
        click.echo(f"\n💡 {tip}", err=True)
    sys.exit(code)


def build_backend(
    settings: PlannerSettings, kind: BackendKind, cassette_dir: Path | None
) -> BackendConfig:
    """Backend settings for a run; scripted runs point at the cassette directory."""
    return BackendConfig(
        kind=kind,
        endpoint=settings.base_url if kind is BackendKind.REMOTE else None,
        api_key_env=settings.api_key_env,
        model_id=settings.model_name,
        max_attempts=settings.max_attempts,
        backoff_initial=settings.backoff_initial,
        timeout=settings.timeout,
        script_path=cassette_dir if kind is BackendKind.SCRIPTED else None,
    )


@click.group(cls=PlannerGroup)
@click.version_option(version="0.1.0", prog_name="travel-mas")
@click.option(
    "--log-level",
    default=None,
    help="Logging level (default: TRAVEL_MAS_LOG_LEVEL or WARNING)",
)
def cli(log_level: str | None) -> None:
    """Multi-agent travel planning: run episodes, evaluate plans, compare experiments."""
    configure_logging(log_level or get_settings().log_level)


@cli.command()
@click.option(
    "--tasks",
    "tasks_file",
    required=True,
    type=click.Path(path_type=Path),
    help="Task file (.jsonl, .json or upstream .csv)",
)
@click.option(
    "--sandbox",
    "sandbox_dir",
    required=True,
    type=click.Path(path_type=Path),
    help="Directory holding flights.csv, hotels.csv, restaurants.csv, attractions.csv",
)
@click.option(
    "--mode",
    type=click.Choice(sorted(MODES)),
    default="orchestrated",
    show_default=True,
    help="How agents are scheduled",
)
@click.option(
    "--backend",
    type=click.Choice([kind.value for kind in BackendKind]),
    default=BackendKind.SCRIPTED.value,
    show_default=True,
    help="Replay cassettes or call the configured endpoint",
)
@click.option(
    "--cassette-dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Per-task cassettes (<task_id>.jsonl) to replay, or to record into with --record",
)
@click.option("--record", is_flag=True, help="Record a cassette per task (remote backend)")
@click.option("--max-steps", type=click.IntRange(min=0), default=None, help="Public message limit")
@click.option(
    "--max-critic-rounds",
    type=click.IntRange(min=0),
    default=None,
    help="Critic/compiler refinement rounds",
)
@click.option(
    "--count-decisions",
    is_flag=True,
    help="Count orchestrator decisions toward --max-steps",
)
@click.option("--workers", type=click.IntRange(1, 64), default=None, help="Concurrent episodes")
@click.option(
    "--out",
    "out_dir",
    type=click.Path(path_type=Path),
    default=Path("out"),
    show_default=True,
    help="Output root; traces go to <out>/runs/<experiment>/",
)
@click.option("--experiment", default=None, help="Experiment name (default: the mode)")
def run(
    tasks_file: Path,
    sandbox_dir: Path,
    mode: str,
    backend: str,
    cassette_dir: Path | None,
    record: bool,
    max_steps: int | None,
    max_critic_rounds: int | None,
    count_decisions: bool,
    workers: int | None,
    out_dir: Path,
    experiment: str | None,
) -> None:
    """Run every task of a task file and store one trace per task.

    Tasks that already have a trace are skipped, so an interrupted run can be
    resumed with the same command.

    Examples:

        travel-mas run --tasks val.jsonl --sandbox data --mode fixed --cassette-dir cass/fixed

        travel-mas run --tasks val.jsonl --sandbox data --backend remote --record --cassette-dir rec
    """
    settings = get_settings()
    try:
        tasks = load_tasks(tasks_file)
        sandbox = load_sandbox(sandbox_dir)
        kind = BackendKind(backend)
        config = RunConfig(
            mode=MODES[mode],
            max_steps=settings.max_steps if max_steps is None else max_steps,
            max_critic_rounds=(
                settings.max_critic_rounds if max_critic_rounds is None else max_critic_rounds
            ),
            max_tool_rounds=settings.max_tool_rounds,
            count_orchestrator_decisions=count_decisions,
            temperature=settings.temperature,
            max_tokens=settings.max_tokens,
            prompt_dir=settings.prompt_dir,
            backend=build_backend(settings, kind, cassette_dir),
        )
    except (TaskLoadError, SandboxLoadError, ValueError) as e:
        _fail(f"Configuration Error: {e}", EXIT_USAGE)
        return

    name = experiment or mode
    click.echo(f"🚀 Running {len(tasks)} tasks ({mode}, {backend} backend) as '{name}'")
    try:
        summary = asyncio.run(
            cmd_run(
                tasks,
                sandbox,
                config,
                out_dir,
                name,
                workers=workers or settings.workers,
                cassette_dir=cassette_dir,
                record=record,
                requests_per_minute=settings.requests_per_minute,
            )
        )
    except ValueError as e:
        _fail(f"Configuration Error: {e}", EXIT_USAGE)
        return
    except (GatewayError, OSError) as e:
        _fail(f"Run Error: {e}", EXIT_RUNTIME)
        return

    click.echo(format_run_summary(summary))


@cli.command()
@click.option(
    "--traces",
    "traces_dir",
    required=True,
    type=click.Path(path_type=Path),
    help="Directory of .trace files (one experiment)",
)
@click.option("--sandbox", "sandbox_dir", required=True, type=click.Path(path_type=Path))
@click.option("--tasks", "tasks_file", required=True, type=click.Path(path_type=Path))
@click.option(
    "--out",
    "out_file",
    required=True,
    type=click.Path(path_type=Path),
    help="Evaluation file to write (e.g. out/eval/fixed.eval)",
)
@click.option("--experiment", default=None, help="Experiment name (default: traces dir name)")
@click.option("--verbose", "-v", is_flag=True, help="Show failed constraints per task")
def evaluate(
    traces_dir: Path,
    sandbox_dir: Path,
    tasks_file: Path,
    out_file: Path,
    experiment: str | None,
    verbose: bool,
) -> None:
    """Evaluate stored traces and print the benchmark metrics.

    Example:

        travel-mas evaluate --traces out/runs/fixed --sandbox data --tasks val.jsonl --out f.eval
    """
    try:
        tasks = load_tasks(tasks_file)
        sandbox = load_sandbox(sandbox_dir)
    except (TaskLoadError, SandboxLoadError) as e:
        _fail(f"Configuration Error: {e}", EXIT_USAGE)
        return

    try:
        result = cmd_evaluate(traces_dir, sandbox, tasks, out_file, experiment)
    except (EvaluationError, TraceFormatError, OSError) as e:
        _fail(f"Evaluation Error: {e}", EXIT_RUNTIME)
        return

    click.echo(format_evaluation(result, verbose=verbose))
    click.echo(f"💾 Evaluation saved to {out_file}")


@cli.command()
@click.argument(
    "eval_files",
    nargs=-1,
    required=True,
    type=click.Path(path_type=Path),
)
@click.option(
    "--out",
    "out_dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Directory for report.txt and report.csv",
)
def report(eval_files: tuple[Path, ...], out_dir: Path | None) -> None:
    """Compare evaluation files side by side (modes as columns, metrics as rows).

    Example:

        travel-mas report out/eval/fixed.eval out/eval/orchestrated.eval --out out/reports
    """
    try:
        _, table = cmd_report(list(eval_files), out_dir)
    except ReportSchemaError as e:
        _fail(f"Report Error: {e}", EXIT_RUNTIME)
        return

    click.echo(render_text(table), nl=False)
    if out_dir is not None:
        click.echo(f"\n💾 Report saved to {out_dir}")


@cli.command()
@click.argument("tool_name", type=click.Choice(sorted(TOOL_SPECS)))
@click.argument("arguments", nargs=-1)
@click.option("--sandbox", "sandbox_dir", required=True, type=click.Path(path_type=Path))
def tools(tool_name: str, arguments: tuple[str, ...], sandbox_dir: Path) -> None:
    """Query the sandbox with one of the four expert tools.

    Examples:

        travel-mas tools flight_search Boston Rome 2022-03-10 --sandbox data

        travel-mas tools hotel_search Rome --sandbox data
    """
    try:
        sandbox = load_sandbox(sandbox_dir)
        records = execute_tool(sandbox, tool_name, arguments)
    except SandboxLoadError as e:
        _fail(f"Configuration Error: {e}", EXIT_USAGE)
        return
    except ToolArgumentError as e:
        spec = TOOL_SPECS[tool_name]
        _fail(f"Invalid arguments: {e}", EXIT_USAGE, tip=f"Usage: {spec.signature}")
        return

    click.echo(format_tool_output(tool_name, arguments, records))


@cli.command()
def models() -> None:
    """List the models served by the configured endpoint.

    Example:

        travel-mas models
    """
    settings = get_settings()
    try:
        available_models = list_remote_models(settings.base_url, timeout=settings.timeout)
    except ConnectionError as e:
        _fail(str(e), EXIT_RUNTIME, tip="Check TRAVEL_MAS_BASE_URL and that the server is up")
        return
    except RuntimeError as e:
        _fail(f"Error fetching models: {e}", EXIT_RUNTIME)
        return

    if not available_models:
        click.echo("⚠️  No models found.")
        return

    click.echo(click.style("📦 Available Models:", bold=True, fg="cyan"))
    click.echo()
    for i, model in enumerate(sorted(available_models), 1):
        if model == settings.model_name:
            click.echo(f"  {i}. {click.style(model, fg='green', bold=True)} (default)")
        else:
            click.echo(f"  {i}. {model}")
    click.echo(f"\n✓ Total: {len(available_models)} models")


@cli.group()
def config() -> None:
    """Inspect configuration settings."""


@config.command(name="show")
def config_show() -> None:
    """Display current configuration settings.

    Shows all values including defaults and TRAVEL_MAS_* environment overrides.
    """
    try:
        cfg = get_settings()
    except ValueError as e:
        _fail(f"Error loading configuration: {e}", EXIT_USAGE)
        return

    click.echo(click.style("\n⚙️  Current Configuration:", bold=True, fg="cyan"))
    click.echo("=" * 60)
    settings = [
        ("Base URL", cfg.base_url),
        ("Model", cfg.model_name),
        ("API key variable", cfg.api_key_env),
        ("Temperature", cfg.temperature),
        ("Max Tokens", cfg.max_tokens),
        ("Timeout", f"{cfg.timeout}s"),
        ("Retry attempts", cfg.max_attempts),
        ("Initial backoff", f"{cfg.backoff_initial}s"),
        ("Requests/minute", cfg.requests_per_minute or "unlimited"),
        ("Max steps", cfg.max_steps),
        ("Max critic rounds", cfg.max_critic_rounds),
        ("Max tool rounds", cfg.max_tool_rounds),
        ("Workers", cfg.workers),
        ("Prompt directory", cfg.prompt_dir or "(bundled)"),
        ("Log level", cfg.log_level),
    ]
    for label, value in settings:
        click.echo(f"{label:.<25} {click.style(str(value), fg='green')}")
    click.echo("=" * 60)
    click.echo("\n💡 To modify settings, set environment variables:")
    click.echo("   Example: export TRAVEL_MAS_MAX_STEPS=40")
    click.echo("   Or create a .env file in your project directory")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=click.IntRange(1, 65535), default=8000, show_default=True)
@click.option(
    "--sandbox",
    "sandbox_dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Sandbox directory served by the API (default: API_SANDBOX_DIR)",
)
def serve(host: str, port: int, sandbox_dir: Path | None) -> None:
    """Start the HTTP service exposing the sandbox tools and the evaluator."""
    import uvicorn

    from src.api.config import get_api_config

    if sandbox_dir is not None:
        os.environ["API_SANDBOX_DIR"] = str(sandbox_dir)
        get_api_config.cache_clear()
    click.echo(f"🌐 Serving on http://{host}:{port}")
    uvicorn.run("src.api.main:app", host=host, port=port)


def main() -> None:
    """Console-script entry point."""
    cli()


if __name__ == "__main__":
    main()
