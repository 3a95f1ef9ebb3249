"""Batch execution of a task set: one trace file per task, resumable."""

import asyncio
import logging
from pathlib import Path

import httpx
from pydantic import BaseModel, ConfigDict

from src.llm_gateway import (
    BackendConfig,
    BackendKind,
    TokenBucket,
    create_gateway,
    write_cassette,
)
from src.orchestration import (
    CompletionReason,
    EventKind,
    RunConfig,
    RunTrace,
    run_episode,
    trace_path,
    write_trace,
)
from src.sandbox import Sandbox
from src.world_state import EXPERT_ROLES, Goal

from .tasks import TaskSet

logger = logging.getLogger(__name__)

CASSETTE_SUFFIX = ".jsonl"


class RunSummary(BaseModel):
    """What one `cmd_run` invocation did."""

    model_config = ConfigDict(frozen=True)

    experiment: str
    runs_dir: Path
    executed: tuple[str, ...] = ()
    skipped: tuple[str, ...] = ()
    delivered: tuple[str, ...] = ()
    errored: tuple[str, ...] = ()


def runs_dir_for(out_dir: Path, experiment: str) -> Path:
    return out_dir / "runs" / experiment


def cassette_path(cassette_dir: Path, task_id: str) -> Path:
    return cassette_dir / f"{task_id}{CASSETTE_SUFFIX}"


def _task_backend(
    backend: BackendConfig,
    task_id: str,
    cassette_dir: Path | None,
    record: bool,
) -> BackendConfig:
    if cassette_dir is None:
        return backend
    if backend.kind is BackendKind.SCRIPTED:
        return backend.model_copy(update={"script_path": cassette_path(cassette_dir, task_id)})
    if record:
        return backend.model_copy(update={"record_path": cassette_path(cassette_dir, task_id)})
    return backend


def crash_trace(goal: Goal, config: RunConfig, error: Exception) -> RunTrace:
    """Undelivered trace standing in for an episode that raised."""
    message = f"{type(error).__name__}: {error}"
    trace = RunTrace(
        task_id=goal.task_id,
        mode=config.mode,
        config_digest=config.digest(),
        completion_reason=CompletionReason.ERROR,
        revisit_counts={role.value: 0 for role in EXPERT_ROLES},
        error=message,
    )
    trace.add_event(EventKind.ERROR, 1, content=message)
    return trace


def _check_config(config: RunConfig, cassette_dir: Path | None, record: bool) -> None:
    if config.backend.kind is BackendKind.SCRIPTED and cassette_dir is None:
        raise ValueError("the scripted backend needs a cassette directory")
    if record and config.backend.kind is not BackendKind.REMOTE:
        raise ValueError("recording is only available with the remote backend")
    if record and cassette_dir is None:
        raise ValueError("recording needs a cassette directory")
    if cassette_dir is not None and config.backend.kind is BackendKind.SCRIPTED:
        if not cassette_dir.is_dir():
            raise ValueError(f"cassette directory not found: {cassette_dir}")


async def cmd_run(
    tasks: TaskSet,
    sandbox: Sandbox,
    config: RunConfig,
    out_dir: Path,
    experiment: str,
    workers: int = 4,
    cassette_dir: Path | None = None,
    record: bool = False,
    requests_per_minute: int | None = None,
    transport: httpx.AsyncBaseTransport | None = None,
) -> RunSummary:
    """Run every task of a set and store one trace per task.

    Tasks that already have a trace are skipped. Each task gets its own
    gateway; with the scripted backend it replays `<cassette_dir>/<task_id>.jsonl`
    (the configured script path is replaced per task). Remote runs share one
    token bucket. A task that raises is stored as an undelivered trace with
    an error event and the batch carries on.

    Args:
        tasks: Task set to run
        sandbox: Travel database shared by all episodes
        config: Mode, limits and backend
        out_dir: Output root; traces go to out_dir/runs/<experiment>/
        experiment: Experiment name
        workers: Episodes executed concurrently
        cassette_dir: Cassettes to replay (scripted) or record into (remote with record)
        record: Write a cassette per task while running remotely
        requests_per_minute: Shared remote rate limit; None disables limiting
        transport: HTTP transport override for the remote backend

    Returns:
        RunSummary listing executed, skipped, delivered and errored tasks

    Raises:
        ValueError: If the configuration is unusable (checked before any run)
    """
    if workers < 1:
        raise ValueError("workers must be at least 1")
    _check_config(config, cassette_dir, record)

    runs_dir = runs_dir_for(out_dir, experiment)
    runs_dir.mkdir(parents=True, exist_ok=True)
    if record and cassette_dir is not None:
        cassette_dir.mkdir(parents=True, exist_ok=True)

    limiter = None
    if config.backend.kind is BackendKind.REMOTE and requests_per_minute:
        limiter = TokenBucket(requests_per_minute)
    semaphore = asyncio.Semaphore(workers)

    async def run_one(goal: Goal) -> RunTrace | None:
        path = trace_path(runs_dir, goal.task_id)
        if path.exists():
            logger.info(
                f"Skipping task {goal.task_id}: trace already exists",
                extra={"task_id": goal.task_id, "experiment": experiment},
            )
            return None

        async with semaphore:
            task_config = config.model_copy(
                update={
                    "backend": _task_backend(config.backend, goal.task_id, cassette_dir, record)
                }
            )
            try:
                if task_config.backend.record_path is not None:
                    # each recorded episode starts from an empty cassette
                    write_cassette(task_config.backend.record_path, [])
                gateway = create_gateway(task_config.backend, transport, limiter)
                try:
                    trace = await run_episode(goal, sandbox, task_config, gateway)
                finally:
                    await gateway.aclose()
            except Exception as e:
                logger.exception(
                    f"Task {goal.task_id} crashed: {e}",
                    extra={"task_id": goal.task_id, "experiment": experiment},
                )
                trace = crash_trace(goal, task_config, e)
            write_trace(trace, path)
            return trace

    results = await asyncio.gather(*(run_one(goal) for goal in tasks.tasks))

    executed = [t for t in results if t is not None]
    summary = RunSummary(
        experiment=experiment,
        runs_dir=runs_dir,
        executed=tuple(t.task_id for t in executed),
        skipped=tuple(
            goal.task_id for goal, trace in zip(tasks.tasks, results, strict=True) if trace is None
        ),
        delivered=tuple(t.task_id for t in executed if t.delivered),
        errored=tuple(t.task_id for t in executed if t.error is not None),
    )
    logger.info(
        f"Experiment {experiment}: ran {len(summary.executed)}, "
        f"skipped {len(summary.skipped)}, delivered {len(summary.delivered)}",
        extra={
            "experiment": experiment,
            "executed": len(summary.executed),
            "skipped": len(summary.skipped),
        },
    )
    return summary
