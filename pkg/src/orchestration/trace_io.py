"""Line-delimited run-trace files: header, events, summary."""

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.orchestration.models import RunTrace, TraceEvent
from src.plans import Plan

TRACE_SCHEMA_VERSION = 1
TRACE_SUFFIX = ".trace"


class TraceFormatError(ValueError):
    """Raised when a trace file cannot be read back."""


def _dumps(record: dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False)


def trace_lines(trace: RunTrace) -> list[str]:
    """Render a trace as JSON lines (wall time is not persisted)."""
    header = {
        "record": "header",
        "schema_version": TRACE_SCHEMA_VERSION,
        "task_id": trace.task_id,
        "mode": trace.mode.value,
        "config_digest": trace.config_digest,
    }
    lines = [_dumps(header)]
    for event in trace.events:
        lines.append(_dumps({"record": "event", **event.model_dump(mode="json")}))

    summary = trace.model_dump(
        mode="json",
        include={
            "delivered",
            "completion_reason",
            "final_plan_text",
            "message_count",
            "revisit_counts",
            "usage",
            "error",
        },
    )
    summary["plan"] = (
        [day.model_dump(mode="json") for day in trace.plan.days] if trace.plan else None
    )
    lines.append(_dumps({"record": "summary", **summary}))
    return lines


def write_trace(trace: RunTrace, path: Path) -> Path:
    """Write a trace atomically (temporary file, then rename)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    text = "\n".join(trace_lines(trace)) + "\n"
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return path


def read_trace(path: Path) -> RunTrace:
    """Load a trace written by `write_trace`.

    Raises:
        TraceFormatError: If the file is missing a record or a record is malformed
    """
    try:
        raw_lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise TraceFormatError(f"cannot read trace {path}: {e}") from e

    records: list[dict[str, Any]] = []
    for number, line in enumerate(raw_lines, start=1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise TraceFormatError(f"{path.name} line {number}: invalid JSON ({e.msg})") from e

    if not records or records[0].get("record") != "header":
        raise TraceFormatError(f"{path.name}: missing header record")
    if records[-1].get("record") != "summary":
        raise TraceFormatError(f"{path.name}: missing summary record")
    header, summary = records[0], records[-1]
    if header.get("schema_version") != TRACE_SCHEMA_VERSION:
        raise TraceFormatError(
            f"{path.name}: schema version {header.get('schema_version')} "
            f"(expected {TRACE_SCHEMA_VERSION})"
        )

    try:
        events = [
            TraceEvent.model_validate({k: v for k, v in record.items() if k != "record"})
            for record in records[1:-1]
        ]
        plan_days = summary.get("plan")
        plan = None
        if plan_days:
            plan = Plan(days=plan_days, raw_text=summary.get("final_plan_text") or "")
        return RunTrace(
            task_id=header["task_id"],
            mode=header["mode"],
            config_digest=header.get("config_digest", ""),
            events=events,
            delivered=summary["delivered"],
            completion_reason=summary.get("completion_reason"),
            final_plan_text=summary.get("final_plan_text"),
            plan=plan,
            message_count=summary.get("message_count", 0),
            revisit_counts=summary.get("revisit_counts", {}),
            usage=summary.get("usage", {}),
            error=summary.get("error"),
        )
    except (KeyError, ValidationError) as e:
        raise TraceFormatError(f"{path.name}: invalid trace ({e})") from e


def trace_path(runs_dir: Path, task_id: str) -> Path:
    return runs_dir / f"{task_id}{TRACE_SUFFIX}"


def read_traces(runs_dir: Path) -> list[RunTrace]:
    """Read every trace in a directory, ordered by task id."""
    return [read_trace(path) for path in sorted(runs_dir.glob(f"*{TRACE_SUFFIX}"))]
