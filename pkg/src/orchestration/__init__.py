"""Orchestration package."""

from .models import (
    CompletionReason,
    EventKind,
    RevisitStats,
    RunConfig,
    RunMode,
    RunTrace,
    TraceEvent,
)
from .trace_io import (
    TRACE_SCHEMA_VERSION,
    TRACE_SUFFIX,
    TraceFormatError,
    read_trace,
    read_traces,
    trace_lines,
    trace_path,
    write_trace,
)
from .workflow import (
    FIXED_ORDER,
    average_revisits,
    count_revisits,
    revisits_from_speakers,
    run_episode,
    run_fixed,
    run_orchestrated,
    run_single_agent,
)

__all__ = [
    "CompletionReason",
    "EventKind",
    "RevisitStats",
    "RunConfig",
    "RunMode",
    "RunTrace",
    "TraceEvent",
    "TRACE_SCHEMA_VERSION",
    "TRACE_SUFFIX",
    "TraceFormatError",
    "read_trace",
    "read_traces",
    "trace_lines",
    "trace_path",
    "write_trace",
    "FIXED_ORDER",
    "average_revisits",
    "count_revisits",
    "revisits_from_speakers",
    "run_episode",
    "run_fixed",
    "run_orchestrated",
    "run_single_agent",
]
