"""Data models for planning episodes and their traces."""

import hashlib
import json
from enum import Enum
from pathlib import Path
from typing import Any, Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.llm_gateway import BackendConfig, Usage
from src.plans import Plan
from src.world_state import EXPERT_ROLES, AgentRole


class RunMode(str, Enum):
    """How agents are scheduled during an episode."""

    FIXED = "fixed"
    ORCHESTRATED = "orchestrated"
    SINGLE_AGENT = "single_agent"


class CompletionReason(str, Enum):
    """Reasons for episode completion."""

    DELIVERED = "delivered"  # Final plan parsed
    NO_PLAN = "no_plan"  # Final text holds no plan block
    STEP_LIMIT = "step_limit"  # Conversation cut off at max_steps
    ERROR = "error"  # Gateway or runtime failure


class EventKind(str, Enum):
    """Kinds of record in a run trace."""

    MESSAGE = "message"
    TOOL_CALL = "tool_call"
    NOTEBOOK_WRITE = "notebook_write"
    DECISION = "decision"
    BRIEF = "brief"
    ERROR = "error"


class RunConfig(BaseModel):
    """Limits and backend for one episode."""

    model_config = ConfigDict(frozen=True)

    mode: RunMode = RunMode.ORCHESTRATED
    max_steps: int = Field(default=30, ge=0, description="Public message limit")
    max_critic_rounds: int = Field(default=3, ge=0)
    max_tool_rounds: int = Field(default=5, ge=0, description="Tool-call rounds per expert turn")
    count_orchestrator_decisions: bool = Field(
        default=False,
        description="Whether orchestrator decisions count toward max_steps",
    )
    temperature: float = Field(default=0.0, ge=0.0)
    max_tokens: int = Field(default=2048, gt=0)
    prompt_dir: Path | None = None
    backend: BackendConfig

    def digest(self) -> str:
        """Short hash of every setting that shapes behaviour (per-task paths excluded)."""
        payload = self.model_dump(mode="json", exclude={"backend", "prompt_dir"})
        payload["backend"] = self.backend.digest_fields()
        payload["prompt_dir"] = bool(self.prompt_dir)
        encoded = json.dumps(payload, sort_keys=True).encode("utf-8")
        return hashlib.sha256(encoded).hexdigest()[:16]


class TraceEvent(BaseModel):
    """One line of the event log."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=1)
    turn: int = Field(..., ge=1, description="Conversation turn the event belongs to")
    kind: EventKind
    role: AgentRole | None = None
    content: str = ""
    data: dict[str, Any] = Field(default_factory=dict)


class RunTrace(BaseModel):
    """Complete record of one episode."""

    task_id: str = Field(..., min_length=1)
    mode: RunMode
    config_digest: str = ""
    events: list[TraceEvent] = Field(default_factory=list)
    delivered: bool = False
    completion_reason: CompletionReason | None = None
    final_plan_text: str | None = None
    plan: Plan | None = None
    message_count: int = Field(default=0, ge=0)
    revisit_counts: dict[str, int] = Field(default_factory=dict)
    usage: Usage = Field(default_factory=Usage)
    error: str | None = None
    wall_time: float = Field(default=0.0, ge=0.0, exclude=True)

    @field_validator("events")
    @classmethod
    def validate_event_order(cls, events: list[TraceEvent]) -> list[TraceEvent]:
        """Ensure event indices strictly increase and turns never go back."""
        for previous, event in zip(events, events[1:], strict=False):
            if event.index <= previous.index:
                raise ValueError(f"Event {event.index} does not follow event {previous.index}")
            if event.turn < previous.turn:
                raise ValueError(f"Event {event.index} goes back to turn {event.turn}")
        return events

    @model_validator(mode="after")
    def validate_outcome(self) -> Self:
        if self.delivered and not self.final_plan_text:
            raise ValueError("Delivered trace must have final_plan_text")
        if self.mode is RunMode.FIXED and any(self.revisit_counts.values()):
            raise ValueError("Fixed-order runs have no revisits")
        return self

    def add_event(
        self,
        kind: EventKind,
        turn: int,
        role: AgentRole | None = None,
        content: str = "",
        data: dict[str, Any] | None = None,
    ) -> TraceEvent:
        """Append an event with the next index."""
        event = TraceEvent(
            index=len(self.events) + 1,
            turn=max(turn, self.events[-1].turn if self.events else 1),
            kind=kind,
            role=role,
            content=content,
            data=data or {},
        )
        self.events.append(event)
        return event

    def speakers(self) -> list[AgentRole]:
        """Authors of the public messages, in order."""
        return [
            event.role
            for event in self.events
            if event.kind is EventKind.MESSAGE and event.role is not None
        ]

    def notebook_size(self) -> int:
        return sum(1 for event in self.events if event.kind is EventKind.NOTEBOOK_WRITE)


class RevisitStats(BaseModel):
    """Average revisits per expert across a set of traces."""

    model_config = ConfigDict(frozen=True)

    per_expert: dict[str, float] = Field(
        default_factory=lambda: {role.value: 0.0 for role in EXPERT_ROLES}
    )
    task_count: int = Field(default=0, ge=0)

    @field_validator("per_expert")
    @classmethod
    def validate_non_negative(cls, per_expert: dict[str, float]) -> dict[str, float]:
        for name, value in per_expert.items():
            if value < 0:
                raise ValueError(f"Average revisits for {name} is negative: {value}")
        return per_expert
