"""Data models for the shared world state: goal, conversation and notebook."""

import datetime as dt
from enum import Enum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.sandbox import Domain, SandboxRecord


class AgentRole(str, Enum):
    """Roles taking part in a planning episode."""

    ORCHESTRATOR = "Orchestrator"
    TRANSPORT_EXPERT = "TransportExpert"
    HOTEL_EXPERT = "HotelExpert"
    RESTAURANT_EXPERT = "RestaurantExpert"
    ATTRACTION_EXPERT = "AttractionExpert"
    PLAN_SUMMARIZER = "PlanSummarizer"
    PLAN_COMPILER = "PlanCompiler"
    PLAN_CRITIC = "PlanCritic"
    SINGLE_AGENT = "SingleAgent"  # single-agent baseline only


EXPERT_DOMAINS: dict[AgentRole, Domain] = {
    AgentRole.TRANSPORT_EXPERT: Domain.TRANSPORTATION,
    AgentRole.HOTEL_EXPERT: Domain.HOTEL,
    AgentRole.RESTAURANT_EXPERT: Domain.RESTAURANT,
    AgentRole.ATTRACTION_EXPERT: Domain.ATTRACTION,
}

EXPERT_ROLES: tuple[AgentRole, ...] = tuple(EXPERT_DOMAINS)


def is_expert(role: AgentRole) -> bool:
    return role in EXPERT_DOMAINS


class ActionKind(str, Enum):
    """Kinds of action an agent can take."""

    SPEAK = "speak"
    TOOL_CALL = "tool_call"
    SELECT_NEXT_AGENT = "select_next_agent"
    EMIT_PLAN = "emit_plan"


ACTION_SPACES: dict[AgentRole, frozenset[ActionKind]] = {
    AgentRole.ORCHESTRATOR: frozenset({ActionKind.SELECT_NEXT_AGENT}),
    **{
        role: frozenset({ActionKind.SPEAK, ActionKind.TOOL_CALL})
        for role in EXPERT_ROLES
    },
    AgentRole.PLAN_SUMMARIZER: frozenset(),
    AgentRole.PLAN_COMPILER: frozenset({ActionKind.EMIT_PLAN}),
    AgentRole.PLAN_CRITIC: frozenset({ActionKind.SPEAK}),
    AgentRole.SINGLE_AGENT: frozenset(
        {ActionKind.SPEAK, ActionKind.TOOL_CALL, ActionKind.EMIT_PLAN}
    ),
}


class AgentAction(BaseModel):
    """One action by one role, checked against that role's action space."""

    model_config = ConfigDict(frozen=True)

    role: AgentRole
    kind: ActionKind
    payload: str = ""

    @model_validator(mode="after")
    def check_permitted(self) -> Self:
        if self.kind not in ACTION_SPACES[self.role]:
            raise ValueError(f"{self.role.value} may not {self.kind.value}")
        return self


class GoalMetadata(BaseModel):
    """Structured fields of a benchmark task."""

    model_config = ConfigDict(frozen=True)

    origin: str = Field(..., min_length=1)
    destination: str = Field(..., min_length=1, description="Destination city or state")
    visiting_city_number: int = Field(default=1, ge=1)
    duration_days: int
    dates: tuple[dt.date, ...]
    people_number: int = Field(default=1, ge=1)
    budget: float | None = Field(default=None, gt=0)
    house_rule: str | None = None
    cuisines: tuple[str, ...] = ()
    room_type: str | None = None
    transportation: str | None = None

    @field_validator("duration_days")
    @classmethod
    def validate_duration(cls, value: int) -> int:
        if value not in (3, 5, 7):
            raise ValueError(f"duration_days must be 3, 5 or 7, got {value}")
        return value

    @model_validator(mode="after")
    def validate_dates(self) -> Self:
        if len(self.dates) != self.duration_days:
            raise ValueError(
                f"expected {self.duration_days} dates, got {len(self.dates)}"
            )
        if any(b <= a for a, b in zip(self.dates, self.dates[1:], strict=False)):
            raise ValueError("dates must be strictly increasing")
        return self


class Goal(BaseModel):
    """Natural-language goal plus its structured constraint spec."""

    model_config = ConfigDict(frozen=True)

    task_id: str = Field(..., min_length=1)
    query_text: str = Field(..., min_length=1)
    metadata: GoalMetadata

    def render(self) -> str:
        """Goal text shown to every agent."""
        return self.query_text


class Message(BaseModel):
    """One public message in the conversation."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=1)
    author: AgentRole
    content: str

    @field_validator("author")
    @classmethod
    def validate_author(cls, author: AgentRole) -> AgentRole:
        if author is AgentRole.ORCHESTRATOR:
            raise ValueError("orchestrator never speaks publicly")
        return author


class Conversation(BaseModel):
    """Append-only public history."""

    model_config = ConfigDict(frozen=True)

    messages: tuple[Message, ...] = ()

    @field_validator("messages")
    @classmethod
    def validate_indices(cls, messages: tuple[Message, ...]) -> tuple[Message, ...]:
        for i, message in enumerate(messages, start=1):
            if message.index != i:
                raise ValueError(f"Message {i} has incorrect index: {message.index}")
        return messages

    def __len__(self) -> int:
        return len(self.messages)

    def render(self) -> str:
        if not self.messages:
            return "(no messages yet)"
        return "\n\n".join(f"[{m.index}] {m.author.value}: {m.content}" for m in self.messages)


class ToolCall(BaseModel):
    """A tool call as the model wrote it."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    arguments: tuple[str, ...] = ()
    span: tuple[int, int] = (0, 0)

    def render(self) -> str:
        return f"{self.name}({', '.join(self.arguments)})"


class NotebookEntry(BaseModel):
    """Verbatim return of one expert tool call."""

    model_config = ConfigDict(frozen=True)

    entry_id: str
    author: AgentRole
    domain: Domain
    tool_call: ToolCall
    records: tuple[SandboxRecord, ...] = ()
    turn_index: int = Field(..., ge=1)

    @model_validator(mode="after")
    def validate_author(self) -> Self:
        if not is_expert(self.author):
            raise ValueError(f"{self.author.value} cannot write to the notebook")
        if EXPERT_DOMAINS[self.author] is not self.domain:
            raise ValueError(f"{self.author.value} cannot write {self.domain.value} entries")
        return self


class Notebook(BaseModel):
    """Append-only store of expert tool returns."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[NotebookEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)


class PendingReturn(BaseModel):
    """Tool return attached to the acting agent's in-flight turn."""

    model_config = ConfigDict(frozen=True)

    actor: AgentRole
    tool_call: ToolCall
    records: tuple[SandboxRecord, ...] = ()
    turn_index: int = Field(default=1, ge=1)


class ScratchNote(BaseModel):
    """Private orchestrator reflection; never part of any observation."""

    model_config = ConfigDict(frozen=True)

    turn_index: int = Field(..., ge=1)
    reflection: str
    chosen: AgentRole


class WorldState(BaseModel):
    """The full state of one episode: goal, conversation and notebook."""

    model_config = ConfigDict(frozen=True)

    goal: Goal
    conversation: Conversation = Field(default_factory=Conversation)
    notebook: Notebook = Field(default_factory=Notebook)
    scratch: tuple[ScratchNote, ...] = ()
    pending: tuple[PendingReturn, ...] = ()

    @model_validator(mode="after")
    def validate_references(self) -> Self:
        next_turn = len(self.conversation) + 1
        for entry in self.notebook.entries:
            if entry.turn_index > next_turn:
                raise ValueError(f"{entry.entry_id} references future turn {entry.turn_index}")
        for note in self.scratch:
            if note.turn_index > next_turn:
                raise ValueError(f"Reflection references future turn {note.turn_index}")
        return self

    @property
    def next_turn(self) -> int:
        return len(self.conversation) + 1


class Observation(BaseModel):
    """What one role is allowed to see of the world state."""

    model_config = ConfigDict(frozen=True)

    role: AgentRole
    goal_view: str
    conversation_view: Conversation
    notebook_view: Notebook | None = None
    private_tool_returns: tuple[PendingReturn, ...] | None = None

    def serialize(self) -> str:
        return self.model_dump_json()
