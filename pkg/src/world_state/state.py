"""Operations on the world state and the per-role observation function.

Every operation returns a new WorldState; nothing is edited in place, so
prefixes of the conversation and notebook are preserved by construction.
"""

from collections.abc import Sequence

from pydantic import ValidationError

from src.sandbox import Sandbox, ToolRecord, record_name
from src.sandbox.models import RECORD_KINDS
from src.world_state.models import (
    EXPERT_DOMAINS,
    ActionKind,
    AgentAction,
    AgentRole,
    Goal,
    Message,
    NotebookEntry,
    Observation,
    PendingReturn,
    ScratchNote,
    ToolCall,
    WorldState,
    is_expert,
)

NOTEBOOK_READERS = frozenset({AgentRole.PLAN_SUMMARIZER, AgentRole.PLAN_COMPILER})


class VisibilityError(ValueError):
    """Raised when a role attempts an action outside its action space."""


class GroundingError(ValueError):
    """Raised when a record about to enter the notebook is not in the sandbox."""


def _check_action(role: AgentRole, kind: ActionKind) -> None:
    try:
        AgentAction(role=role, kind=kind)
    except ValidationError as e:
        if role is AgentRole.ORCHESTRATOR and kind in (ActionKind.SPEAK, ActionKind.EMIT_PLAN):
            raise VisibilityError("orchestrator never speaks publicly") from e
        raise VisibilityError(f"{role.value} may not {kind.value}") from e


def new_state(goal: Goal) -> WorldState:
    """Initial state: the goal, an empty conversation and an empty notebook."""
    return WorldState(goal=goal)


def append_message(
    state: WorldState,
    author: AgentRole,
    content: str,
    kind: ActionKind | None = None,
) -> WorldState:
    """Append one public message.

    The compiler's messages are plan emissions; everyone else speaks.

    Raises:
        VisibilityError: If the author may not contribute to the conversation
    """
    if kind is None:
        kind = ActionKind.EMIT_PLAN if author is AgentRole.PLAN_COMPILER else ActionKind.SPEAK
    if kind not in (ActionKind.SPEAK, ActionKind.EMIT_PLAN):
        raise VisibilityError(f"{kind.value} is not a public message")
    _check_action(author, kind)

    message = Message(index=state.next_turn, author=author, content=content)
    conversation = state.conversation.model_copy(
        update={"messages": (*state.conversation.messages, message)}
    )
    return state.model_copy(update={"conversation": conversation})


def attach_tool_return(
    state: WorldState,
    actor: AgentRole,
    tool_call: ToolCall,
    records: Sequence[ToolRecord],
) -> WorldState:
    """Attach a tool return to the actor's in-flight turn without touching the notebook."""
    _check_action(actor, ActionKind.TOOL_CALL)
    pending = PendingReturn(
        actor=actor,
        tool_call=tool_call,
        records=tuple(records),
        turn_index=state.next_turn,
    )
    return state.model_copy(update={"pending": (*state.pending, pending)})


def _check_grounding(records: Sequence[ToolRecord], sandbox: Sandbox) -> None:
    for record in records:
        kind = RECORD_KINDS[record.record_type]
        if not sandbox.entity_exists(kind, record_name(record)):
            raise GroundingError(f"{kind.value} {record_name(record)!r} is not in the sandbox")


def notebook_write(
    state: WorldState,
    author: AgentRole,
    tool_call: ToolCall,
    records: Sequence[ToolRecord],
    sandbox: Sandbox | None = None,
) -> WorldState:
    """Record an expert's tool return in the notebook and on its in-flight turn.

    Args:
        state: Current world state
        author: Expert that issued the call
        tool_call: The call as issued
        records: The verbatim tool return
        sandbox: When given, every record must exist in it

    Raises:
        VisibilityError: If the author is not an expert
        GroundingError: If a record fails the sandbox check
    """
    if not is_expert(author):
        raise VisibilityError(f"{author.value} cannot write to the notebook")
    if sandbox is not None:
        _check_grounding(records, sandbox)

    entry = NotebookEntry(
        entry_id=f"N{len(state.notebook) + 1:04d}",
        author=author,
        domain=EXPERT_DOMAINS[author],
        tool_call=tool_call,
        records=tuple(records),
        turn_index=state.next_turn,
    )
    notebook = state.notebook.model_copy(update={"entries": (*state.notebook.entries, entry)})
    return attach_tool_return(
        state.model_copy(update={"notebook": notebook}), author, tool_call, records
    )


def end_turn(state: WorldState) -> WorldState:
    """Discard in-flight tool returns; the notebook keeps the durable copy."""
    if not state.pending:
        return state
    return state.model_copy(update={"pending": ()})


def record_reflection(state: WorldState, reflection: str, chosen: AgentRole) -> WorldState:
    """Store an orchestrator decision in the private scratch log."""
    _check_action(AgentRole.ORCHESTRATOR, ActionKind.SELECT_NEXT_AGENT)
    if chosen is AgentRole.ORCHESTRATOR:
        raise VisibilityError("orchestrator cannot select itself")
    note = ScratchNote(turn_index=state.next_turn, reflection=reflection, chosen=chosen)
    return state.model_copy(update={"scratch": (*state.scratch, note)})


def observe(state: WorldState, role: AgentRole) -> Observation:
    """Project the world state onto what `role` may see.

    Orchestrator and critic see (G, c). Experts and the single agent also see
    their own in-flight tool returns. Summarizer and compiler see (G, c, N).
    The scratch log is never projected.
    """
    notebook_view = state.notebook if role in NOTEBOOK_READERS else None
    private: tuple[PendingReturn, ...] | None = None
    if is_expert(role) or role is AgentRole.SINGLE_AGENT:
        private = tuple(p for p in state.pending if p.actor is role)

    return Observation(
        role=role,
        goal_view=state.goal.render(),
        conversation_view=state.conversation,
        notebook_view=notebook_view,
        private_tool_returns=private,
    )


def serialize_state(state: WorldState) -> str:
    """Canonical JSON form; identical action sequences give identical strings."""
    return state.model_dump_json()
