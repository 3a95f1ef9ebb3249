"""Shared world state (goal, conversation, notebook) and per-role observations."""

from .models import (
    ACTION_SPACES,
    EXPERT_DOMAINS,
    EXPERT_ROLES,
    ActionKind,
    AgentAction,
    AgentRole,
    Conversation,
    Goal,
    GoalMetadata,
    Message,
    Notebook,
    NotebookEntry,
    Observation,
    PendingReturn,
    ScratchNote,
    ToolCall,
    WorldState,
    is_expert,
)
from .state import (
    NOTEBOOK_READERS,
    GroundingError,
    VisibilityError,
    append_message,
    attach_tool_return,
    end_turn,
    new_state,
    notebook_write,
    observe,
    record_reflection,
    serialize_state,
)

__all__ = [
    "ACTION_SPACES",
    "EXPERT_DOMAINS",
    "EXPERT_ROLES",
    "ActionKind",
    "AgentAction",
    "AgentRole",
    "Conversation",
    "Goal",
    "GoalMetadata",
    "Message",
    "Notebook",
    "NotebookEntry",
    "Observation",
    "PendingReturn",
    "ScratchNote",
    "ToolCall",
    "WorldState",
    "is_expert",
    "NOTEBOOK_READERS",
    "GroundingError",
    "VisibilityError",
    "append_message",
    "attach_tool_return",
    "end_turn",
    "new_state",
    "notebook_write",
    "observe",
    "record_reflection",
    "serialize_state",
]
