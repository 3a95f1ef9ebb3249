"""Agents package."""

from src.world_state import AgentRole

from .expert import ExpertTurnResult, expert_turn
from .orchestrator import (
    DEFAULT_ROSTER,
    FINISH,
    OrchestratorDecision,
    fixed_order_successor,
    orchestrator_decide,
    parse_decision,
)
from .planner import (
    APPROVAL_TOKEN,
    NO_EVIDENCE,
    RefinementResult,
    compile_plan,
    critic_refine,
    is_approved,
    summarize_for_planner,
)
from .prompts import load_template, render_prompt
from .single_agent import SingleAgentStep, single_agent_step
from .specs import AgentSpec, build_agent_specs
from .tool_calls import extract_tool_calls, find_unpermitted_calls

__all__ = [
    "AgentRole",
    "ExpertTurnResult",
    "expert_turn",
    "DEFAULT_ROSTER",
    "FINISH",
    "OrchestratorDecision",
    "fixed_order_successor",
    "orchestrator_decide",
    "parse_decision",
    "APPROVAL_TOKEN",
    "NO_EVIDENCE",
    "RefinementResult",
    "compile_plan",
    "critic_refine",
    "is_approved",
    "summarize_for_planner",
    "load_template",
    "render_prompt",
    "SingleAgentStep",
    "single_agent_step",
    "AgentSpec",
    "build_agent_specs",
    "extract_tool_calls",
    "find_unpermitted_calls",
]
