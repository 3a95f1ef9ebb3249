"""Orchestrator policy: reflect on the goal and the conversation, then pick who acts next."""

import logging
import re
from collections.abc import Sequence
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.llm_gateway import LLMGateway
from src.world_state import EXPERT_ROLES, AgentRole, Observation, VisibilityError

from .prompts import render_prompt
from .specs import ROLE_DESCRIPTIONS, AgentSpec

logger = logging.getLogger(__name__)

FINISH = "FINISH"

# Fixed-order successor; anything unknown restarts at transport.
FIXED_ORDER_SUCCESSOR: dict[AgentRole, AgentRole] = {
    AgentRole.TRANSPORT_EXPERT: AgentRole.HOTEL_EXPERT,
    AgentRole.HOTEL_EXPERT: AgentRole.RESTAURANT_EXPERT,
    AgentRole.RESTAURANT_EXPERT: AgentRole.ATTRACTION_EXPERT,
    AgentRole.ATTRACTION_EXPERT: AgentRole.PLAN_SUMMARIZER,
}

DEFAULT_ROSTER: tuple[AgentRole, ...] = (*EXPERT_ROLES, AgentRole.PLAN_SUMMARIZER)

REPROMPT = (
    "Your reply could not be parsed. Answer in exactly this form:\n"
    "REFLECTION: <your reasoning>\n"
    "NEXT: <one of {names}>"
)

_NEXT = re.compile(r"NEXT\s*:\s*\**\s*([A-Za-z_]+)", re.IGNORECASE)
_REFLECTION = re.compile(r"REFLECTION\s*:\s*(.*?)\s*(?=NEXT\s*:|$)", re.IGNORECASE | re.DOTALL)


class OrchestratorDecision(BaseModel):
    """Private reasoning plus the chosen next agent."""

    model_config = ConfigDict(frozen=True)

    reflection: str = ""
    chosen: AgentRole
    turn_index: int = Field(..., ge=1)
    attempts: int = Field(default=1, ge=1)
    fallback: bool = False

    @model_validator(mode="after")
    def validate_chosen(self) -> Self:
        if self.chosen is AgentRole.ORCHESTRATOR:
            raise ValueError("orchestrator cannot select itself")
        return self


def fixed_order_successor(last_speaker: AgentRole | None) -> AgentRole:
    if last_speaker is None:
        return AgentRole.TRANSPORT_EXPERT
    return FIXED_ORDER_SUCCESSOR.get(last_speaker, AgentRole.TRANSPORT_EXPERT)


def describe_roster(roster: Sequence[AgentRole]) -> str:
    lines = []
    for role in roster:
        name = FINISH if role is AgentRole.PLAN_SUMMARIZER else role.value
        description = ROLE_DESCRIPTIONS.get(role)
        lines.append(f"- {name}: {description}" if description else f"- {name}")
    return "\n".join(lines)


def parse_decision(reply: str, roster: Sequence[AgentRole]) -> tuple[str, AgentRole] | None:
    """Parse "REFLECTION: ... NEXT: <name|FINISH>"; None if no valid choice is named."""
    matches = _NEXT.findall(reply)
    if not matches:
        return None
    name = matches[-1].casefold()
    chosen: AgentRole | None = None
    if name == FINISH.casefold():
        chosen = AgentRole.PLAN_SUMMARIZER
    else:
        chosen = next((role for role in roster if role.value.casefold() == name), None)
    if chosen is None or chosen not in roster:
        return None
    reflection = _REFLECTION.search(reply)
    return (reflection.group(1).strip() if reflection else ""), chosen


async def orchestrator_decide(
    obs: Observation,
    spec: AgentSpec,
    gateway: LLMGateway,
    roster: Sequence[AgentRole] = DEFAULT_ROSTER,
) -> OrchestratorDecision:
    """Choose the next agent from the goal and public conversation only.

    An unparseable reply gets one re-prompt; a second failure falls back to
    the fixed-order successor of the last expert speaker.

    Raises:
        VisibilityError: If the observation carries a notebook view
    """
    if obs.notebook_view is not None or obs.private_tool_returns is not None:
        raise VisibilityError("orchestrator observations must be (G, c) only")

    turn_index = len(obs.conversation_view) + 1
    names = ", ".join(
        FINISH if role is AgentRole.PLAN_SUMMARIZER else role.value for role in roster
    )
    turns: list[tuple[str, str]] = [
        (
            "user",
            render_prompt(
                "orchestrator_turn",
                goal=obs.goal_view,
                roster=describe_roster(roster),
                conversation=obs.conversation_view.render(),
            ),
        )
    ]

    for attempt in (1, 2):
        response = await gateway.complete(spec.request(turns))
        reply = response.text or ""
        parsed = parse_decision(reply, roster)
        if parsed is not None:
            reflection, chosen = parsed
            return OrchestratorDecision(
                reflection=reflection,
                chosen=chosen,
                turn_index=turn_index,
                attempts=attempt,
            )
        turns.append(("assistant", reply))
        turns.append(("user", REPROMPT.format(names=names)))

    messages = obs.conversation_view.messages
    last_speaker = messages[-1].author if messages else None
    chosen = fixed_order_successor(last_speaker)
    logger.warning(
        f"Orchestrator reply unparseable twice; falling back to {chosen.value}",
        extra={"last_speaker": last_speaker.value if last_speaker else None},
    )
    return OrchestratorDecision(
        reflection="",
        chosen=chosen,
        turn_index=turn_index,
        attempts=2,
        fallback=True,
    )
