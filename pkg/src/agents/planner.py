"""Plan summarizer, compiler and critic."""

import re

from pydantic import BaseModel, ConfigDict

from src.llm_gateway import LLMGateway
from src.sandbox import DOMAIN_ORDER, describe_record
from src.world_state import (
    AgentRole,
    Goal,
    Notebook,
    Observation,
    VisibilityError,
    WorldState,
    append_message,
    observe,
)

from .prompts import render_prompt
from .specs import AgentSpec

APPROVAL_TOKEN = "PLAN APPROVED"
NO_EVIDENCE = "(no gathered evidence)"

_APPROVAL_LINE = re.compile(r"^plan\s+approved[!.]*$")


def is_approved(critic_response: str) -> bool:
    """Check if the critic approved the plan.

    The token counts only at the start of the reply or on a line of its own,
    so a critique that merely mentions it is not an approval.

    Args:
        critic_response: The critic's reply text

    Returns:
        True if approved, False otherwise
    """
    if not critic_response:
        return False

    normalized = critic_response.strip().lower()
    if normalized.startswith(APPROVAL_TOKEN.lower()):
        return True

    lines = [line.strip().strip("*") for line in normalized.split("\n")]
    return any(_APPROVAL_LINE.match(line) for line in lines)


def summarize_for_planner(goal: Goal, notebook: Notebook) -> str:
    """Deterministic planning brief: goal text, then the notebook grouped by domain.

    Entries keep their write order inside each domain and every record is
    rendered field by field with its exact names and numbers.
    """
    lines = ["TASK", goal.render(), "", "GATHERED EVIDENCE"]
    if not notebook.entries:
        lines.append(NO_EVIDENCE)
        return "\n".join(lines)

    for domain in DOMAIN_ORDER:
        entries = [entry for entry in notebook.entries if entry.domain is domain]
        if not entries:
            continue
        lines.append("")
        lines.append(f"## {domain.value}")
        for entry in entries:
            lines.append(
                f"{entry.tool_call.render()} by {entry.author.value} "
                f"(turn {entry.turn_index}): {len(entry.records)} result(s)"
            )
            lines.extend(f"- {describe_record(record)}" for record in entry.records)
    return "\n".join(lines)


async def compile_plan(
    brief: str,
    obs: Observation,
    spec: AgentSpec,
    gateway: LLMGateway,
) -> str:
    """One compiler call; the raw reply is returned for the plan parser to judge.

    Raises:
        VisibilityError: If the observation lacks the notebook view
    """
    if obs.notebook_view is None:
        raise VisibilityError("the compiler plans from (G, c, N)")
    prompt = render_prompt(
        "compiler_turn",
        brief=brief,
        conversation=obs.conversation_view.render(),
    )
    response = await gateway.complete(spec.request([("user", prompt)]))
    return response.text or ""


class RefinementResult(BaseModel):
    """Outcome of the critic/compiler loop."""

    model_config = ConfigDict(frozen=True)

    plan_text: str
    critic_rounds: int = 0
    approved: bool = False
    budget_exhausted: bool = False


async def critic_refine(
    plan_text: str,
    state: WorldState,
    critic: AgentSpec,
    compiler: AgentSpec,
    gateway: LLMGateway,
    brief: str,
    max_rounds: int = 3,
    max_messages: int | None = None,
) -> tuple[WorldState, RefinementResult]:
    """Alternate critic and compiler messages until approval or `max_rounds`.

    The critic sees (G, c); each revision is a fresh compiler call that sees
    the critique in c. `max_messages` caps the conversation length so the
    loop stops at the episode's step limit.

    Returns:
        The state with every critic and compiler message appended, and the
        latest compiler plan
    """
    if max_rounds < 0:
        raise ValueError("max_rounds must be >= 0")

    def budget_left() -> bool:
        return max_messages is None or len(state.conversation) < max_messages

    rounds = 0
    while rounds < max_rounds:
        if not budget_left():
            return state, RefinementResult(
                plan_text=plan_text, critic_rounds=rounds, budget_exhausted=True
            )
        obs = observe(state, AgentRole.PLAN_CRITIC)
        prompt = render_prompt(
            "critic_turn",
            goal=obs.goal_view,
            conversation=obs.conversation_view.render(),
        )
        review = (await gateway.complete(critic.request([("user", prompt)]))).text or ""
        state = append_message(state, AgentRole.PLAN_CRITIC, review)
        rounds += 1
        if is_approved(review):
            return state, RefinementResult(plan_text=plan_text, critic_rounds=rounds, approved=True)

        if not budget_left():
            return state, RefinementResult(
                plan_text=plan_text, critic_rounds=rounds, budget_exhausted=True
            )
        plan_text = await compile_plan(
            brief, observe(state, AgentRole.PLAN_COMPILER), compiler, gateway
        )
        state = append_message(state, AgentRole.PLAN_COMPILER, plan_text)

    return state, RefinementResult(plan_text=plan_text, critic_rounds=rounds)
