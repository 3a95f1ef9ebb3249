"""Expert policy: query the model, run its tool calls, publish its answer."""

import logging

from pydantic import BaseModel, ConfigDict

from src.llm_gateway import LLMGateway
from src.sandbox import Sandbox, ToolArgumentError, describe_results, execute_tool
from src.world_state import (
    NotebookEntry,
    Observation,
    ToolCall,
    VisibilityError,
    WorldState,
    is_expert,
    notebook_write,
    observe,
)

from .prompts import render_prompt
from .specs import AgentSpec
from .tool_calls import extract_tool_calls, find_unpermitted_calls

logger = logging.getLogger(__name__)

UNKNOWN_TOOL_APOLOGY = (
    "Sorry, I could not finish my part of the plan: I tried to use a tool "
    "that is not available to me."
)
ROUND_CAP_APOLOGY = (
    "Sorry, I could not finish my part of the plan within the allowed number of tool calls."
)


class ExpertTurnResult(BaseModel):
    """Outcome of one expert turn."""

    model_config = ConfigDict(frozen=True)

    message: str
    entries: tuple[NotebookEntry, ...] = ()
    tool_calls: tuple[ToolCall, ...] = ()
    rounds: int = 0
    aborted: bool = False


def _first_turn(obs: Observation) -> str:
    return render_prompt(
        "expert_turn",
        goal=obs.goal_view,
        conversation=obs.conversation_view.render(),
    )


def _round_feedback(obs: Observation, executed: int, problems: list[str]) -> str:
    returns = obs.private_tool_returns or ()
    recent = returns[len(returns) - executed :] if executed else ()
    blocks = [
        describe_results(p.tool_call.name, p.tool_call.arguments, p.records) for p in recent
    ]
    blocks.extend(problems)
    return "\n\n".join(blocks)


async def expert_turn(
    state: WorldState,
    spec: AgentSpec,
    sandbox: Sandbox,
    gateway: LLMGateway,
    max_tool_rounds: int = 5,
) -> tuple[WorldState, ExpertTurnResult]:
    """Run one expert turn.

    The model is queried repeatedly; each reply's tool calls are executed
    against the sandbox, written to the notebook and fed back as private
    context. The first reply without a tool call is the public message.
    A call to a tool the expert does not have is reported back once; a
    second one ends the turn with an apology, as does exceeding
    `max_tool_rounds`.

    Returns:
        The state with this turn's notebook entries written (the public
        message is not yet appended) and the turn result
    """
    if not is_expert(spec.role):
        raise VisibilityError(f"{spec.role.value} is not an expert")

    role = spec.role
    obs = observe(state, role)
    turns: list[tuple[str, str]] = [("user", _first_turn(obs))]
    first_entry = len(state.notebook)
    executed: list[ToolCall] = []
    rounds = 0
    unknown_reported = False

    while True:
        response = await gateway.complete(spec.request(turns))
        reply = response.text or ""
        calls = extract_tool_calls(reply, spec.tool_permissions)
        unknown = find_unpermitted_calls(reply, spec.tool_permissions)

        if unknown and unknown_reported:
            logger.warning(
                f"{role.value} called unavailable tool {unknown[0].name} twice; ending turn",
                extra={"role": role.value, "tool": unknown[0].name},
            )
            return state, _result(state, first_entry, UNKNOWN_TOOL_APOLOGY, executed, rounds, True)

        if not calls and not unknown:
            return state, _result(state, first_entry, reply, executed, rounds, False)

        if rounds >= max_tool_rounds:
            logger.warning(
                f"{role.value} exceeded {max_tool_rounds} tool rounds",
                extra={"role": role.value, "rounds": rounds},
            )
            return state, _result(state, first_entry, ROUND_CAP_APOLOGY, executed, rounds, True)
        rounds += 1

        problems: list[str] = []
        if unknown:
            unknown_reported = True
            names = ", ".join(sorted({call.name for call in unknown}))
            available = ", ".join(sorted(spec.tool_permissions))
            problems.append(f"Unknown tool: {names}. The only tool you can call is {available}.")

        count = 0
        for call in calls:
            try:
                records = execute_tool(sandbox, call.name, call.arguments)
            except ToolArgumentError as e:
                problems.append(f"{call.render()} failed: {e}")
                continue
            state = notebook_write(state, role, call, records, sandbox)
            executed.append(call)
            count += 1

        obs = observe(state, role)
        turns.append(("assistant", reply))
        turns.append(("user", _round_feedback(obs, count, problems)))


def _result(
    state: WorldState,
    first_entry: int,
    message: str,
    executed: list[ToolCall],
    rounds: int,
    aborted: bool,
) -> ExpertTurnResult:
    return ExpertTurnResult(
        message=message,
        entries=state.notebook.entries[first_entry:],
        tool_calls=tuple(executed),
        rounds=rounds,
        aborted=aborted,
    )
