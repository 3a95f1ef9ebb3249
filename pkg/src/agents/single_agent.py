"""Single-agent baseline policy: one model with all four tools, think/act/observe."""

from pydantic import BaseModel, ConfigDict

from src.llm_gateway import LLMGateway
from src.sandbox import describe_results
from src.world_state import AgentRole, Observation, ToolCall, VisibilityError

from .prompts import render_prompt
from .specs import AgentSpec
from .tool_calls import extract_tool_calls

NO_ACTION = (
    "No tool call or plan found. Call a tool, or write the final plan in the required format."
)


class SingleAgentStep(BaseModel):
    """One reply of the single agent and the tool calls it contains."""

    model_config = ConfigDict(frozen=True)

    reply: str
    tool_calls: tuple[ToolCall, ...] = ()


def _observation_text(obs: Observation, turn_index: int, errors: dict[int, list[str]]) -> str:
    returns = [p for p in obs.private_tool_returns or () if p.turn_index == turn_index]
    blocks = [describe_results(p.tool_call.name, p.tool_call.arguments, p.records) for p in returns]
    blocks.extend(errors.get(turn_index, []))
    if not blocks:
        return NO_ACTION
    return "Observation:\n" + "\n\n".join(blocks)


async def single_agent_step(
    obs: Observation,
    spec: AgentSpec,
    gateway: LLMGateway,
    errors: dict[int, list[str]] | None = None,
) -> SingleAgentStep:
    """Query the single agent once.

    Its earlier replies are the public conversation; after each one it sees
    the returns of the calls that reply made (its private in-flight context).

    Args:
        obs: The single agent's observation
        spec: The single agent's spec (all four tools)
        gateway: Chat completion gateway
        errors: Tool errors by the turn index of the reply that caused them
    """
    if obs.role is not AgentRole.SINGLE_AGENT or obs.notebook_view is not None:
        raise VisibilityError("single-agent steps take the single agent's own observation")

    turns: list[tuple[str, str]] = [
        ("user", render_prompt("single_agent_turn", goal=obs.goal_view))
    ]
    for message in obs.conversation_view.messages:
        turns.append(("assistant", message.content))
        turns.append(("user", _observation_text(obs, message.index, errors or {})))

    response = await gateway.complete(spec.request(turns))
    reply = response.text or ""
    return SingleAgentStep(
        reply=reply,
        tool_calls=tuple(extract_tool_calls(reply, spec.tool_permissions)),
    )
