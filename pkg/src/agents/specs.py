"""Agent specifications: prompts, tool permissions and notebook rights per role."""

from collections.abc import Sequence
from pathlib import Path
from typing import Any, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.llm_gateway import ChatRequest, ChatTurn
from src.sandbox import TOOL_BY_DOMAIN, TOOL_SPECS
from src.world_state import EXPERT_DOMAINS, AgentRole, is_expert

from .prompts import render_prompt

SYSTEM_PROMPT_NAMES: dict[AgentRole, str] = {
    AgentRole.TRANSPORT_EXPERT: "transport_expert",
    AgentRole.HOTEL_EXPERT: "hotel_expert",
    AgentRole.RESTAURANT_EXPERT: "restaurant_expert",
    AgentRole.ATTRACTION_EXPERT: "attraction_expert",
    AgentRole.ORCHESTRATOR: "orchestrator",
    AgentRole.PLAN_COMPILER: "plan_compiler",
    AgentRole.PLAN_CRITIC: "plan_critic",
    AgentRole.SINGLE_AGENT: "single_agent",
}

ROLE_DESCRIPTIONS: dict[AgentRole, str] = {
    AgentRole.TRANSPORT_EXPERT: "searches flights and settles travel dates and cities",
    AgentRole.HOTEL_EXPERT: "searches hotels and checks their house rules and minimum stays",
    AgentRole.RESTAURANT_EXPERT: "searches restaurants and picks a different one for each meal",
    AgentRole.ATTRACTION_EXPERT: "searches attractions for each day",
    AgentRole.PLAN_SUMMARIZER: "hands everything gathered to the planner (choose FINISH)",
}


class AgentSpec(BaseModel):
    """Everything that distinguishes one role's policy."""

    model_config = ConfigDict(frozen=True)

    role: AgentRole
    system_prompt: str = ""
    tool_permissions: frozenset[str] = frozenset()
    notebook_read: bool = False
    notebook_write: bool = False
    is_llm_backed: bool = True
    temperature: float = Field(default=0.0, ge=0.0)
    max_tokens: int = Field(default=2048, gt=0)
    model_id: str = "gpt-4o"

    @model_validator(mode="after")
    def validate_rights(self) -> Self:
        if self.notebook_read and self.role not in (
            AgentRole.PLAN_SUMMARIZER,
            AgentRole.PLAN_COMPILER,
        ):
            raise ValueError(f"{self.role.value} cannot read the notebook")
        if self.notebook_write and not is_expert(self.role):
            raise ValueError(f"{self.role.value} cannot write the notebook")
        if self.role is AgentRole.PLAN_SUMMARIZER and self.is_llm_backed:
            raise ValueError("PlanSummarizer is not LLM-backed")
        unknown = self.tool_permissions - TOOL_SPECS.keys()
        if unknown:
            raise ValueError(f"Unknown tools: {', '.join(sorted(unknown))}")
        return self

    def request(self, turns: Sequence[tuple[str, str]]) -> ChatRequest:
        """Chat request carrying this role's system prompt and decoding settings."""
        return ChatRequest(
            role=self.role.value,
            system_prompt=self.system_prompt,
            turns=tuple(ChatTurn(speaker=speaker, text=text) for speaker, text in turns),
            temperature=self.temperature,
            max_tokens=self.max_tokens,
            model_id=self.model_id,
        )


def describe_tools(names: Sequence[str]) -> str:
    return "\n".join(
        f"{TOOL_SPECS[name].signature}: {TOOL_SPECS[name].description}" for name in names
    )


def build_agent_specs(
    prompt_dir: Path | None = None,
    temperature: float = 0.0,
    max_tokens: int = 2048,
    model_id: str = "gpt-4o",
) -> dict[AgentRole, AgentSpec]:
    """Specs for every role, with prompts loaded from the bundled or override templates."""
    specs: dict[AgentRole, AgentSpec] = {}

    def llm_spec(role: AgentRole, **rights: Any) -> AgentSpec:
        return AgentSpec(
            role=role,
            temperature=temperature,
            max_tokens=max_tokens,
            model_id=model_id,
            **rights,
        )

    for role, domain in EXPERT_DOMAINS.items():
        specs[role] = llm_spec(
            role,
            system_prompt=render_prompt(SYSTEM_PROMPT_NAMES[role], prompt_dir),
            tool_permissions=frozenset({TOOL_BY_DOMAIN[domain].name}),
            notebook_write=True,
        )

    for role in (AgentRole.ORCHESTRATOR, AgentRole.PLAN_CRITIC):
        specs[role] = llm_spec(
            role,
            system_prompt=render_prompt(SYSTEM_PROMPT_NAMES[role], prompt_dir),
        )

    specs[AgentRole.PLAN_SUMMARIZER] = AgentSpec(
        role=AgentRole.PLAN_SUMMARIZER,
        notebook_read=True,
        is_llm_backed=False,
    )
    specs[AgentRole.PLAN_COMPILER] = llm_spec(
        AgentRole.PLAN_COMPILER,
        system_prompt=render_prompt(SYSTEM_PROMPT_NAMES[AgentRole.PLAN_COMPILER], prompt_dir),
        notebook_read=True,
    )

    all_tools = tuple(TOOL_SPECS)
    specs[AgentRole.SINGLE_AGENT] = llm_spec(
        AgentRole.SINGLE_AGENT,
        system_prompt=render_prompt(
            SYSTEM_PROMPT_NAMES[AgentRole.SINGLE_AGENT],
            prompt_dir,
            tools=describe_tools(all_tools),
        ),
        tool_permissions=frozenset(all_tools),
    )
    return specs
