"""Episode drivers: fixed-order workflow, orchestrator-led conversation, single agent."""

import logging
import time
from collections import Counter
from collections.abc import Iterable, Sequence

from src.agents import (
    AgentSpec,
    build_agent_specs,
    compile_plan,
    critic_refine,
    expert_turn,
    orchestrator_decide,
    single_agent_step,
    summarize_for_planner,
)
from src.llm_gateway import GatewayError, LLMGateway, create_gateway
from src.orchestration.models import (
    CompletionReason,
    EventKind,
    RevisitStats,
    RunConfig,
    RunMode,
    RunTrace,
)
from src.plans import try_parse_plan
from src.sandbox import Sandbox, ToolArgumentError, execute_tool
from src.world_state import (
    EXPERT_ROLES,
    ActionKind,
    AgentRole,
    Goal,
    WorldState,
    append_message,
    attach_tool_return,
    end_turn,
    new_state,
    observe,
    record_reflection,
)

logger = logging.getLogger(__name__)

# Experts in fixed-workflow speaking order
FIXED_ORDER: tuple[AgentRole, ...] = EXPERT_ROLES


def revisits_from_speakers(speakers: Iterable[AgentRole]) -> dict[str, int]:
    """Turns after the first, per expert (turns - 1, floored at 0)."""
    turns = Counter(speakers)
    return {role.value: max(turns[role] - 1, 0) for role in EXPERT_ROLES}


def count_revisits(trace: RunTrace) -> dict[str, int]:
    """Per-expert revisit counts of one trace."""
    return revisits_from_speakers(trace.speakers())


def average_revisits(traces: Sequence[RunTrace]) -> RevisitStats:
    """Average revisits per expert across traces (zeros for an empty set)."""
    if not traces:
        return RevisitStats()
    totals: Counter[str] = Counter()
    for trace in traces:
        totals.update(count_revisits(trace))
    return RevisitStats(
        per_expert={role.value: totals[role.value] / len(traces) for role in EXPERT_ROLES},
        task_count=len(traces),
    )


class _Episode:
    """Mutable bookkeeping for one episode: world state, trace and step budget."""

    def __init__(
        self,
        goal: Goal,
        sandbox: Sandbox,
        config: RunConfig,
        gateway: LLMGateway,
        specs: dict[AgentRole, AgentSpec],
    ) -> None:
        self.goal = goal
        self.sandbox = sandbox
        self.config = config
        self.gateway = gateway
        self.specs = specs
        self.state: WorldState = new_state(goal)
        self.decisions = 0
        self.trace = RunTrace(
            task_id=goal.task_id,
            mode=config.mode,
            config_digest=config.digest(),
        )

    @property
    def steps_used(self) -> int:
        steps = len(self.state.conversation)
        if self.config.count_orchestrator_decisions:
            steps += self.decisions
        return steps

    def can_speak(self) -> bool:
        return self.steps_used < self.config.max_steps

    def message_cap(self) -> int:
        """Conversation length at which the step budget is spent."""
        if self.config.count_orchestrator_decisions:
            return max(self.config.max_steps - self.decisions, 0)
        return self.config.max_steps

    def publish(self, author: AgentRole, content: str, kind: ActionKind | None = None) -> None:
        self.state = append_message(self.state, author, content, kind)
        self._record_new_messages(len(self.state.conversation) - 1)

    def _record_new_messages(self, known: int) -> None:
        for message in self.state.conversation.messages[known:]:
            self.trace.add_event(
                EventKind.MESSAGE, message.index, role=message.author, content=message.content
            )

    async def expert(self, role: AgentRole) -> None:
        state, result = await expert_turn(
            self.state,
            self.specs[role],
            self.sandbox,
            self.gateway,
            self.config.max_tool_rounds,
        )
        self.state = state
        turn = self.state.next_turn
        for entry in result.entries:
            self.trace.add_event(
                EventKind.TOOL_CALL,
                turn,
                role=role,
                content=entry.tool_call.render(),
                data={"result_count": len(entry.records)},
            )
            self.trace.add_event(
                EventKind.NOTEBOOK_WRITE,
                turn,
                role=role,
                content=entry.entry_id,
                data=entry.model_dump(mode="json"),
            )
        self.publish(role, result.message)
        self.state = end_turn(self.state)

    async def decide(self) -> AgentRole:
        decision = await orchestrator_decide(
            observe(self.state, AgentRole.ORCHESTRATOR),
            self.specs[AgentRole.ORCHESTRATOR],
            self.gateway,
        )
        self.state = record_reflection(self.state, decision.reflection, decision.chosen)
        self.decisions += 1
        self.trace.add_event(
            EventKind.DECISION,
            decision.turn_index,
            role=AgentRole.ORCHESTRATOR,
            content=decision.chosen.value,
            data={
                "reflection": decision.reflection,
                "attempts": decision.attempts,
                "fallback": decision.fallback,
            },
        )
        return decision.chosen

    async def endgame(self) -> str | None:
        """Summarizer, compiler, then the critic loop; None if the budget ran out first."""
        notebook = observe(self.state, AgentRole.PLAN_SUMMARIZER).notebook_view
        assert notebook is not None
        brief = summarize_for_planner(self.goal, notebook)
        self.trace.add_event(
            EventKind.BRIEF,
            self.state.next_turn,
            role=AgentRole.PLAN_SUMMARIZER,
            content=brief,
        )
        if not self.can_speak():
            return None

        compiler = self.specs[AgentRole.PLAN_COMPILER]
        plan_text = await compile_plan(
            brief, observe(self.state, AgentRole.PLAN_COMPILER), compiler, self.gateway
        )
        self.publish(AgentRole.PLAN_COMPILER, plan_text)

        known = len(self.state.conversation)
        self.state, refinement = await critic_refine(
            plan_text,
            self.state,
            self.specs[AgentRole.PLAN_CRITIC],
            compiler,
            self.gateway,
            brief,
            max_rounds=self.config.max_critic_rounds,
            max_messages=self.message_cap(),
        )
        self._record_new_messages(known)
        return refinement.plan_text

    def finish(self, final_text: str | None, reason: CompletionReason | None = None) -> RunTrace:
        trace = self.trace
        trace.message_count = len(self.state.conversation)
        trace.final_plan_text = final_text
        plan = try_parse_plan(final_text)
        within_limit = self.steps_used <= self.config.max_steps
        trace.plan = plan
        trace.delivered = plan is not None and within_limit
        if reason is None:
            reason = CompletionReason.DELIVERED if trace.delivered else CompletionReason.NO_PLAN
        trace.completion_reason = reason
        if trace.mode is not RunMode.FIXED:
            trace.revisit_counts = count_revisits(trace)
        else:
            trace.revisit_counts = {role.value: 0 for role in EXPERT_ROLES}
        trace.usage = self.gateway.usage
        return trace

    def fail(self, error: Exception) -> RunTrace:
        message = f"{type(error).__name__}: {error}"
        self.trace.add_event(EventKind.ERROR, self.state.next_turn, content=message)
        self.trace.error = message
        trace = self.finish(None, CompletionReason.ERROR)
        return trace


async def _run(
    goal: Goal,
    sandbox: Sandbox,
    config: RunConfig,
    gateway: LLMGateway | None,
    specs: dict[AgentRole, AgentSpec] | None,
) -> RunTrace:
    owns_gateway = gateway is None
    if gateway is None:
        gateway = create_gateway(config.backend)
    if specs is None:
        specs = build_agent_specs(
            prompt_dir=config.prompt_dir,
            temperature=config.temperature,
            max_tokens=config.max_tokens,
            model_id=config.backend.model_id,
        )

    episode = _Episode(goal, sandbox, config, gateway, specs)
    started = time.perf_counter()
    logger.info(
        f"Starting {config.mode.value} run for task {goal.task_id}",
        extra={"task_id": goal.task_id, "mode": config.mode.value},
    )
    try:
        if config.mode is RunMode.FIXED:
            trace = await _fixed(episode)
        elif config.mode is RunMode.ORCHESTRATED:
            trace = await _orchestrated(episode)
        else:
            trace = await _single_agent(episode)
    except GatewayError as e:
        logger.error(
            f"Run for task {goal.task_id} failed: {e}",
            extra={"task_id": goal.task_id, "mode": config.mode.value},
        )
        trace = episode.fail(e)
    finally:
        if owns_gateway:
            await gateway.aclose()

    trace.wall_time = time.perf_counter() - started
    logger.info(
        f"Finished task {goal.task_id}: delivered={trace.delivered} "
        f"in {trace.wall_time:.2f}s",
        extra={
            "task_id": goal.task_id,
            "mode": config.mode.value,
            "delivered": trace.delivered,
            "messages": trace.message_count,
            "wall_time": trace.wall_time,
        },
    )
    return trace


async def _fixed(episode: _Episode) -> RunTrace:
    for role in FIXED_ORDER:
        if not episode.can_speak():
            return episode.finish(None, CompletionReason.STEP_LIMIT)
        await episode.expert(role)
    final_text = await episode.endgame()
    if final_text is None:
        return episode.finish(None, CompletionReason.STEP_LIMIT)
    return episode.finish(final_text)


async def _orchestrated(episode: _Episode) -> RunTrace:
    while True:
        if not episode.can_speak():
            logger.info(
                f"Conversation cut off at {episode.config.max_steps} steps",
                extra={"task_id": episode.goal.task_id},
            )
            return episode.finish(None, CompletionReason.STEP_LIMIT)
        chosen = await episode.decide()
        if chosen is AgentRole.PLAN_SUMMARIZER:
            break
        if not episode.can_speak():
            return episode.finish(None, CompletionReason.STEP_LIMIT)
        await episode.expert(chosen)

    final_text = await episode.endgame()
    if final_text is None:
        return episode.finish(None, CompletionReason.STEP_LIMIT)
    return episode.finish(final_text)


async def _single_agent(episode: _Episode) -> RunTrace:
    spec = episode.specs[AgentRole.SINGLE_AGENT]
    errors: dict[int, list[str]] = {}
    while episode.can_speak():
        step = await single_agent_step(
            observe(episode.state, AgentRole.SINGLE_AGENT), spec, episode.gateway, errors
        )
        turn = episode.state.next_turn
        for call in step.tool_calls:
            try:
                records = execute_tool(episode.sandbox, call.name, call.arguments)
            except ToolArgumentError as e:
                errors.setdefault(turn, []).append(f"{call.render()} failed: {e}")
                continue
            episode.state = attach_tool_return(
                episode.state, AgentRole.SINGLE_AGENT, call, records
            )
            episode.trace.add_event(
                EventKind.TOOL_CALL,
                turn,
                role=AgentRole.SINGLE_AGENT,
                content=call.render(),
                data={"result_count": len(records)},
            )

        plan = None if step.tool_calls else try_parse_plan(step.reply)
        kind = ActionKind.EMIT_PLAN if plan is not None else ActionKind.SPEAK
        episode.publish(AgentRole.SINGLE_AGENT, step.reply, kind)
        if plan is not None:
            return episode.finish(step.reply)

    return episode.finish(None, CompletionReason.STEP_LIMIT)


async def run_fixed(
    goal: Goal,
    sandbox: Sandbox,
    config: RunConfig,
    gateway: LLMGateway | None = None,
    specs: dict[AgentRole, AgentSpec] | None = None,
) -> RunTrace:
    """Experts speak once each in fixed order, then summarizer, compiler and critic.

    Args:
        goal: Task to plan
        sandbox: Travel database
        config: Run configuration (mode must be fixed)
        gateway: Gateway to use; built from config.backend when omitted
        specs: Agent specs; built from config when omitted

    Returns:
        RunTrace; gateway failures give an undelivered trace with an error event
    """
    if config.mode is not RunMode.FIXED:
        raise ValueError(f"run_fixed needs mode=fixed, got {config.mode.value}")
    return await _run(goal, sandbox, config, gateway, specs)


async def run_orchestrated(
    goal: Goal,
    sandbox: Sandbox,
    config: RunConfig,
    gateway: LLMGateway | None = None,
    specs: dict[AgentRole, AgentSpec] | None = None,
) -> RunTrace:
    """Orchestrator picks each next speaker until FINISH or the step limit."""
    if config.mode is not RunMode.ORCHESTRATED:
        raise ValueError(f"run_orchestrated needs mode=orchestrated, got {config.mode.value}")
    return await _run(goal, sandbox, config, gateway, specs)


async def run_single_agent(
    goal: Goal,
    sandbox: Sandbox,
    config: RunConfig,
    gateway: LLMGateway | None = None,
    specs: dict[AgentRole, AgentSpec] | None = None,
) -> RunTrace:
    """One agent with all four tools until it emits a plan or hits the step limit."""
    if config.mode is not RunMode.SINGLE_AGENT:
        raise ValueError(f"run_single_agent needs mode=single_agent, got {config.mode.value}")
    return await _run(goal, sandbox, config, gateway, specs)


async def run_episode(
    goal: Goal,
    sandbox: Sandbox,
    config: RunConfig,
    gateway: LLMGateway | None = None,
    specs: dict[AgentRole, AgentSpec] | None = None,
) -> RunTrace:
    """Dispatch on config.mode."""
    return await _run(goal, sandbox, config, gateway, specs)
