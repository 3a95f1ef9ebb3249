"""Unit tests for world state operations and per-role observations."""

import datetime as dt
import random
import re

import pytest
from pydantic import ValidationError

from src.sandbox import (
    AttractionRecord,
    Domain,
    FlightRecord,
    HotelRecord,
    RestaurantRecord,
    load_sandbox,
)
from src.world_state import (
    EXPERT_DOMAINS,
    EXPERT_ROLES,
    ActionKind,
    AgentAction,
    AgentRole,
    GoalMetadata,
    GroundingError,
    ToolCall,
    VisibilityError,
    WorldState,
    append_message,
    end_turn,
    new_state,
    notebook_write,
    observe,
    record_reflection,
    serialize_state,
)
from tests.support.corpus import SANDBOX_DIR, goal

SECRET = re.compile(r"secret-\d{5}")
SCRATCH = re.compile(r"scratch-\d{5}")


def make_record(domain: Domain, name: str):
    if domain is Domain.TRANSPORTATION:
        return FlightRecord(
            flight_number=name,
            origin_city="Boston",
            destination_city="Rome",
            departure_time=dt.time(8, 0),
            arrival_time=dt.time(21, 30),
            duration_minutes=570,
            price=400,
            date=dt.date(2022, 3, 10),
        )
    if domain is Domain.HOTEL:
        return HotelRecord(
            name=name,
            city="Rome",
            price_per_night=90,
            room_type="Private room",
            minimum_nights=1,
            maximum_occupancy=2,
        )
    if domain is Domain.RESTAURANT:
        return RestaurantRecord(
            name=name, city="Rome", cuisines=("Italian",), average_cost=20, rating=4.0
        )
    return AttractionRecord(name=name, city="Rome")


def call(name: str = "hotel_search", *arguments: str) -> ToolCall:
    return ToolCall(name=name, arguments=arguments or ("Rome",))


class TestGoalMetadata:
    """Test suite for GoalMetadata validation."""

    def test_duration_must_be_supported(self):
        """Should accept only 3, 5 or 7 day trips."""
        with pytest.raises(ValidationError, match="3, 5 or 7"):
            GoalMetadata(
                origin="Boston",
                destination="Rome",
                duration_days=4,
                dates=tuple(dt.date(2022, 3, d) for d in range(10, 14)),
            )

    def test_date_count_matches_duration(self):
        """Should require one date per day."""
        with pytest.raises(ValidationError, match="expected 3 dates"):
            GoalMetadata(
                origin="Boston",
                destination="Rome",
                duration_days=3,
                dates=(dt.date(2022, 3, 10), dt.date(2022, 3, 11)),
            )

    def test_dates_strictly_increasing(self):
        """Should reject repeated or unordered dates."""
        with pytest.raises(ValidationError, match="strictly increasing"):
            GoalMetadata(
                origin="Boston",
                destination="Rome",
                duration_days=3,
                dates=(dt.date(2022, 3, 10), dt.date(2022, 3, 10), dt.date(2022, 3, 12)),
            )


class TestActionSpaces:
    """Test suite for AgentAction permission checks."""

    def test_orchestrator_only_selects(self):
        """Should allow the orchestrator nothing but selecting the next agent."""
        AgentAction(role=AgentRole.ORCHESTRATOR, kind=ActionKind.SELECT_NEXT_AGENT)
        for kind in (ActionKind.SPEAK, ActionKind.TOOL_CALL, ActionKind.EMIT_PLAN):
            with pytest.raises(ValidationError):
                AgentAction(role=AgentRole.ORCHESTRATOR, kind=kind)

    def test_critic_cannot_call_tools(self):
        """Should keep the critic to speaking."""
        with pytest.raises(ValidationError, match="PlanCritic may not tool_call"):
            AgentAction(role=AgentRole.PLAN_CRITIC, kind=ActionKind.TOOL_CALL)

    def test_experts_speak_and_call_tools(self):
        """Should let every expert speak and call tools."""
        for role in EXPERT_ROLES:
            AgentAction(role=role, kind=ActionKind.SPEAK)
            AgentAction(role=role, kind=ActionKind.TOOL_CALL)


class TestStateOperations:
    """Test suite for the state transition functions."""

    def test_new_state_is_empty(self):
        """Should start with the goal and nothing else."""
        state = new_state(goal())
        assert len(state.conversation) == 0
        assert len(state.notebook) == 0
        assert state.next_turn == 1

    def test_append_message_numbers_turns(self):
        """Should index messages from 1 without touching earlier ones."""
        state = new_state(goal())
        first = append_message(state, AgentRole.HOTEL_EXPERT, "hello")
        second = append_message(first, AgentRole.PLAN_CRITIC, "fine")
        assert [m.index for m in second.conversation.messages] == [1, 2]
        assert second.conversation.messages[0] == first.conversation.messages[0]
        assert len(state.conversation) == 0

    def test_orchestrator_never_speaks(self):
        """Should refuse a public message from the orchestrator."""
        with pytest.raises(VisibilityError, match="never speaks publicly"):
            append_message(new_state(goal()), AgentRole.ORCHESTRATOR, "I pick hotels")

    def test_compiler_messages_are_plan_emissions(self):
        """Should let the compiler emit a plan but not chat."""
        state = append_message(new_state(goal()), AgentRole.PLAN_COMPILER, "Day 1: ...")
        assert state.conversation.messages[0].author is AgentRole.PLAN_COMPILER
        with pytest.raises(VisibilityError):
            append_message(state, AgentRole.PLAN_COMPILER, "chat", kind=ActionKind.SPEAK)

    def test_notebook_write_by_expert(self):
        """Should store the verbatim return tagged with the expert's domain."""
        record = make_record(Domain.HOTEL, "Hotel Trevi")
        state = notebook_write(new_state(goal()), AgentRole.HOTEL_EXPERT, call(), [record])
        entry = state.notebook.entries[0]
        assert entry.entry_id == "N0001"
        assert entry.domain is Domain.HOTEL
        assert entry.records == (record,)
        assert entry.turn_index == 1
        assert state.pending[0].actor is AgentRole.HOTEL_EXPERT

    def test_notebook_write_by_non_expert(self):
        """Should refuse notebook writes from roles that are not experts."""
        for role in (AgentRole.PLAN_CRITIC, AgentRole.PLAN_COMPILER, AgentRole.ORCHESTRATOR):
            with pytest.raises(VisibilityError, match="cannot write to the notebook"):
                notebook_write(new_state(goal()), role, call(), [])

    def test_notebook_write_grounding(self):
        """Should reject records that are not in the sandbox when one is given."""
        sandbox = load_sandbox(SANDBOX_DIR)
        real = sandbox.find_hotel("Hotel Trevi")
        assert real is not None
        state = notebook_write(
            new_state(goal()), AgentRole.HOTEL_EXPERT, call(), [real], sandbox=sandbox
        )
        assert len(state.notebook) == 1
        fake = make_record(Domain.HOTEL, "Grand Palace")
        with pytest.raises(GroundingError, match="Grand Palace"):
            notebook_write(state, AgentRole.HOTEL_EXPERT, call(), [fake], sandbox=sandbox)

    def test_end_turn_discards_pending(self):
        """Should drop in-flight returns but keep the notebook."""
        record = make_record(Domain.ATTRACTION, "Colosseum")
        state = notebook_write(
            new_state(goal()), AgentRole.ATTRACTION_EXPERT, call("attraction_search"), [record]
        )
        state = end_turn(state)
        assert state.pending == ()
        assert len(state.notebook) == 1

    def test_record_reflection(self):
        """Should keep reflections in the private scratch log."""
        state = record_reflection(new_state(goal()), "hotels next", AgentRole.HOTEL_EXPERT)
        assert state.scratch[0].chosen is AgentRole.HOTEL_EXPERT
        with pytest.raises(VisibilityError, match="cannot select itself"):
            record_reflection(state, "me", AgentRole.ORCHESTRATOR)

    def test_future_turn_reference_rejected(self):
        """Should reject a state whose notebook points past the next turn."""
        state = notebook_write(
            new_state(goal()), AgentRole.HOTEL_EXPERT, call(), [make_record(Domain.HOTEL, "X")]
        )
        entry = state.notebook.entries[0].model_copy(update={"turn_index": 5})
        with pytest.raises(ValidationError, match="future turn"):
            WorldState(
                goal=state.goal,
                notebook=state.notebook.model_copy(update={"entries": (entry,)}),
            )

    def test_serialize_state_is_deterministic(self):
        """Should give identical strings for identical action sequences."""

        def build():
            state = new_state(goal())
            state = notebook_write(
                state, AgentRole.HOTEL_EXPERT, call(), [make_record(Domain.HOTEL, "A")]
            )
            return append_message(end_turn(state), AgentRole.HOTEL_EXPERT, "A is good")

        assert serialize_state(build()) == serialize_state(build())


class TestObserve:
    """Test suite for observe()."""

    @pytest.fixture
    def state(self):
        state = new_state(goal())
        state = notebook_write(
            state,
            AgentRole.HOTEL_EXPERT,
            call(),
            [make_record(Domain.HOTEL, "secret-00001")],
        )
        return record_reflection(state, "scratch-00001", AgentRole.HOTEL_EXPERT)

    def test_orchestrator_sees_goal_and_conversation_only(self, state):
        """Should hide the notebook and tool returns from the orchestrator."""
        observation = observe(state, AgentRole.ORCHESTRATOR)
        assert observation.notebook_view is None
        assert observation.private_tool_returns is None
        assert "secret-00001" not in observation.serialize()
        assert "scratch-00001" not in observation.serialize()

    def test_acting_expert_sees_own_returns(self, state):
        """Should show an expert its own in-flight returns."""
        observation = observe(state, AgentRole.HOTEL_EXPERT)
        assert observation.private_tool_returns is not None
        assert len(observation.private_tool_returns) == 1
        assert observation.notebook_view is None

    def test_other_expert_sees_nothing_private(self, state):
        """Should not show one expert another's returns."""
        observation = observe(state, AgentRole.TRANSPORT_EXPERT)
        assert observation.private_tool_returns == ()
        assert "secret-00001" not in observation.serialize()

    def test_compiler_reads_notebook(self, state):
        """Should give the summarizer and compiler the whole notebook."""
        for role in (AgentRole.PLAN_SUMMARIZER, AgentRole.PLAN_COMPILER):
            observation = observe(state, role)
            assert observation.notebook_view == state.notebook
            assert "scratch-00001" not in observation.serialize()


class TestVisibilityProperty:
    """Randomized episodes never leak notebook-only or scratch content."""

    EPISODES = 1000

    def _random_episode(self, rng: random.Random):
        state = new_state(goal())
        states = [state]
        counter = 0
        for _ in range(rng.randint(1, 12)):
            counter += 1
            action = rng.random()
            if action < 0.2:
                state = record_reflection(
                    state, f"scratch-{counter:05d}", rng.choice(EXPERT_ROLES)
                )
            else:
                expert = rng.choice(EXPERT_ROLES)
                for _ in range(rng.randint(0, 3)):
                    counter += 1
                    record = make_record(EXPERT_DOMAINS[expert], f"secret-{counter:05d}")
                    state = notebook_write(state, expert, call(), [record])
                    states.append(state)
                state = append_message(end_turn(state), expert, f"message {counter}")
                if rng.random() < 0.3:
                    state = append_message(state, AgentRole.PLAN_CRITIC, "looks fine")
            states.append(state)
        return states

    def test_no_leaks_across_random_episodes(self):
        """Should uphold every visibility rule after every step."""
        rng = random.Random(20240601)
        for _ in range(self.EPISODES):
            previous = None
            for state in self._random_episode(rng):
                for role in (AgentRole.ORCHESTRATOR, AgentRole.PLAN_CRITIC):
                    text = observe(state, role).serialize()
                    assert not SECRET.search(text)
                    assert not SCRATCH.search(text)

                for expert in EXPERT_ROLES:
                    text = observe(state, expert).serialize()
                    own = {
                        record_name
                        for pending in state.pending
                        if pending.actor is expert
                        for record_name in SECRET.findall(pending.model_dump_json())
                    }
                    assert set(SECRET.findall(text)) == own
                    assert not SCRATCH.search(text)

                for reader in (AgentRole.PLAN_SUMMARIZER, AgentRole.PLAN_COMPILER):
                    observation = observe(state, reader)
                    assert observation.notebook_view == state.notebook
                    assert not SCRATCH.search(observation.serialize())

                if previous is not None:
                    count = len(previous.conversation.messages)
                    assert state.conversation.messages[:count] == previous.conversation.messages
                    entries = len(previous.notebook.entries)
                    assert state.notebook.entries[:entries] == previous.notebook.entries
                previous = state
