"""Task-file loading: one benchmark query per record."""

import ast
import json
import logging
from pathlib import Path
from typing import Any, Self

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.world_state import Goal, GoalMetadata

logger = logging.getLogger(__name__)

# Upstream local-constraint keys -> GoalMetadata fields
LOCAL_CONSTRAINT_KEYS: dict[str, str] = {
    "house rule": "house_rule",
    "cuisine": "cuisines",
    "room type": "room_type",
    "transportation": "transportation",
}

# Fields the upstream release stores as Python-literal strings
_LITERAL_FIELDS = ("date", "local_constraint")


class TaskLoadError(ValueError):
    """Raised when a task file cannot be loaded."""


class TaskSet(BaseModel):
    """Named, ordered collection of goals with unique task ids."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    tasks: tuple[Goal, ...] = ()

    @model_validator(mode="after")
    def validate_unique_ids(self) -> Self:
        seen: set[str] = set()
        for goal in self.tasks:
            if goal.task_id in seen:
                raise ValueError(f"duplicate task_id {goal.task_id!r}")
            seen.add(goal.task_id)
        return self

    def __len__(self) -> int:
        return len(self.tasks)

    def by_id(self) -> dict[str, Goal]:
        return {goal.task_id: goal for goal in self.tasks}


def _literal(value: Any) -> Any:
    if isinstance(value, str) and value.strip()[:1] in ("[", "{", "("):
        return ast.literal_eval(value)
    return value


def _none_if_blank(value: Any) -> Any:
    if value is None or (isinstance(value, str) and value.strip() in ("", "None", "null")):
        return None
    return value


def goal_from_record(record: dict[str, Any], position: int) -> Goal:
    """Build a Goal from one upstream-shaped task record.

    Recognised keys: task_id (or idx), query, org, dest, days,
    visiting_city_number, date, people_number, budget, local_constraint.
    A record without an id is named after its position (task0001, ...).
    """
    record = {
        key: _literal(value) if key in _LITERAL_FIELDS else value
        for key, value in record.items()
    }
    task_id = record.get("task_id") or record.get("idx")
    if task_id in (None, ""):
        task_id = f"task{position:04d}"

    local = record.get("local_constraint") or {}
    if not isinstance(local, dict):
        raise ValueError("local_constraint must be a mapping")
    constraints = {
        field: _none_if_blank(local.get(key)) for key, field in LOCAL_CONSTRAINT_KEYS.items()
    }
    cuisines = constraints.pop("cuisines")
    if isinstance(cuisines, str):
        cuisines = [cuisines]

    dates = record["date"]
    if isinstance(dates, str):
        dates = [dates]

    metadata = GoalMetadata(
        origin=record["org"],
        destination=record["dest"],
        visiting_city_number=record.get("visiting_city_number") or 1,
        duration_days=record["days"],
        dates=tuple(dates),
        people_number=record.get("people_number") or 1,
        budget=_none_if_blank(record.get("budget")),
        cuisines=tuple(cuisines or ()),
        **constraints,
    )
    return Goal(task_id=str(task_id), query_text=record["query"], metadata=metadata)


def _read_records(path: Path) -> list[dict[str, Any]]:
    if path.suffix.lower() == ".csv":
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
        records: list[dict[str, Any]] = frame.to_dict(orient="records")
        return records

    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        data = json.loads(text)
        if not isinstance(data, list):
            raise TaskLoadError(f"{path.name}: expected a list of task records")
        return data
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def load_tasks(path: Path, name: str | None = None) -> TaskSet:
    """Load a task file (.jsonl, .json list or upstream .csv).

    Raises:
        TaskLoadError: If the file is missing, a record is malformed, or ids repeat
    """
    if not path.is_file():
        raise TaskLoadError(f"task file not found: {path}")
    try:
        records = _read_records(path)
    except (
        json.JSONDecodeError,
        UnicodeDecodeError,
        pd.errors.ParserError,
        pd.errors.EmptyDataError,
    ) as e:
        raise TaskLoadError(f"{path.name}: unreadable task file ({e})") from e

    goals = []
    for position, record in enumerate(records, start=1):
        try:
            goals.append(goal_from_record(record, position))
        except KeyError as e:
            raise TaskLoadError(f"{path.name} record {position}: missing field {e}") from e
        except (ValueError, SyntaxError, ValidationError) as e:
            raise TaskLoadError(f"{path.name} record {position}: {e}") from e

    try:
        tasks = TaskSet(name=name or path.stem, tasks=tuple(goals))
    except ValidationError as e:
        raise TaskLoadError(f"{path.name}: {e.errors()[0]['msg']}") from e

    logger.info(
        f"Loaded {len(tasks)} tasks from {path.name}",
        extra={"task_file": str(path), "count": len(tasks)},
    )
    return tasks
