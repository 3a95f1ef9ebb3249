"""Parse the canonical plan block out of free text, and write it back."""

import re
from dataclasses import dataclass, field

from src.plans.models import FIELD_KEYS, ItineraryDay, Plan, PlanParseError

_DAY_HEADER = re.compile(r"^day\s*(\d{1,4})\s*[:.)\-]?\s*(.*)$", re.IGNORECASE)
_KEY_LINE = re.compile(
    r"^(" + "|".join(re.escape(key) for key in FIELD_KEYS) + r")s?\s*:\s*(.*)$",
    re.IGNORECASE,
)
_KEY_LOOKUP = {key.lower(): attr for key, attr in FIELD_KEYS.items()}
_LEADING_MARKS = " \t#>*-•"


@dataclass
class _Block:
    days: list[dict[str, str]] = field(default_factory=list)

    @property
    def well_formed(self) -> bool:
        return bool(self.days) and all(self.days)

    def to_plan(self, raw_text: str) -> Plan:
        return Plan(
            days=tuple(ItineraryDay(day=i, **values) for i, values in enumerate(self.days, 1)),
            raw_text=raw_text,
        )


def _normalize_line(line: str) -> str:
    return line.replace("**", "").strip().lstrip(_LEADING_MARKS).strip()


def _apply_field(line: str, values: dict[str, str]) -> bool:
    match = _KEY_LINE.match(line)
    if match is None:
        return False
    values[_KEY_LOOKUP[match.group(1).lower()]] = match.group(2)
    return True


def _scan_blocks(text: str) -> list[_Block]:
    blocks: list[_Block] = []
    current: _Block | None = None

    for raw_line in text.splitlines():
        line = _normalize_line(raw_line)
        if not line:
            continue

        header = _DAY_HEADER.match(line)
        if header is not None:
            number = int(header.group(1))
            if number == 1:
                current = _Block()
                blocks.append(current)
            elif current is None or number != len(current.days) + 1:
                # out-of-sequence header ends the block
                current = None
                continue
            current.days.append({})
            remainder = header.group(2)
            if remainder:
                _apply_field(remainder, current.days[-1])
            continue

        if current is not None and current.days:
            _apply_field(line, current.days[-1])

    return blocks


def parse_plan(text: str) -> Plan:
    """Extract the last well-formed plan block from a text.

    A block starts at a "Day 1" header and continues through contiguous
    "Day N" headers. Each day needs at least one recognised key line;
    keys that are absent become "-".

    Raises:
        PlanParseError: If no well-formed block exists
    """
    for block in reversed(_scan_blocks(text)):
        if block.well_formed:
            return block.to_plan(text)
    raise PlanParseError("no plan block found")


def try_parse_plan(text: str | None) -> Plan | None:
    """parse_plan that returns None instead of raising."""
    if not text:
        return None
    try:
        return parse_plan(text)
    except PlanParseError:
        return None


def serialize_plan(plan: Plan) -> str:
    """Canonical text of a plan, every key written out."""
    sections = []
    for day in plan.days:
        lines = [f"Day {day.day}:"]
        lines.extend(f"{key}: {getattr(day, attr)}" for key, attr in FIELD_KEYS.items())
        sections.append("\n".join(lines))
    return "\n\n".join(sections) + "\n"
