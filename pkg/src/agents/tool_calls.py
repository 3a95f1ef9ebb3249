"""Extraction of `name(arg, ...)` tool calls from model replies."""

import logging
import re
from collections.abc import Iterator, Set

from src.sandbox import TOOL_SPECS
from src.world_state import ToolCall

logger = logging.getLogger(__name__)

_CALL_START = re.compile(r"\b([A-Za-z_][A-Za-z0-9_]*)\s*\(")
_QUOTES = ("'", '"', "`")


def _looks_like_tool(name: str) -> bool:
    return name in TOOL_SPECS or name.endswith("_search")


def _closing_paren(text: str, open_index: int) -> int | None:
    depth = 0
    for index in range(open_index, len(text)):
        char = text[index]
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth == 0:
                return index
    return None


def _split_arguments(inner: str) -> tuple[str, ...]:
    if not inner.strip():
        return ()
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for char in inner:
        if char in "([{":
            depth += 1
        elif char in ")]}":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return tuple(_strip_argument(part) for part in parts)


def _strip_argument(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == value[-1] and value[0] in _QUOTES:
        value = value[1:-1].strip()
    return value


def _iter_calls(reply: str) -> Iterator[ToolCall]:
    position = 0
    while True:
        match = _CALL_START.search(reply, position)
        if match is None:
            return
        if not _looks_like_tool(match.group(1)):
            position = match.end()
            continue
        open_index = match.end() - 1
        close_index = _closing_paren(reply, open_index)
        if close_index is None:
            position = match.end()
            continue
        yield ToolCall(
            name=match.group(1),
            arguments=_split_arguments(reply[open_index + 1 : close_index]),
            span=(match.start(), close_index + 1),
        )
        position = close_index + 1


def extract_tool_calls(reply: str, permitted: Set[str]) -> list[ToolCall]:
    """Tool calls in `reply` whose names are in `permitted`, in order of appearance.

    Arguments are split on top-level commas and trimmed. Calls to tools
    outside `permitted` are ignored and logged.
    """
    calls: list[ToolCall] = []
    for call in _iter_calls(reply):
        if call.name in permitted:
            calls.append(call)
        else:
            logger.info(
                f"Ignoring call to non-permitted tool {call.name}",
                extra={"tool": call.name, "permitted": sorted(permitted)},
            )
    return calls


def find_unpermitted_calls(reply: str, permitted: Set[str]) -> list[ToolCall]:
    """Tool-shaped calls in `reply` that the caller may not make."""
    return [call for call in _iter_calls(reply) if call.name not in permitted]
