"""Extraction of embedded JSON tool calls (and JSON documents) from chat text.

The embedded call format is ``{"name": "<tool>", "parameters": {...}}`` as
the outermost object or inside a fenced code block. Models that chatter
around the object are tolerated: the first well-formed call found anywhere
in the text wins. No extractable call means the text is a final answer.
"""

from __future__ import annotations

import json
from typing import Any, Iterator

from ..actions import ToolCall

_DECODER = json.JSONDecoder()


def iter_json_values(text: str, starters: str = "{") -> Iterator[Any]:
    """Yield JSON values parseable at any ``starters`` character, in order."""
    for i, ch in enumerate(text):
        if ch not in starters:
            continue
        try:
            value, _ = _DECODER.raw_decode(text, i)
        except json.JSONDecodeError:
            continue
        yield value


def _as_tool_call(doc: Any) -> ToolCall | None:
    if not isinstance(doc, dict):
        return None
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        return None
    parameters = doc.get("parameters", {})
    if not isinstance(parameters, dict):
        return None
    return ToolCall(call_id="embedded", tool_name=name, arguments=parameters)


def parse_embedded_tool_call(content: str) -> ToolCall | None:
    """First well-formed embedded tool call in ``content``, or None."""
    if not content:
        return None
    for candidate in iter_json_values(content):
        call = _as_tool_call(candidate)
        if call is not None:
            return call
    return None


def extract_json_document(content: str) -> Any | None:
    """First parseable JSON object or array in ``content``, or None.

    Used for modules instructed to answer with a structured document but
    prone to wrapping it in prose or code fences.
    """
    if not content:
        return None
    for value in iter_json_values(content, starters="{["):
        return value
    return None
