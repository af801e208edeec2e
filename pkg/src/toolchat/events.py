"""Typed intermediate-step events streamed to clients during a request."""

from __future__ import annotations

from enum import Enum
from typing import Any, Callable

from pydantic import BaseModel


class EventKind(str, Enum):
    MODULE_START = "module_start"
    TOKEN_DELTA = "token_delta"
    TOOL_CALL = "tool_call"
    TOOL_RESULT = "tool_result"
    ITERATION = "iteration"
    FINAL = "final"
    ERROR = "error"


class StreamEvent(BaseModel):
    model_config = {"frozen": True}

    kind: EventKind
    module: str | None = None
    payload: Any = None


EventSink = Callable[[StreamEvent], None]


def null_sink(event: StreamEvent) -> None:
    return None
