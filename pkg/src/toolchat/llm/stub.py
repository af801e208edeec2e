"""Deterministic scripted chat client used for tests and CI benchmark runs."""

from __future__ import annotations

import json
import re
import threading
import time
from pathlib import Path
from typing import Any, Callable, Optional

from pydantic import BaseModel

from ..actions import ToolCall
from .messages import ChatMessage, ChatRequest, ChatResponse, MalformedResponse, Role


class ScriptMismatch(Exception):
    """A scripted reply's matcher rejected the incoming request.

    Always an error: scripts encode the exact expected conversation, so a
    mismatch means the strategy under test diverged.
    """


class ReplyMatcher(BaseModel):
    model_config = {"frozen": True}

    contains: list[str] = []
    module: str | None = None
    has_tools: bool | None = None
    model: str | None = None

    def accepts(self, request: ChatRequest, module: str) -> bool:
        if self.module is not None and self.module != module:
            return False
        if self.model is not None and self.model != request.model:
            return False
        if self.has_tools is not None and bool(request.tools) != self.has_tools:
            return False
        if self.contains:
            text = request.text_view()
            return all(fragment in text for fragment in self.contains)
        return True

    def describe(self) -> str:
        return self.model_dump_json(exclude_defaults=True)


class ScriptedToolCall(BaseModel):
    model_config = {"frozen": True}

    tool_name: str
    arguments: dict[str, Any] = {}
    call_id: str | None = None


class ScriptedReply(BaseModel):
    model_config = {"frozen": True}

    match: ReplyMatcher | None = None
    content: str | None = None
    tool_calls: list[ScriptedToolCall] = []
    prompt_tokens: int = 0
    completion_tokens: int = 0
    elapsed_ms: float = 0.0


class StubScript(BaseModel):
    """Ordered scripted replies.

    ``dispatch="ordered"`` (default): replies are consumed strictly in order
    and the head reply's matcher must accept the request. ``"matched"``: the
    first remaining reply whose matcher accepts is consumed — needed only for
    scenarios where concurrent modules race for the script.
    """

    model_config = {"frozen": True}

    dispatch: str = "ordered"
    replies: list[ScriptedReply] = []

    @classmethod
    def load(cls, path: str | Path) -> "StubScript":
        return cls.model_validate(json.loads(Path(path).read_text()))


def reply_to_response(reply: ScriptedReply, sequence: int) -> ChatResponse:
    calls = [
        ToolCall(
            call_id=sc.call_id or f"call_{sequence}_{i}",
            tool_name=sc.tool_name,
            arguments=sc.arguments,
        )
        for i, sc in enumerate(reply.tool_calls)
    ]
    message = ChatMessage(role=Role.ASSISTANT, content=reply.content, tool_calls=calls)
    return ChatResponse(
        message=message,
        prompt_tokens=reply.prompt_tokens,
        completion_tokens=reply.completion_tokens,
        elapsed_ms=reply.elapsed_ms,
    )


def chunk_text(text: str) -> list[str]:
    """Whitespace-preserving chunks, so streamed deltas re-join exactly."""
    return [piece for piece in re.split(r"(\s+)", text) if piece]


class ScriptedChatClient:
    """Replays a :class:`StubScript`; thread-safe, replies consumed once."""

    def __init__(self, script: StubScript):
        self.script = script
        self._remaining = list(script.replies)
        self._lock = threading.Lock()
        self._sequence = 0
        self.request_log: list[tuple[str, ChatRequest]] = []

    def complete(
        self,
        request: ChatRequest,
        module: str = "",
        on_delta: Optional[Callable[[str], None]] = None,
    ) -> ChatResponse:
        reply = self._take(request, module)
        if reply.elapsed_ms:
            time.sleep(reply.elapsed_ms / 1000.0)
        response = reply_to_response(reply, self._next_sequence())
        if request.guided_choice and response.content not in request.guided_choice:
            raise MalformedResponse(
                f"scripted reply {response.content!r} outside guided choice {request.guided_choice}"
            )
        if on_delta and response.message.content:
            for piece in chunk_text(response.message.content):
                on_delta(piece)
        return response

    def _next_sequence(self) -> int:
        with self._lock:
            self._sequence += 1
            return self._sequence

    def _take(self, request: ChatRequest, module: str) -> ScriptedReply:
        with self._lock:
            self.request_log.append((module, request))
            if not self._remaining:
                raise ScriptMismatch(f"script exhausted; unexpected call from module {module!r}")
            if self.script.dispatch == "matched":
                for i, reply in enumerate(self._remaining):
                    if reply.match is None or reply.match.accepts(request, module):
                        return self._remaining.pop(i)
                raise ScriptMismatch(f"no remaining reply matches call from module {module!r}")
            reply = self._remaining[0]
            if reply.match is not None and not reply.match.accepts(request, module):
                raise ScriptMismatch(
                    f"module {module!r} request does not satisfy matcher {reply.match.describe()}"
                )
            return self._remaining.pop(0)

    @property
    def exhausted(self) -> bool:
        with self._lock:
            return not self._remaining
