"""Chat-completion wire objects and endpoint profiles."""

from __future__ import annotations

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, model_validator

from ..actions import ToolCall, ToolDescriptor


class Role(str, Enum):
    SYSTEM = "system"
    USER = "user"
    ASSISTANT = "assistant"
    TOOL = "tool"


class ChatMessage(BaseModel):
    model_config = {"frozen": True}

    role: Role
    content: str | None = None
    tool_calls: list[ToolCall] = []
    tool_call_id: str | None = None

    @model_validator(mode="after")
    def _role_constraints(self) -> "ChatMessage":
        if self.role == Role.TOOL and not self.tool_call_id:
            raise ValueError("tool message needs a tool_call_id")
        if self.tool_calls and self.role != Role.ASSISTANT:
            raise ValueError("only assistant messages may carry tool calls")
        return self


def system(content: str) -> ChatMessage:
    return ChatMessage(role=Role.SYSTEM, content=content)


def user(content: str) -> ChatMessage:
    return ChatMessage(role=Role.USER, content=content)


def assistant(content: str | None, tool_calls: list[ToolCall] | None = None) -> ChatMessage:
    return ChatMessage(role=Role.ASSISTANT, content=content, tool_calls=tool_calls or [])


def tool_result(call_id: str, content: str) -> ChatMessage:
    return ChatMessage(role=Role.TOOL, content=content, tool_call_id=call_id)


class ChatRequest(BaseModel):
    model_config = {"frozen": True}

    model: str
    messages: list[ChatMessage]
    tools: Optional[list[ToolDescriptor]] = None
    guided_choice: Optional[list[str]] = None
    temperature: float | None = None
    top_p: float | None = None
    max_tokens: int | None = None

    def text_view(self) -> str:
        """Flat rendering of all message contents; used by stub matchers."""
        parts = []
        for m in self.messages:
            if m.content:
                parts.append(f"{m.role.value}: {m.content}")
            for call in m.tool_calls:
                parts.append(f"{m.role.value}: <call {call.tool_name}>")
        return "\n".join(parts)


class ChatResponse(BaseModel):
    model_config = {"frozen": True}

    message: ChatMessage
    prompt_tokens: int = 0
    completion_tokens: int = 0
    elapsed_ms: float = 0.0

    @model_validator(mode="after")
    def _non_negative(self) -> "ChatResponse":
        if self.prompt_tokens < 0 or self.completion_tokens < 0:
            raise ValueError("token counts must be >= 0")
        return self

    @property
    def content(self) -> str:
        return self.message.content or ""


class EndpointKind(str, Enum):
    HTTP = "http"
    SCRIPTED = "scripted"


class EndpointProfile(BaseModel):
    """Where a module's completions go: a real endpoint or a scripted stub."""

    model_config = {"frozen": True}

    name: str
    kind: EndpointKind = EndpointKind.HTTP
    base_url: str = ""
    model: str = "stub-model"
    api_key_env: str | None = None
    # endpoints that understand a guided_choice field natively (e.g. vLLM)
    native_guided_choice: bool = False
    script_path: str | None = None

    @classmethod
    def from_config(cls, name: str, doc: dict[str, Any]) -> "EndpointProfile":
        return cls(name=name, **doc)


class TransportError(Exception):
    """Network-level failure; safe to retry."""


class EndpointError(Exception):
    """Endpoint answered with a non-success status."""

    def __init__(self, status_code: int, body: str):
        super().__init__(f"endpoint returned {status_code}: {body[:200]}")
        self.status_code = status_code
        self.body = body


class MalformedResponse(Exception):
    """Endpoint answer did not satisfy the request contract."""
