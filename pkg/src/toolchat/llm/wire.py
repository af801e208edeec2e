"""Encoding/decoding of the OpenAI chat-completions JSON dialect.

Kept bit-compatible with the common hosted endpoints so real backends work
without adaptation; the scripted stub shares these models.
"""

from __future__ import annotations

import json
from typing import Any

from ..actions import ToolCall
from .messages import ChatMessage, ChatRequest, MalformedResponse, Role


def encode_message(message: ChatMessage) -> dict[str, Any]:
    doc: dict[str, Any] = {"role": message.role.value, "content": message.content}
    if message.tool_calls:
        doc["tool_calls"] = [
            {
                "id": call.call_id,
                "type": "function",
                "function": {
                    "name": call.tool_name,
                    "arguments": json.dumps(call.arguments),
                },
            }
            for call in message.tool_calls
        ]
    if message.tool_call_id:
        doc["tool_call_id"] = message.tool_call_id
    return doc


def encode_request(request: ChatRequest, stream: bool = False) -> dict[str, Any]:
    body: dict[str, Any] = {
        "model": request.model,
        "messages": [encode_message(m) for m in request.messages],
    }
    if request.tools is not None:
        body["tools"] = [t.to_openai() for t in request.tools]
    for knob in ("temperature", "top_p", "max_tokens"):
        value = getattr(request, knob)
        if value is not None:
            body[knob] = value
    if stream:
        body["stream"] = True
        body["stream_options"] = {"include_usage": True}
    return body


def decode_tool_call(doc: dict[str, Any], index: int) -> ToolCall:
    fn = doc.get("function") or {}
    raw_args = fn.get("arguments") or "{}"
    try:
        arguments = json.loads(raw_args) if isinstance(raw_args, str) else raw_args
    except json.JSONDecodeError as err:
        raise MalformedResponse(f"tool call arguments are not JSON: {raw_args!r}") from err
    if not isinstance(arguments, dict):
        raise MalformedResponse(f"tool call arguments must be an object: {raw_args!r}")
    name = fn.get("name")
    if not name:
        raise MalformedResponse("tool call without a function name")
    return ToolCall(
        call_id=doc.get("id") or f"call_{index}",
        tool_name=name,
        arguments=arguments,
    )


def decode_completion(doc: dict[str, Any]) -> tuple[ChatMessage, int, int]:
    """Parse a non-streaming completion body into (message, prompt, completion) tokens."""
    try:
        message_doc = doc["choices"][0]["message"]
    except (KeyError, IndexError, TypeError) as err:
        raise MalformedResponse(f"unexpected completion shape: {err}") from err
    calls = [
        decode_tool_call(c, i) for i, c in enumerate(message_doc.get("tool_calls") or [])
    ]
    message = ChatMessage(
        role=Role(message_doc.get("role", "assistant")),
        content=message_doc.get("content"),
        tool_calls=calls,
    )
    usage = doc.get("usage") or {}
    return message, int(usage.get("prompt_tokens", 0)), int(usage.get("completion_tokens", 0))


class StreamAccumulator:
    """Folds streaming delta chunks back into one complete message."""

    def __init__(self) -> None:
        self.content_parts: list[str] = []
        self.calls: dict[int, dict[str, Any]] = {}
        self.prompt_tokens = 0
        self.completion_tokens = 0

    def feed(self, chunk: dict[str, Any]) -> str | None:
        """Consume one chunk; returns new content text if any."""
        usage = chunk.get("usage")
        if usage:
            self.prompt_tokens = int(usage.get("prompt_tokens", 0))
            self.completion_tokens = int(usage.get("completion_tokens", 0))
        choices = chunk.get("choices") or []
        if not choices:
            return None
        delta = choices[0].get("delta") or {}
        for call_doc in delta.get("tool_calls") or []:
            slot = self.calls.setdefault(
                int(call_doc.get("index", 0)), {"id": None, "name": "", "arguments": ""}
            )
            if call_doc.get("id"):
                slot["id"] = call_doc["id"]
            fn = call_doc.get("function") or {}
            if fn.get("name"):
                slot["name"] += fn["name"]
            if fn.get("arguments"):
                slot["arguments"] += fn["arguments"]
        text = delta.get("content")
        if text:
            self.content_parts.append(text)
            return text
        return None

    def result(self) -> tuple[ChatMessage, int, int]:
        calls = [
            decode_tool_call(
                {"id": slot["id"], "function": {"name": slot["name"], "arguments": slot["arguments"] or "{}"}},
                index,
            )
            for index, slot in sorted(self.calls.items())
        ]
        content = "".join(self.content_parts) if self.content_parts else None
        message = ChatMessage(role=Role.ASSISTANT, content=content, tool_calls=calls)
        return message, self.prompt_tokens, self.completion_tokens
