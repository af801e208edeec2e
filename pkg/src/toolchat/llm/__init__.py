"""Chat-completion client layer: wire dialect, HTTP client, scripted stub."""

from .gateway import ChatClient, LlmGateway, UnknownProfile
from .http_client import HttpChatClient
from .messages import (
    ChatMessage,
    ChatRequest,
    ChatResponse,
    EndpointError,
    EndpointKind,
    EndpointProfile,
    MalformedResponse,
    Role,
    TransportError,
    assistant,
    system,
    tool_result,
    user,
)
from .parsing import extract_json_document, parse_embedded_tool_call
from .stub import (
    ReplyMatcher,
    ScriptMismatch,
    ScriptedChatClient,
    ScriptedReply,
    ScriptedToolCall,
    StubScript,
    chunk_text,
)

__all__ = [
    "ChatClient",
    "ChatMessage",
    "ChatRequest",
    "ChatResponse",
    "EndpointError",
    "EndpointKind",
    "EndpointProfile",
    "HttpChatClient",
    "LlmGateway",
    "MalformedResponse",
    "ReplyMatcher",
    "Role",
    "ScriptMismatch",
    "ScriptedChatClient",
    "ScriptedReply",
    "ScriptedToolCall",
    "StubScript",
    "TransportError",
    "UnknownProfile",
    "assistant",
    "chunk_text",
    "extract_json_document",
    "parse_embedded_tool_call",
    "system",
    "tool_result",
    "user",
]
