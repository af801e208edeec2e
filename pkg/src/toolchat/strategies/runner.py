"""Entry point dispatching a user message to the configured method."""

from __future__ import annotations

from typing import Callable

from ..events import StreamEvent, null_sink
from ..llm import ChatMessage, LlmGateway
from ..platform import PlatformClient
from .common import StrategyContext
from .config import Method, MethodConfig
from .orchestration import run_orchestration
from .record import RunRecorder, StrategyRunRecord
from .simple import run_simple
from .simple_tools import run_simple_tools
from .tool_chain import run_tool_chain

_RUNNERS = {
    Method.SIMPLE: run_simple,
    Method.SIMPLE_TOOLS: run_simple_tools,
    Method.TOOL_CHAIN: run_tool_chain,
    Method.ORCHESTRATION: run_orchestration,
}


def run_method(
    gateway: LlmGateway,
    platform: PlatformClient,
    config: MethodConfig,
    user_message: str,
    history: list[ChatMessage] | None = None,
    emit: Callable[[StreamEvent], None] = null_sink,
) -> StrategyRunRecord:
    config.validate_profiles()
    recorder = RunRecorder(method=config.method.value, user_message=user_message)
    ctx = StrategyContext.start(gateway, platform, config, recorder, emit)
    return _RUNNERS[config.method](ctx, list(history or []), user_message)
