"""Per-request run records: tool log, per-module accounting, timings."""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from pydantic import BaseModel

from ..actions import ToolCall
from ..llm import ChatRequest, ChatResponse
from ..platform import InvocationResult


class ModuleStats(BaseModel):
    calls: int = 0
    prompt_tokens: int = 0
    completion_tokens: int = 0
    elapsed_ms: float = 0.0


class ToolLogEntry(BaseModel):
    model_config = {"frozen": True}

    call: ToolCall
    result: InvocationResult


class StrategyRunRecord(BaseModel):
    """Full trace of one user request, the shape the benchmark consumes."""

    model_config = {"frozen": True}

    request_id: str
    method: str
    user_message: str
    final_answer: str
    iterations: int
    tool_log: list[ToolLogEntry]
    per_module: dict[str, ModuleStats]
    total_elapsed_ms: float

    @property
    def llm_calls(self) -> int:
        return sum(stats.calls for stats in self.per_module.values())

    @property
    def total_prompt_tokens(self) -> int:
        return sum(stats.prompt_tokens for stats in self.per_module.values())

    @property
    def total_completion_tokens(self) -> int:
        return sum(stats.completion_tokens for stats in self.per_module.values())

    @property
    def total_tokens(self) -> int:
        return self.total_prompt_tokens + self.total_completion_tokens


@dataclass
class LlmCallRecord:
    module: str
    request: ChatRequest
    response: ChatResponse


@dataclass
class RunRecorder:
    """Mutable collector for one strategy run; appends are thread-safe."""

    method: str
    user_message: str
    request_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    llm_call_log: list[LlmCallRecord] = field(default_factory=list)
    tool_log: list[ToolLogEntry] = field(default_factory=list)
    iterations: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _started: float = field(default_factory=time.perf_counter)

    def record_llm_call(self, module: str, request: ChatRequest, response: ChatResponse) -> None:
        with self._lock:
            self.llm_call_log.append(LlmCallRecord(module, request, response))

    def record_tool(self, call: ToolCall, result: InvocationResult) -> None:
        with self._lock:
            self.tool_log.append(ToolLogEntry(call=call, result=result))

    def set_iterations(self, iterations: int) -> None:
        with self._lock:
            self.iterations = iterations

    def calls_for(self, module: str) -> list[LlmCallRecord]:
        with self._lock:
            return [c for c in self.llm_call_log if c.module == module]

    def finish(self, final_answer: str) -> StrategyRunRecord:
        total_elapsed_ms = (time.perf_counter() - self._started) * 1000.0
        per_module: dict[str, ModuleStats] = {}
        with self._lock:
            for entry in self.llm_call_log:
                stats = per_module.setdefault(entry.module, ModuleStats())
                stats.calls += 1
                stats.prompt_tokens += entry.response.prompt_tokens
                stats.completion_tokens += entry.response.completion_tokens
                stats.elapsed_ms += entry.response.elapsed_ms
            return StrategyRunRecord(
                request_id=self.request_id,
                method=self.method,
                user_message=self.user_message,
                final_answer=final_answer,
                iterations=self.iterations,
                tool_log=list(self.tool_log),
                per_module=per_module,
                total_elapsed_ms=total_elapsed_ms,
            )
