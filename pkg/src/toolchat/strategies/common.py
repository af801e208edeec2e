"""Shared machinery for the prompting methods: context, tool execution,
prompt assets."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

from ..actions import (
    ToolCall,
    ToolDescriptor,
    ValidationFailure,
    split_tool_name,
    tools_for_agents,
    validate_and_cast,
)
from ..events import EventKind, StreamEvent, null_sink
from ..llm import ChatMessage, ChatRequest, ChatResponse, LlmGateway
from ..platform import AgentInfo, InvocationResult, InvocationStatus, PlatformClient
from .config import MethodConfig
from .record import RunRecorder

PROMPTS_DIR = Path(__file__).parent / "prompts"

CONTINUE_MARKER = "CONTINUE"
FINISHED_MARKER = "FINISHED"
REITERATE_MARKER = "REITERATE"


def load_prompt(method: str, name: str) -> str:
    return (PROMPTS_DIR / method / f"{name}.txt").read_text()


def render_result(result: InvocationResult) -> str:
    """Tool output as it is shown to the model."""
    if result.ok:
        return json.dumps(result.payload)
    return f"Error ({result.status.value}): {result.payload}"


def ends_with_marker(content: str, marker: str) -> bool:
    lines = [line.strip() for line in content.strip().splitlines() if line.strip()]
    return bool(lines) and lines[-1] == marker


def strip_marker(content: str, marker: str) -> str:
    lines = content.strip().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if lines and lines[-1].strip() == marker:
        lines.pop()
    return "\n".join(lines).strip()


@dataclass
class StrategyContext:
    """Everything one strategy run needs, plus the run's recorder."""

    gateway: LlmGateway
    platform: PlatformClient
    config: MethodConfig
    recorder: RunRecorder
    emit: Callable[[StreamEvent], None] = null_sink
    agents: list[AgentInfo] = field(default_factory=list)
    tools: list[ToolDescriptor] = field(default_factory=list)
    _tool_schemas: dict[str, ToolDescriptor] = field(default_factory=dict)

    @classmethod
    def start(
        cls,
        gateway: LlmGateway,
        platform: PlatformClient,
        config: MethodConfig,
        recorder: RunRecorder,
        emit: Callable[[StreamEvent], None] = null_sink,
    ) -> "StrategyContext":
        agents = platform.get_agents()
        tools = tools_for_agents([a.agent for a in agents], limit=config.tool_limit)
        return cls(
            gateway=gateway,
            platform=platform,
            config=config,
            recorder=recorder,
            emit=emit,
            agents=agents,
            tools=tools,
            _tool_schemas={t.tool_name: t for t in tools},
        )

    # -- LLM calls -----------------------------------------------------------

    def complete(
        self,
        module: str,
        messages: Sequence[ChatMessage],
        tools: Optional[list[ToolDescriptor]] = None,
        guided_choice: Optional[list[str]] = None,
        on_delta: Optional[Callable[[str], None]] = None,
    ) -> ChatResponse:
        profile_name = self.config.profile_for(module)
        profile = self.gateway.profile_for(profile_name)
        self.emit(StreamEvent(kind=EventKind.MODULE_START, module=module))
        request = ChatRequest(
            model=profile.model,
            messages=list(messages),
            tools=tools,
            guided_choice=guided_choice,
        )
        return self.gateway.complete(
            profile_name, request, module=module, recorder=self.recorder, on_delta=on_delta
        )

    # -- tool execution --------------------------------------------------------

    def execute_call(self, call: ToolCall, module: str | None = None) -> InvocationResult:
        """Validate, invoke, record, and emit one tool call.

        Validation failures never reach the platform; they come back as
        action errors for the model to correct in its next turn.
        """
        def result_payload(result: InvocationResult) -> dict:
            # results carry their call id so clients can pair parallel calls
            return {"call_id": call.call_id, **result.model_dump(mode="json")}

        checked = self._validate(call)
        if isinstance(checked, InvocationResult):
            self.emit(StreamEvent(kind=EventKind.TOOL_CALL, module=module, payload=call.model_dump(mode="json")))
            self.recorder.record_tool(call, checked)
            self.emit(StreamEvent(kind=EventKind.TOOL_RESULT, module=module, payload=result_payload(checked)))
            return checked
        cast_call, agent_id, action_name = checked
        self.emit(StreamEvent(kind=EventKind.TOOL_CALL, module=module, payload=cast_call.model_dump(mode="json")))
        result = self.platform.invoke(agent_id, action_name, cast_call.arguments)
        self.recorder.record_tool(cast_call, result)
        self.emit(StreamEvent(kind=EventKind.TOOL_RESULT, module=module, payload=result_payload(result)))
        return result

    def execute_calls_parallel(
        self, calls: Sequence[ToolCall], module: str | None = None
    ) -> list[InvocationResult]:
        """Run independent calls concurrently, preserving input order."""
        if not calls:
            return []
        if len(calls) == 1:
            return [self.execute_call(calls[0], module)]
        with ThreadPoolExecutor(max_workers=len(calls)) as pool:
            futures = [pool.submit(self.execute_call, call, module) for call in calls]
            return [future.result() for future in futures]

    def _validate(self, call: ToolCall):
        descriptor = self._tool_schemas.get(call.tool_name)
        if descriptor is None:
            return InvocationResult(
                status=InvocationStatus.ACTION_ERROR,
                payload=f"unknown tool {call.tool_name!r}",
            )
        try:
            cast_arguments = validate_and_cast(call.arguments, descriptor.parameter_schema)
        except ValidationFailure as failure:
            return InvocationResult(status=InvocationStatus.ACTION_ERROR, payload=failure.message)
        agent_id, action_name = split_tool_name(call.tool_name)
        cast_call = ToolCall(call_id=call.call_id, tool_name=call.tool_name, arguments=cast_arguments)
        return cast_call, agent_id, action_name

    # -- misc -------------------------------------------------------------------

    def tools_for_agent(self, agent_id: str) -> list[ToolDescriptor]:
        prefix = f"{agent_id}--"
        return [t for t in self.tools if t.tool_name.startswith(prefix)]

    def emit_iteration(self, number: int, module: str | None = None) -> None:
        self.recorder.set_iterations(number)
        self.emit(StreamEvent(kind=EventKind.ITERATION, module=module, payload=number))


def tools_as_json(tools: Sequence[ToolDescriptor]) -> str:
    """The tool list as the JSON block injected into system prompts."""
    return json.dumps(
        [
            {
                "name": t.tool_name,
                "description": t.description,
                "parameters": t.parameter_schema.to_json_schema(),
            }
            for t in tools
        ],
        indent=2,
    )
