"""Two-module chain: a Generator formulating tool calls and an Evaluator
summarizing results and deciding whether the request is fulfilled.

The Evaluator deliberately runs without a system prompt: its whole task,
including the calls and results, arrives as a single user message — that
framing measurably beats a system-prompt formulation. Calls within one
round are independent and run in parallel.
"""

from __future__ import annotations

import json

from ..actions import ToolCall
from ..llm import ChatMessage, system, tool_result, user
from ..platform import InvocationResult
from .common import (
    CONTINUE_MARKER,
    StrategyContext,
    ends_with_marker,
    load_prompt,
    render_result,
    strip_marker,
)
from .config import EVALUATOR, GENERATOR
from .record import StrategyRunRecord

INCOMPLETE_NOTICE = "\n\n[incomplete: iteration limit reached before the request was fulfilled]"


def describe_calls(entries: list[tuple[ToolCall, InvocationResult]]) -> str:
    lines = []
    for call, result in entries:
        lines.append(f"- {call.tool_name}({json.dumps(call.arguments)}) -> {render_result(result)}")
    return "\n".join(lines) if lines else "(none)"


def run_tool_chain(ctx: StrategyContext, history: list[ChatMessage], user_message: str) -> StrategyRunRecord:
    generator_messages: list[ChatMessage] = [
        system(load_prompt("tool_chain", "generator")),
        *history,
        user(user_message),
    ]
    evaluator_template = load_prompt("tool_chain", "evaluator_user")
    all_calls: list[tuple[ToolCall, InvocationResult]] = []

    final_answer: str | None = None
    last_summary = ""
    for round_number in range(1, ctx.config.iteration_cap + 1):
        ctx.emit_iteration(round_number, GENERATOR)
        generated = ctx.complete(GENERATOR, generator_messages, tools=ctx.tools)
        calls = generated.message.tool_calls
        if not calls:
            # nothing to invoke: the Generator's text goes straight to the user
            final_answer = generated.content
            break

        results = ctx.execute_calls_parallel(calls, GENERATOR)
        round_entries = list(zip(calls, results))
        all_calls.extend(round_entries)

        evaluation_message = evaluator_template.replace("{task}", user_message).replace(
            "{calls}", describe_calls(all_calls)
        )
        # no system prompt here, by design
        evaluation = ctx.complete(EVALUATOR, [user(evaluation_message)])
        if not ends_with_marker(evaluation.content, CONTINUE_MARKER):
            final_answer = evaluation.content
            break
        last_summary = strip_marker(evaluation.content, CONTINUE_MARKER)
        generator_messages.append(generated.message)
        for call in calls:
            result = next(r for c, r in round_entries if c.call_id == call.call_id)
            generator_messages.append(tool_result(call.call_id, render_result(result)))
        generator_messages.append(user(f"Evaluation so far: {last_summary}"))

    if final_answer is None:
        final_answer = last_summary + INCOMPLETE_NOTICE
    return ctx.recorder.finish(final_answer)
