"""Single-module loop using the native tools field.

Several calls may come back in one turn; they run sequentially within the
iteration, each answered with its own tool message.
"""

from __future__ import annotations

from ..llm import ChatMessage, system, tool_result, user
from .common import StrategyContext, load_prompt, render_result
from .config import ASSISTANT
from .record import StrategyRunRecord


def run_simple_tools(ctx: StrategyContext, history: list[ChatMessage], user_message: str) -> StrategyRunRecord:
    messages: list[ChatMessage] = [
        system(load_prompt("simple_tools", "assistant")),
        *history,
        user(user_message),
    ]

    final_answer: str | None = None
    for iteration in range(1, ctx.config.iteration_cap + 1):
        ctx.emit_iteration(iteration, ASSISTANT)
        response = ctx.complete(ASSISTANT, messages, tools=ctx.tools)
        calls = response.message.tool_calls
        if not calls:
            final_answer = response.content
            break
        messages.append(response.message)
        for call in calls:  # sequential by design; this method is not parallel
            result = ctx.execute_call(call, ASSISTANT)
            messages.append(tool_result(call.call_id, render_result(result)))

    if final_answer is None:
        # cap reached: force a final completion without tools on offer
        response = ctx.complete(ASSISTANT, messages)
        final_answer = response.content
    return ctx.recorder.finish(final_answer)
