"""Single-module loop emitting tool calls as JSON in plain chat content.

Works with any model because it relies only on regular input and output;
the price is one call per iteration and fragile termination: a reply
without an extractable call is, by definition, the final answer.
"""

from __future__ import annotations

from ..llm import ChatMessage, assistant, parse_embedded_tool_call, system, user
from .common import StrategyContext, load_prompt, render_result, tools_as_json
from .config import ASSISTANT
from .record import StrategyRunRecord

TRUNCATION_NOTICE = "\n\n[stopped after reaching the iteration safety ceiling]"


def run_simple(ctx: StrategyContext, history: list[ChatMessage], user_message: str) -> StrategyRunRecord:
    prompt = load_prompt("simple", "assistant").replace("{tools}", tools_as_json(ctx.tools))
    messages: list[ChatMessage] = [system(prompt), *history, user(user_message)]

    content = ""
    final_answer: str | None = None
    ceiling = ctx.config.iteration_cap
    iteration = 0
    while iteration < ceiling:
        iteration += 1
        ctx.emit_iteration(iteration, ASSISTANT)
        response = ctx.complete(ASSISTANT, messages)
        content = response.content
        call = parse_embedded_tool_call(content)
        if call is None:
            # no valid call: the reply is the final answer (or a premature
            # stop when the model fumbled the JSON; same contract)
            final_answer = content
            break
        result = ctx.execute_call(call, ASSISTANT)
        messages.append(assistant(content))
        messages.append(user(f"Result of {call.tool_name}: {render_result(result)}"))

    if final_answer is None:
        final_answer = content + TRUNCATION_NOTICE
    return ctx.recorder.finish(final_answer)
