"""Happy-path stub scripts synthesized from a case's expectations.

Given a benchmark case, build the scripted replies that walk a method
through exactly the expected tool calls and end on the expected answer.
This is what makes the bundled benchmark runnable without any model.
"""

from __future__ import annotations

import json
from typing import Any

from ..actions import split_tool_name
from ..llm import ReplyMatcher, ScriptedReply, ScriptedToolCall, StubScript
from ..strategies import (
    AGENT_EVALUATOR,
    ORCHESTRATOR,
    OUTPUT_GENERATOR,
    OVERALL_EVALUATOR,
    PLANNER,
    WORKER,
)
from .cases import BenchmarkCase

PROMPT_TOKENS = 50
COMPLETION_TOKENS = 10


class PlannedCall:
    def __init__(self, tool_name: str, arguments: dict[str, Any]):
        self.tool_name = tool_name
        self.arguments = arguments
        self.agent_id = split_tool_name(tool_name)[0]


def planned_calls(case: BenchmarkCase) -> list[PlannedCall]:
    """The minimal call sequence satisfying the case, in declaration order.

    Optional specs are skipped; each alternative group contributes its first
    member. Argument values come from the expected parameter values, which
    works for PARTIAL and NONE strictness too (a value matches itself).
    """
    taken_groups: set[str] = set()
    calls: list[PlannedCall] = []
    for spec in case.expected_tools:
        if spec.optional:
            continue
        if spec.alternative_group is not None:
            if spec.alternative_group in taken_groups:
                continue
            taken_groups.add(spec.alternative_group)
        arguments = {
            p.name: p.expected_value for p in spec.params if not p.optional
        }
        calls.append(PlannedCall(spec.tool_name, arguments))
    return calls


def _reply(content: str | None = None, tool_call: PlannedCall | None = None,
           match: ReplyMatcher | None = None) -> ScriptedReply:
    tool_calls = []
    if tool_call is not None:
        tool_calls = [ScriptedToolCall(tool_name=tool_call.tool_name, arguments=tool_call.arguments)]
    return ScriptedReply(
        match=match,
        content=content,
        tool_calls=tool_calls,
        prompt_tokens=PROMPT_TOKENS,
        completion_tokens=COMPLETION_TOKENS,
    )


def _simple_script(case: BenchmarkCase, calls: list[PlannedCall]) -> StubScript:
    replies = [
        _reply(content=json.dumps({"name": c.tool_name, "parameters": c.arguments}))
        for c in calls
    ]
    replies.append(_reply(content=case.expected_answer))
    return StubScript(replies=replies)


def _simple_tools_script(case: BenchmarkCase, calls: list[PlannedCall]) -> StubScript:
    replies = [_reply(tool_call=c) for c in calls]
    replies.append(_reply(content=case.expected_answer))
    return StubScript(replies=replies)


def _tool_chain_script(case: BenchmarkCase, calls: list[PlannedCall]) -> StubScript:
    replies: list[ScriptedReply] = []
    if not calls:
        return StubScript(replies=[_reply(content=case.expected_answer)])
    for index, call in enumerate(calls):
        replies.append(_reply(tool_call=call))
        if index < len(calls) - 1:
            replies.append(_reply(content=f"Step {index + 1} done; more calls needed.\nCONTINUE"))
        else:
            replies.append(_reply(content=case.expected_answer))
    return StubScript(replies=replies)


def _orchestration_script(case: BenchmarkCase, calls: list[PlannedCall]) -> StubScript:
    replies: list[ScriptedReply] = []
    agent_order: list[str] = []
    per_agent: dict[str, list[PlannedCall]] = {}
    for call in calls:
        if call.agent_id not in per_agent:
            agent_order.append(call.agent_id)
            per_agent[call.agent_id] = []
        per_agent[call.agent_id].append(call)

    subtasks = [{"agent_id": agent, "task": f"Handle for the user: {case.prompt}"} for agent in agent_order]
    replies.append(
        _reply(content=json.dumps(subtasks), match=ReplyMatcher(module=ORCHESTRATOR))
    )
    for agent in agent_order:
        marker = f'"{agent}"'
        agent_calls = per_agent[agent]
        for index, call in enumerate(agent_calls):
            last = index == len(agent_calls) - 1
            replies.append(
                _reply(
                    content=f"Call {call.tool_name} with {json.dumps(call.arguments)}.",
                    match=ReplyMatcher(module=PLANNER, contains=[marker]),
                )
            )
            replies.append(
                _reply(tool_call=call, match=ReplyMatcher(module=WORKER, contains=[marker]))
            )
            verdict = "FINISHED" if last else "CONTINUE"
            replies.append(
                _reply(
                    content=f"Round {index + 1} results recorded.\n{verdict}",
                    match=ReplyMatcher(module=AGENT_EVALUATOR, contains=[marker]),
                )
            )
    replies.append(_reply(content="FINISHED", match=ReplyMatcher(module=OVERALL_EVALUATOR)))
    replies.append(
        _reply(content=case.expected_answer, match=ReplyMatcher(module=OUTPUT_GENERATOR))
    )
    return StubScript(dispatch="matched", replies=replies)


def synthesize_script(case: BenchmarkCase, method: str) -> StubScript:
    calls = planned_calls(case)
    if method == "simple":
        return _simple_script(case, calls)
    if method == "simple_tools":
        return _simple_tools_script(case, calls)
    if method == "tool_chain":
        return _tool_chain_script(case, calls)
    if method == "orchestration":
        return _orchestration_script(case, calls)
    raise ValueError(f"unknown method {method!r}")
