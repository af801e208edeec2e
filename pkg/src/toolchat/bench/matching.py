"""Expected-vs-actual tool matching with alternatives, optionality,
dependencies, and string strictness.

Solved as a small assignment problem via backtracking rather than greedily:
duplicate tool names, alternatives, and optional specs make greedy order-
sensitive. ``bench verify-matcher`` checks this implementation against an
exhaustive enumeration oracle.
"""

from __future__ import annotations

import itertools
from typing import Any, Sequence

from pydantic import BaseModel

from ..actions import ToolCall
from .cases import ExpectedParam, ExpectedToolSpec, Strictness


class MatchOutcome(BaseModel):
    model_config = {"frozen": True}

    correct: bool
    perfect: bool
    diagnostics: list[str] = []


def canonical_equal(a: Any, b: Any) -> bool:
    """Value equality that keeps booleans and numbers apart."""
    if isinstance(a, bool) or isinstance(b, bool):
        return isinstance(a, bool) and isinstance(b, bool) and a == b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return a == b
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(canonical_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(canonical_equal(a[k], b[k]) for k in a)
    return type(a) is type(b) and a == b


def param_matches(param: ExpectedParam, arguments: dict[str, Any]) -> bool:
    if param.name not in arguments:
        return param.optional
    actual = arguments[param.name]
    if isinstance(param.expected_value, str):
        if not isinstance(actual, str):
            return False
        if param.strictness == Strictness.EXACT:
            return actual == param.expected_value
        if param.strictness == Strictness.PARTIAL:
            return param.expected_value.lower() in actual.lower()
        return True  # NONE: any string passes
    return canonical_equal(param.expected_value, actual)


def call_matches(spec: ExpectedToolSpec, call: ToolCall) -> bool:
    if spec.tool_name != call.tool_name:
        return False
    return all(param_matches(p, call.arguments) for p in spec.params)


def _group_choices(specs: Sequence[ExpectedToolSpec]):
    """Yield index lists: all ungrouped specs plus one member per group."""
    groups: dict[str, list[int]] = {}
    ungrouped: list[int] = []
    for index, spec in enumerate(specs):
        if spec.alternative_group is None:
            ungrouped.append(index)
        else:
            groups.setdefault(spec.alternative_group, []).append(index)
    if not groups:
        yield list(ungrouped)
        return
    for picks in itertools.product(*groups.values()):
        yield sorted(ungrouped + list(picks))


def _assign(
    specs: Sequence[ExpectedToolSpec],
    chosen: list[int],
    calls: Sequence[ToolCall],
    consume_all: bool,
) -> dict[int, int] | None:
    """Injective spec->call assignment honoring all constraints, or None.

    ``consume_all`` additionally requires every call to be consumed (the
    perfect-usage condition).
    """
    if consume_all and len(calls) > len(chosen):
        return None
    used: set[int] = set()
    positions: dict[int, int] = {}

    def backtrack(cursor: int) -> bool:
        if cursor == len(chosen):
            return not consume_all or len(used) == len(calls)
        spec_index = chosen[cursor]
        spec = specs[spec_index]
        threshold = -1
        if spec.depends_on is not None:
            if spec.depends_on not in positions:
                # prerequisite unassigned: only skipping (if allowed) remains
                return spec.optional and backtrack(cursor + 1)
            threshold = positions[spec.depends_on]
        for call_index, call in enumerate(calls):
            if call_index in used or call_index <= threshold:
                continue
            if not call_matches(spec, call):
                continue
            used.add(call_index)
            positions[spec_index] = call_index
            if backtrack(cursor + 1):
                return True
            used.discard(call_index)
            del positions[spec_index]
        if spec.optional:
            return backtrack(cursor + 1)
        return False

    return dict(positions) if backtrack(0) else None


def _diagnose(
    specs: Sequence[ExpectedToolSpec],
    calls: Sequence[ToolCall],
    witness: dict[int, int] | None,
    perfect: bool,
) -> list[str]:
    notes: list[str] = []
    if witness is None:
        for index, spec in enumerate(specs):
            if spec.optional:
                continue
            named = [c for c in calls if c.tool_name == spec.tool_name]
            if not named:
                notes.append(f"expected tool {spec.tool_name} was never called")
            elif not any(call_matches(spec, c) for c in named):
                notes.append(
                    f"{spec.tool_name} was called, but no call satisfied the expected parameters"
                )
            elif spec.depends_on is not None:
                notes.append(
                    f"{spec.tool_name} only matched out of order with its prerequisite "
                    f"(spec {spec.depends_on})"
                )
        if not notes:
            notes.append("expectations could not be assigned jointly (conflicting calls)")
    elif not perfect:
        consumed = set(witness.values())
        extras = [c.tool_name for i, c in enumerate(calls) if i not in consumed]
        if extras:
            notes.append(f"additional calls beyond the expectation: {', '.join(extras)}")
        else:
            notes.append("no single assignment both covers expectations and consumes every call")
    return notes


def match_tool_log(
    expected: Sequence[ExpectedToolSpec], actual: Sequence[ToolCall]
) -> MatchOutcome:
    """Correct: every required expectation maps to a distinct acceptable call.

    Perfect: correct with every actual call consumed by the assignment;
    optional expectations may consume calls, leftover calls void perfection.
    """
    witness: dict[int, int] | None = None
    perfect = False
    for chosen in _group_choices(expected):
        if witness is None:
            witness = _assign(expected, chosen, actual, consume_all=False)
        if not perfect and _assign(expected, chosen, actual, consume_all=True) is not None:
            perfect = True
        if witness is not None and perfect:
            break
    correct = witness is not None
    perfect = perfect and correct
    return MatchOutcome(
        correct=correct,
        perfect=perfect,
        diagnostics=_diagnose(expected, actual, witness, perfect),
    )
