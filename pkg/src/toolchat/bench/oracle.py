"""Exhaustive-enumeration reference for the tool matcher.

Deliberately brute force and structurally independent of matching.py: it
enumerates every injective partial assignment and filters by the rules.
``bench verify-matcher`` and the acceptance suite compare the two.
"""

from __future__ import annotations

import itertools
from typing import Any, Sequence

from ..actions import ToolCall
from .cases import ExpectedToolSpec, Strictness


def _value_ok(expected: Any, strictness: Strictness, actual: Any, present: bool, optional: bool) -> bool:
    if not present:
        return optional
    if isinstance(expected, str):
        if not isinstance(actual, str):
            return False
        if strictness is Strictness.NONE:
            return True
        if strictness is Strictness.PARTIAL:
            return expected.lower() in actual.lower()
        return expected == actual
    return _plain_equal(expected, actual)


def _plain_equal(a: Any, b: Any) -> bool:
    if isinstance(a, bool) != isinstance(b, bool):
        return False
    if isinstance(a, list):
        return isinstance(b, list) and len(a) == len(b) and all(
            _plain_equal(x, y) for x, y in zip(a, b)
        )
    if isinstance(a, dict):
        return (
            isinstance(b, dict)
            and set(a) == set(b)
            and all(_plain_equal(a[k], b[k]) for k in a)
        )
    return a == b


def _spec_accepts(spec: ExpectedToolSpec, call: ToolCall) -> bool:
    if call.tool_name != spec.tool_name:
        return False
    for param in spec.params:
        present = param.name in call.arguments
        actual = call.arguments.get(param.name)
        if not _value_ok(param.expected_value, param.strictness, actual, present, param.optional):
            return False
    return True


def oracle_match(
    expected: Sequence[ExpectedToolSpec], actual: Sequence[ToolCall]
) -> tuple[bool, bool]:
    """(correct, perfect) by enumerating every assignment."""
    m, n = len(expected), len(actual)

    groups: dict[str, list[int]] = {}
    for index, spec in enumerate(expected):
        if spec.alternative_group is not None:
            groups.setdefault(spec.alternative_group, []).append(index)

    correct = perfect = False
    group_picks = itertools.product(*groups.values()) if groups else [()]
    for picks in group_picks:
        chosen = [
            i
            for i, spec in enumerate(expected)
            if spec.alternative_group is None or i in picks
        ]
        # every mapping of chosen specs to a call slot or None (-1)
        for assignment in itertools.product(range(-1, n), repeat=len(chosen)):
            taken = [slot for slot in assignment if slot >= 0]
            if len(taken) != len(set(taken)):
                continue  # not injective
            slot_of = {spec_i: slot for spec_i, slot in zip(chosen, assignment)}
            ok = True
            for spec_i, slot in slot_of.items():
                spec = expected[spec_i]
                if slot == -1:
                    if not spec.optional:
                        ok = False
                        break
                    continue
                if not _spec_accepts(spec, actual[slot]):
                    ok = False
                    break
                if spec.depends_on is not None:
                    previous = slot_of.get(spec.depends_on, -1)
                    if previous == -1 or previous >= slot:
                        ok = False
                        break
            if not ok:
                continue
            correct = True
            if len(taken) == n:
                perfect = True
            if correct and perfect:
                return True, True
    return correct, perfect
