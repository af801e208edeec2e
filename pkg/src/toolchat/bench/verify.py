"""Matcher-vs-oracle comparison over generated scenarios.

Backs ``bench verify-matcher`` and the acceptance suite: the backtracking
matcher and the exhaustive oracle must agree on correct/perfect for every
scenario, including four fixed anchor cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from ..actions import ToolCall
from .cases import ExpectedParam, ExpectedToolSpec, Strictness
from .matching import match_tool_log
from .oracle import oracle_match

TOOLS = ["office--read", "office--write", "depot--find", "depot--move"]
PARAM_NAMES = ["p", "q"]
STRING_VALUES = ["server", "Server Room", "rack", "RACK 42", "kitchen", "other"]
PLAIN_VALUES: list[Any] = [1, 2, 7, 3.5, True, False, [1, 2], {"a": 1}]


def _random_value(rng: random.Random) -> Any:
    if rng.random() < 0.6:
        return rng.choice(STRING_VALUES)
    return rng.choice(PLAIN_VALUES)


def _random_specs(rng: random.Random, max_specs: int) -> list[ExpectedToolSpec]:
    count = rng.randint(1, max_specs)
    specs: list[ExpectedToolSpec] = []
    for index in range(count):
        params = []
        for name in PARAM_NAMES[: rng.randint(0, 2)]:
            value = _random_value(rng)
            strictness = (
                rng.choice(list(Strictness)) if isinstance(value, str) else Strictness.EXACT
            )
            params.append(
                ExpectedParam(
                    name=name,
                    expected_value=value,
                    strictness=strictness,
                    optional=rng.random() < 0.2,
                )
            )
        depends_on = rng.randrange(index) if index and rng.random() < 0.25 else None
        group = rng.choice(["g1", "g2"]) if rng.random() < 0.2 else None
        specs.append(
            ExpectedToolSpec(
                tool_name=rng.choice(TOOLS),
                params=params,
                depends_on=depends_on,
                alternative_group=group,
                optional=rng.random() < 0.2,
            )
        )
    return specs


def _call_from_spec(spec: ExpectedToolSpec, rng: random.Random, sequence: int) -> ToolCall:
    arguments: dict[str, Any] = {}
    for param in spec.params:
        roll = rng.random()
        if roll < 0.6:
            value = param.expected_value
            # sometimes extend a string so PARTIAL matches while EXACT breaks
            if isinstance(value, str) and rng.random() < 0.4:
                value = value + " extension" if rng.random() < 0.5 else value.upper()
            arguments[param.name] = value
        elif roll < 0.8:
            arguments[param.name] = _random_value(rng)
        # else omit the parameter entirely
    if rng.random() < 0.2:
        arguments["noise"] = rng.choice(STRING_VALUES)
    return ToolCall(call_id=f"c{sequence}", tool_name=spec.tool_name, arguments=arguments)


def _random_calls(
    specs: list[ExpectedToolSpec], rng: random.Random, max_calls: int
) -> list[ToolCall]:
    count = rng.randint(0, max_calls)
    calls = []
    for sequence in range(count):
        if specs and rng.random() < 0.75:
            calls.append(_call_from_spec(rng.choice(specs), rng, sequence))
        else:
            calls.append(
                ToolCall(
                    call_id=f"c{sequence}",
                    tool_name=rng.choice(TOOLS),
                    arguments={"p": _random_value(rng)} if rng.random() < 0.5 else {},
                )
            )
    rng.shuffle(calls)
    return calls


def anchor_scenarios() -> list[tuple[str, list[ExpectedToolSpec], list[ToolCall], bool, bool]]:
    """Fixed cases with pinned outcomes: (name, expected, calls, correct, perfect)."""
    partial = [
        ExpectedToolSpec(
            tool_name="office--read",
            params=[ExpectedParam(name="p", expected_value="server", strictness=Strictness.PARTIAL)],
        )
    ]
    partial_call = [ToolCall(call_id="c0", tool_name="office--read", arguments={"p": "Server Room"})]

    covered = [
        ExpectedToolSpec(tool_name="office--read", params=[]),
        ExpectedToolSpec(tool_name="depot--find", params=[]),
    ]
    covered_plus_extra = [
        ToolCall(call_id="c0", tool_name="office--read", arguments={}),
        ToolCall(call_id="c1", tool_name="depot--find", arguments={}),
        ToolCall(call_id="c2", tool_name="depot--move", arguments={}),
    ]

    alternatives = [
        ExpectedToolSpec(tool_name="office--read", alternative_group="g"),
        ExpectedToolSpec(tool_name="office--write", alternative_group="g"),
    ]
    only_first = [ToolCall(call_id="c0", tool_name="office--read", arguments={})]

    dependent = [
        ExpectedToolSpec(tool_name="depot--find", params=[]),
        ExpectedToolSpec(
            tool_name="depot--move",
            params=[ExpectedParam(name="p", expected_value="rack")],
            depends_on=0,
        ),
    ]
    dependent_alone = [ToolCall(call_id="c0", tool_name="depot--move", arguments={"p": "rack"})]

    return [
        ("partial-substring-match", partial, partial_call, True, True),
        ("extra-call-voids-perfection", covered, covered_plus_extra, True, False),
        ("one-alternative-suffices", alternatives, only_first, True, True),
        ("dependency-requires-prior-call", dependent, dependent_alone, False, False),
    ]


@dataclass
class VerificationReport:
    scenarios: int = 0
    agreements: int = 0
    mismatches: list[str] = field(default_factory=list)
    anchor_failures: list[str] = field(default_factory=list)
    # how often each checking attribute occurred across generated scenarios
    attribute_counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.anchor_failures

    def _tally(self, specs: list[ExpectedToolSpec]) -> None:
        for spec in specs:
            if spec.depends_on is not None:
                self._bump("dependency")
            if spec.alternative_group is not None:
                self._bump("alternative")
            if spec.optional:
                self._bump("optional_tool")
            for param in spec.params:
                self._bump(f"strictness_{param.strictness.value}")
                if param.optional:
                    self._bump("optional_param")

    def _bump(self, key: str) -> None:
        self.attribute_counts[key] = self.attribute_counts.get(key, 0) + 1


def verify_matcher(
    generated: int = 200, seed: int = 7, max_specs: int = 6, max_calls: int = 8
) -> VerificationReport:
    report = VerificationReport()

    for name, specs, calls, want_correct, want_perfect in anchor_scenarios():
        report.scenarios += 1
        outcome = match_tool_log(specs, calls)
        oracle = oracle_match(specs, calls)
        if (outcome.correct, outcome.perfect) != (want_correct, want_perfect):
            report.anchor_failures.append(
                f"{name}: matcher said {(outcome.correct, outcome.perfect)}, pinned {(want_correct, want_perfect)}"
            )
        elif oracle != (want_correct, want_perfect):
            report.anchor_failures.append(
                f"{name}: oracle said {oracle}, pinned {(want_correct, want_perfect)}"
            )
        else:
            report.agreements += 1

    rng = random.Random(seed)
    for index in range(generated):
        specs = _random_specs(rng, max_specs)
        calls = _random_calls(specs, rng, max_calls)
        report.scenarios += 1
        report._tally(specs)
        outcome = match_tool_log(specs, calls)
        oracle = oracle_match(specs, calls)
        if (outcome.correct, outcome.perfect) == oracle:
            report.agreements += 1
        else:
            report.mismatches.append(
                f"scenario {index}: matcher {(outcome.correct, outcome.perfect)} vs oracle {oracle} "
                f"(specs={[s.model_dump() for s in specs]}, calls={[c.model_dump() for c in calls]})"
            )
    return report
