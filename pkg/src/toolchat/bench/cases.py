"""Benchmark case schema: curated prompts with expected answers and tools."""

from __future__ import annotations

import json
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, model_validator

DATA_DIR = Path(__file__).parent / "data"


class Strictness(str, Enum):
    EXACT = "EXACT"
    PARTIAL = "PARTIAL"
    NONE = "NONE"


class ExpectedParam(BaseModel):
    model_config = {"frozen": True}

    name: str
    expected_value: Any = None
    strictness: Strictness = Strictness.EXACT
    optional: bool = False

    @model_validator(mode="after")
    def _strictness_only_for_strings(self) -> "ExpectedParam":
        if not isinstance(self.expected_value, str) and self.strictness != Strictness.EXACT:
            raise ValueError(
                f"param {self.name!r}: strictness applies to string values only"
            )
        return self


class ExpectedToolSpec(BaseModel):
    model_config = {"frozen": True}

    tool_name: str
    params: list[ExpectedParam] = []
    depends_on: Optional[int] = None  # index of a prior spec in the case
    alternative_group: Optional[str] = None
    optional: bool = False


class CaseSet(str, Enum):
    SINGLE_TOOL = "single_tool"
    MULTI_TOOL = "multi_tool"


class BenchmarkCase(BaseModel):
    model_config = {"frozen": True}

    case_id: str
    set: CaseSet
    prompt: str
    expected_answer: str
    expected_tools: list[ExpectedToolSpec] = []

    @model_validator(mode="after")
    def _check_structure(self) -> "BenchmarkCase":
        for index, spec in enumerate(self.expected_tools):
            if spec.depends_on is not None and not 0 <= spec.depends_on < index:
                raise ValueError(
                    f"case {self.case_id}: spec {index} must depend on an earlier spec"
                )
        required = self.required_tool_count()
        if self.set == CaseSet.SINGLE_TOOL and required != 1:
            raise ValueError(
                f"case {self.case_id}: single-tool cases expect exactly one required tool, got {required}"
            )
        if self.set == CaseSet.MULTI_TOOL and required < 2:
            raise ValueError(
                f"case {self.case_id}: multi-tool cases require at least two tool calls"
            )
        return self

    def required_tool_count(self) -> int:
        """Non-optional expectations, counting each alternative group once."""
        groups_with_required: set[str] = set()
        count = 0
        for spec in self.expected_tools:
            if spec.optional:
                continue
            if spec.alternative_group is None:
                count += 1
            else:
                groups_with_required.add(spec.alternative_group)
        return count + len(groups_with_required)


def load_case_file(path: str | Path) -> list[BenchmarkCase]:
    document = json.loads(Path(path).read_text())
    return [BenchmarkCase.model_validate(doc) for doc in document["cases"]]


def bundled_cases(case_set: CaseSet | str) -> list[BenchmarkCase]:
    name = CaseSet(case_set).value
    return load_case_file(DATA_DIR / f"{name}.json")
