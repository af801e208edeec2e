"""Benchmark execution: reset, run, match, judge, aggregate."""

from __future__ import annotations

from typing import Callable, Sequence

from pydantic import BaseModel

from ..llm import LlmGateway
from ..platform import PlatformClient
from ..strategies import MethodConfig, StrategyRunRecord, run_method
from .cases import BenchmarkCase
from .judge import Judge
from .matching import MatchOutcome, match_tool_log


class CaseReport(BaseModel):
    model_config = {"frozen": True}

    case_id: str
    prompt: str
    final_answer: str = ""
    score: int = 1
    score_reason: str = ""
    judge_flagged: bool = False
    correct: bool = False
    perfect: bool = False
    diagnostics: list[str] = []
    llm_calls: int = 0
    iterations: int = 0
    prompt_tokens: int = 0
    completion_tokens: int = 0
    elapsed_ms: float = 0.0
    module_elapsed_ms: dict[str, float] = {}
    tool_calls: list[str] = []
    error: str = ""


class RunMetrics(BaseModel):
    model_config = {"frozen": True}

    cases: int
    response_score: float  # mean, 1..5
    correct_tool_count: int
    perfect_tool_count: int
    total_time_s: float
    module_time_s: dict[str, float]
    total_tokens: int


class BenchmarkRunResult(BaseModel):
    model_config = {"frozen": True}

    set_name: str
    method: str
    metrics: RunMetrics
    case_reports: list[CaseReport]


def aggregate(case_reports: Sequence[CaseReport]) -> RunMetrics:
    count = len(case_reports)
    module_time: dict[str, float] = {}
    for report in case_reports:
        for module, elapsed in report.module_elapsed_ms.items():
            module_time[module] = module_time.get(module, 0.0) + elapsed
    return RunMetrics(
        cases=count,
        response_score=(sum(r.score for r in case_reports) / count) if count else 0.0,
        correct_tool_count=sum(1 for r in case_reports if r.correct),
        perfect_tool_count=sum(1 for r in case_reports if r.perfect),
        total_time_s=sum(r.elapsed_ms for r in case_reports) / 1000.0,
        module_time_s={m: t / 1000.0 for m, t in sorted(module_time.items())},
        total_tokens=sum(r.prompt_tokens + r.completion_tokens for r in case_reports),
    )


def run_benchmark(
    cases: Sequence[BenchmarkCase],
    config: MethodConfig,
    platform: PlatformClient,
    gateway_for_case: Callable[[BenchmarkCase], LlmGateway],
    judge: Judge,
    reset_containers: Callable[[], None],
    set_name: str = "",
) -> BenchmarkRunResult:
    """Run every case from a reset platform; per-case failures never abort."""
    reports: list[CaseReport] = []
    for case in cases:
        reset_containers()
        try:
            gateway = gateway_for_case(case)
            record = run_method(gateway, platform, config, case.prompt)
            reports.append(_report_for(case, record, judge))
        except Exception as err:
            reports.append(
                CaseReport(case_id=case.case_id, prompt=case.prompt, error=f"{type(err).__name__}: {err}")
            )
    return BenchmarkRunResult(
        set_name=set_name,
        method=config.method.value,
        metrics=aggregate(reports),
        case_reports=reports,
    )


def _report_for(case: BenchmarkCase, record: StrategyRunRecord, judge: Judge) -> CaseReport:
    outcome: MatchOutcome = match_tool_log(
        case.expected_tools, [entry.call for entry in record.tool_log]
    )
    verdict = judge.judge(case.prompt, case.expected_answer, record.final_answer)
    return CaseReport(
        case_id=case.case_id,
        prompt=case.prompt,
        final_answer=record.final_answer,
        score=verdict.score,
        score_reason=verdict.reason,
        judge_flagged=verdict.flagged,
        correct=outcome.correct,
        perfect=outcome.perfect,
        diagnostics=outcome.diagnostics,
        llm_calls=record.llm_calls,
        iterations=record.iterations,
        prompt_tokens=record.total_prompt_tokens,
        completion_tokens=record.total_completion_tokens,
        elapsed_ms=record.total_elapsed_ms,
        module_elapsed_ms={m: s.elapsed_ms for m, s in sorted(record.per_module.items())},
        tool_calls=[entry.call.tool_name for entry in record.tool_log],
    )
