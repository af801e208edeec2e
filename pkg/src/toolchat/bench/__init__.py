"""Benchmark harness: cases, tool matching, judging, running, reporting."""

from .cases import (
    BenchmarkCase,
    CaseSet,
    ExpectedParam,
    ExpectedToolSpec,
    Strictness,
    bundled_cases,
    load_case_file,
)
from .judge import Judge, JudgeVerdict, LlmJudge, StubJudge, parse_score
from .matching import MatchOutcome, call_matches, canonical_equal, match_tool_log, param_matches
from .oracle import oracle_match
from .report import emit_report, load_results, render_report, write_results
from .runner import BenchmarkRunResult, CaseReport, RunMetrics, aggregate, run_benchmark
from .scripts import planned_calls, synthesize_script
from .verify import VerificationReport, anchor_scenarios, verify_matcher

__all__ = [
    "BenchmarkCase",
    "BenchmarkRunResult",
    "CaseReport",
    "CaseSet",
    "ExpectedParam",
    "ExpectedToolSpec",
    "Judge",
    "JudgeVerdict",
    "LlmJudge",
    "MatchOutcome",
    "RunMetrics",
    "Strictness",
    "StubJudge",
    "VerificationReport",
    "aggregate",
    "anchor_scenarios",
    "bundled_cases",
    "call_matches",
    "canonical_equal",
    "emit_report",
    "load_case_file",
    "load_results",
    "match_tool_log",
    "oracle_match",
    "param_matches",
    "parse_score",
    "planned_calls",
    "render_report",
    "run_benchmark",
    "synthesize_script",
    "verify_matcher",
    "write_results",
]
