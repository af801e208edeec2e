"""Report emission: results JSON, comparison table, tool-usage percentages.

Reports are pure functions of the results files — re-emitting over the same
results produces byte-identical output (no timestamps, stable ordering).
The emitter recomputes all aggregates from the per-case records and refuses
to write a report whose stored metrics disagree.
"""

from __future__ import annotations

import json
from pathlib import Path

from .runner import BenchmarkRunResult, aggregate


class MetricsMismatch(Exception):
    pass


def results_filename(result: BenchmarkRunResult) -> str:
    return f"results-{result.method}-{result.set_name}.json"


def write_results(result: BenchmarkRunResult, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / results_filename(result)
    path.write_text(json.dumps(result.model_dump(mode="json"), indent=2, sort_keys=True) + "\n")
    return path


def load_results(directory: str | Path) -> list[BenchmarkRunResult]:
    paths = sorted(Path(directory).glob("results-*.json"))
    return [BenchmarkRunResult.model_validate(json.loads(p.read_text())) for p in paths]


def _fmt_row(cells: list[str], widths: list[int]) -> str:
    return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()


def render_table(rows: list[list[str]], header: list[str]) -> str:
    widths = [
        max(len(header[i]), *(len(row[i]) for row in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    lines = [_fmt_row(header, widths), _fmt_row(["-" * w for w in widths], widths)]
    lines.extend(_fmt_row(row, widths) for row in rows)
    return "\n".join(lines)


def render_report(results: list[BenchmarkRunResult]) -> str:
    """Comparison table plus tool-usage percentages, recomputed from cases."""
    comparison_rows = []
    usage_rows = []
    detail_blocks = []
    for result in results:
        recomputed = aggregate(result.case_reports)
        if recomputed != result.metrics:
            raise MetricsMismatch(
                f"{result.method}/{result.set_name}: stored metrics do not match the case records"
            )
        metrics = recomputed
        comparison_rows.append(
            [
                result.method,
                result.set_name,
                f"{metrics.response_score:.2f}",
                f"{metrics.total_time_s:.2f}",
                f"{metrics.total_tokens}",
                f"{metrics.cases}",
            ]
        )
        denominator = max(metrics.cases, 1)
        usage_rows.append(
            [
                result.method,
                result.set_name,
                f"{100.0 * metrics.correct_tool_count / denominator:.1f}%",
                f"{100.0 * metrics.perfect_tool_count / denominator:.1f}%",
            ]
        )
        if metrics.module_time_s:
            module_rows = [
                [module, f"{seconds:.3f}"] for module, seconds in metrics.module_time_s.items()
            ]
            detail_blocks.append(
                f"\nModule time, {result.method} on {result.set_name} (s):\n"
                + render_table(module_rows, ["module", "time"])
            )

    sections = [
        "Benchmark comparison",
        render_table(
            comparison_rows,
            ["method", "set", "score (1-5)", "time (s)", "tokens", "cases"],
        ),
        "",
        "Tool usage",
        render_table(usage_rows, ["method", "set", "correct", "perfect"]),
    ]
    sections.extend(detail_blocks)
    return "\n".join(sections) + "\n"


def emit_report(directory: str | Path, out_path: str | Path | None = None) -> Path:
    results = load_results(directory)
    text = render_report(results)
    target = Path(out_path) if out_path else Path(directory) / "report.txt"
    target.write_text(text)
    return target
