"""The ``bench`` command line: run benchmark sets, emit reports, verify the matcher."""

from __future__ import annotations

import sys
from pathlib import Path

import click
import yaml

from ..containers import install_benchmark_containers
from ..llm import EndpointKind, EndpointProfile, LlmGateway
from ..platform import LocalPlatformClient, RuntimePlatform
from ..strategies import Method, MethodConfig
from .cases import BenchmarkCase, CaseSet, bundled_cases, load_case_file
from .judge import LlmJudge, StubJudge
from .report import emit_report, write_results
from .runner import run_benchmark
from .scripts import synthesize_script
from .verify import verify_matcher

DEFAULT_USERS = {"bench": "bench"}

STUB_CONFIG = {
    "profiles": {"main": {"kind": "scripted", "model": "stub-model"}},
    "judge": {"kind": "stub"},
    "method": {"endpoint_profiles": {"default": "main"}},
}


def load_config(path: str | None) -> dict:
    if path is None:
        return STUB_CONFIG
    return yaml.safe_load(Path(path).read_text())


@click.group()
def main() -> None:
    """Benchmark harness for the tool-calling methods."""


@main.command()
@click.option("--set", "set_name", type=click.Choice(["single", "multi"]), required=True)
@click.option("--method", "method_name", type=click.Choice([m.value for m in Method]), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="YAML config with endpoint profiles; defaults to the scripted stub.")
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--cases", "cases_path", type=click.Path(exists=True), default=None,
              help="Case file overriding the bundled set.")
@click.option("--manifest", "manifest_path", type=click.Path(exists=True), default=None,
              help="Container manifest overriding the bundled one.")
def run(set_name: str, method_name: str, config_path: str | None, out_dir: str,
        cases_path: str | None, manifest_path: str | None) -> None:
    """Run one benchmark set against one method and write results JSON."""
    config_doc = load_config(config_path)
    case_set = CaseSet.SINGLE_TOOL if set_name == "single" else CaseSet.MULTI_TOOL
    cases = load_case_file(cases_path) if cases_path else bundled_cases(case_set)

    profiles = {
        name: EndpointProfile.from_config(name, doc)
        for name, doc in config_doc.get("profiles", {}).items()
    }
    method_doc = dict(config_doc.get("method", {}))
    method_config = MethodConfig(method=Method(method_name), **method_doc)
    method_config.validate_profiles()

    platform = RuntimePlatform(users=dict(config_doc.get("users", DEFAULT_USERS)))
    username, password = next(iter((config_doc.get("users") or DEFAULT_USERS).items()))
    client = LocalPlatformClient(platform, username, password)
    containers = install_benchmark_containers(platform, client.token, manifest_path)
    container_ids = [c.container_id for c in containers]

    def reset_containers() -> None:
        for container_id in container_ids:
            client.reset_container(container_id)

    scripted_names = [n for n, p in profiles.items() if p.kind == EndpointKind.SCRIPTED]

    def gateway_for_case(case: BenchmarkCase) -> LlmGateway:
        scripts = {
            name: synthesize_script(case, method_name) for name in scripted_names
        }
        return LlmGateway.build(profiles, scripts)

    judge_doc = config_doc.get("judge", {"kind": "stub"})
    if judge_doc.get("kind") == "llm":
        judge = LlmJudge(LlmGateway.build(profiles), judge_doc["profile"])
    else:
        judge = StubJudge()

    result = run_benchmark(
        cases,
        method_config,
        client,
        gateway_for_case,
        judge,
        reset_containers,
        set_name=case_set.value,
    )
    path = write_results(result, out_dir)
    metrics = result.metrics
    click.echo(f"wrote {path}")
    click.echo(
        f"{result.method} on {result.set_name}: score {metrics.response_score:.2f}, "
        f"correct {metrics.correct_tool_count}/{metrics.cases}, "
        f"perfect {metrics.perfect_tool_count}/{metrics.cases}, "
        f"time {metrics.total_time_s:.2f}s, tokens {metrics.total_tokens}"
    )


@main.command()
@click.option("--in", "in_dir", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def report(in_dir: str, out_path: str | None) -> None:
    """Render the comparison report from result files in a directory."""
    target = emit_report(in_dir, out_path)
    click.echo(f"wrote {target}")
    click.echo(target.read_text())


@main.command("verify-matcher")
@click.option("--scenarios", "generated", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
def verify_matcher_command(generated: int, seed: int) -> None:
    """Compare the matcher against the exhaustive oracle on generated cases."""
    result = verify_matcher(generated=generated, seed=seed)
    click.echo(f"{result.agreements}/{result.scenarios} scenarios agree")
    for line in result.anchor_failures + result.mismatches[:10]:
        click.echo(f"  {line}", err=True)
    if not result.ok:
        sys.exit(1)
    click.echo("matcher and oracle agree on all scenarios")
