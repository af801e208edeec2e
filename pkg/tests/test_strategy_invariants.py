"""Cross-method properties: attribution, parallelism, accounting, validation."""

import time

from toolchat.strategies import (
    ASSISTANT,
    EVALUATOR,
    GENERATOR,
    METHOD_MODULES,
    Method,
    run_method,
)

from strategy_helpers import (
    bench_platform,
    calls,
    embedded,
    latency_platform,
    make_gateway,
    method_config,
    say,
)


def test_simple_sequential_iterations_do_not_overlap():
    _, client = latency_platform(latency_ms=100.0, containers=2)
    gateway, _ = make_gateway(
        embedded("slow-agent-0--probe", {}),
        embedded("slow-agent-1--probe", {}),
        say("Both probes done."),
    )
    started = time.perf_counter()
    record = run_method(gateway, client, method_config("simple"), "probe all")
    wall_ms = (time.perf_counter() - started) * 1000
    assert len(record.tool_log) == 2
    assert wall_ms >= 200, f"sequential iterations must not overlap, took {wall_ms:.0f}ms"


def test_simple_tools_within_round_calls_do_not_overlap():
    _, client = latency_platform(latency_ms=100.0, containers=2)
    gateway, _ = make_gateway(
        calls(("slow-agent-0--probe", {}), ("slow-agent-1--probe", {})),
        say("Both probes done."),
    )
    started = time.perf_counter()
    run_method(gateway, client, method_config("simple_tools"), "probe all")
    wall_ms = (time.perf_counter() - started) * 1000
    assert wall_ms >= 200


def test_orchestration_worker_calls_overlap():
    _, client = latency_platform(latency_ms=100.0, containers=2)
    gateway, _ = make_gateway(
        say('[{"agent_id": "slow-agent-0", "task": "probe both"}]'),
        say("call both probes"),
        calls(("slow-agent-0--probe", {}), ("slow-agent-1--probe", {})),
        say("done.\nFINISHED"),
        say("FINISHED"),
        say("Probes answered."),
    )
    started = time.perf_counter()
    record = run_method(gateway, client, method_config("orchestration"), "probe")
    wall_ms = (time.perf_counter() - started) * 1000
    assert len(record.tool_log) == 2
    assert wall_ms < 180, f"worker-phase calls must overlap, took {wall_ms:.0f}ms"


SCENARIOS = {
    Method.SIMPLE: [
        embedded("room-info--count_rooms", {}),
        say("Six rooms.", prompt_tokens=40, completion_tokens=9, elapsed_ms=3),
    ],
    Method.SIMPLE_TOOLS: [
        calls(("room-info--count_rooms", {}), prompt_tokens=33, completion_tokens=4),
        say("Six rooms.", prompt_tokens=41, completion_tokens=7),
    ],
    Method.TOOL_CHAIN: [
        calls(("room-info--count_rooms", {}), prompt_tokens=28, completion_tokens=4),
        say("Six rooms.", prompt_tokens=30, completion_tokens=6, elapsed_ms=2),
    ],
    Method.ORCHESTRATION: [
        say('[{"agent_id": "room-info", "task": "count rooms"}]', prompt_tokens=50, completion_tokens=12),
        say("Call count_rooms.", prompt_tokens=20, completion_tokens=6),
        calls(("room-info--count_rooms", {}), prompt_tokens=25, completion_tokens=5),
        say("There are six rooms.\nFINISHED", prompt_tokens=22, completion_tokens=8, elapsed_ms=1),
        say("FINISHED", prompt_tokens=18, completion_tokens=1),
        say("Six rooms.", prompt_tokens=19, completion_tokens=4),
    ],
}


def run_scenario(method: Method):
    _, client = bench_platform()
    gateway, _ = make_gateway(*SCENARIOS[method])
    return run_method(gateway, client, method_config(method), "How many rooms?")


def test_token_accounting_matches_scripted_totals():
    for method, replies in SCENARIOS.items():
        record = run_scenario(method)
        assert record.total_prompt_tokens == sum(r.prompt_tokens for r in replies)
        assert record.total_completion_tokens == sum(r.completion_tokens for r in replies)
        assert record.llm_calls == len(replies)


def test_module_times_sum_within_total_elapsed():
    for method in SCENARIOS:
        record = run_scenario(method)
        module_time = sum(stats.elapsed_ms for stats in record.per_module.values())
        assert module_time <= record.total_elapsed_ms, (
            f"{method.value}: module time {module_time:.2f}ms exceeds total {record.total_elapsed_ms:.2f}ms"
        )


def test_module_attribution_stays_within_method_vocabulary():
    for method in SCENARIOS:
        record = run_scenario(method)
        assert set(record.per_module) <= set(METHOD_MODULES[Method(method)])


def test_tool_chain_records_only_generator_and_evaluator():
    record = run_scenario(Method.TOOL_CHAIN)
    assert set(record.per_module) == {GENERATOR, EVALUATOR}


def test_simple_methods_record_one_module():
    for method in (Method.SIMPLE, Method.SIMPLE_TOOLS):
        record = run_scenario(method)
        assert set(record.per_module) == {ASSISTANT}


def test_invalid_calls_never_reach_the_platform():
    platform, client = bench_platform()
    gateway, _ = make_gateway(
        calls(("climate--get_temperature", {"room_id": "room-kitchen", "bogus": 1})),
        calls(("climate--get_temperature", {"room_id": "room-kitchen"})),
        say("22.5 degrees."),
    )
    record = run_method(gateway, client, method_config("simple_tools"), "Kitchen?")
    assert len(record.tool_log) == 2
    assert record.tool_log[0].result.status.value == "action_error"
    assert "Unknown parameter" in record.tool_log[0].result.payload
    # only the validated call hit the platform
    assert len(platform.invocation_log) == 1
    assert platform.invocation_log[0].tool_name == "climate--get_temperature"


def test_unknown_tool_rejected_client_side():
    platform, client = bench_platform()
    gateway, _ = make_gateway(
        calls(("nonexistent--thing", {})),
        say("Sorry, no such tool."),
    )
    record = run_method(gateway, client, method_config("simple_tools"), "do the thing")
    assert record.tool_log[0].result.status.value == "action_error"
    assert platform.invocation_log == []
