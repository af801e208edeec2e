"""Builders shared by the strategy tests and the acceptance suite."""

from __future__ import annotations

import json

from toolchat.containers import ContainerBuilder, install_benchmark_containers, p_string
from toolchat.llm import (
    EndpointKind,
    EndpointProfile,
    LlmGateway,
    ReplyMatcher,
    ScriptedChatClient,
    ScriptedReply,
    ScriptedToolCall,
    StubScript,
)
from toolchat.platform import LocalPlatformClient, RuntimePlatform
from toolchat.strategies import Method, MethodConfig

USERS = {"admin": "s3cret"}
STUB_PROFILE = EndpointProfile(name="stub", kind=EndpointKind.SCRIPTED, model="stub-model")


def make_gateway(*replies: ScriptedReply, dispatch: str = "ordered") -> tuple[LlmGateway, ScriptedChatClient]:
    client = ScriptedChatClient(StubScript(dispatch=dispatch, replies=list(replies)))
    gateway = LlmGateway({"stub": STUB_PROFILE}, {"stub": client})
    return gateway, client


def method_config(method: Method | str, **kw) -> MethodConfig:
    return MethodConfig(method=Method(method), endpoint_profiles={"default": "stub"}, **kw)


def bench_platform() -> tuple[RuntimePlatform, LocalPlatformClient]:
    platform = RuntimePlatform(users=USERS)
    client = LocalPlatformClient(platform, "admin", "s3cret")
    install_benchmark_containers(platform, client.token)
    return platform, client


def latency_platform(latency_ms: float = 100.0, containers: int = 2) -> tuple[RuntimePlatform, LocalPlatformClient]:
    """Platform with N one-action containers, each sleeping ``latency_ms``."""
    platform = RuntimePlatform(users=USERS)
    client = LocalPlatformClient(platform, "admin", "s3cret")
    for index in range(containers):
        builder = ContainerBuilder(f"slow-{index}")
        builder.seed({})
        agent = builder.agent(f"slow-agent-{index}", f"Slow probe service {index}.")

        def probe(state, args, _index=index):
            return f"probe-{_index}"

        agent.action(
            "probe", "Answer after a fixed delay.", {"tag": p_string(required=False)},
            latency_ms=latency_ms,
        )(probe)
        container = builder.build(latency_enabled=True)
        platform.register(container.descriptor(), container, client.token)
    return platform, client


def wide_platform(actions_total: int, per_agent: int = 10) -> tuple[RuntimePlatform, LocalPlatformClient]:
    """Platform with many trivial actions, for tool-limit scenarios."""
    platform = RuntimePlatform(users=USERS)
    client = LocalPlatformClient(platform, "admin", "s3cret")
    builder = ContainerBuilder("wide")
    builder.seed({})
    remaining, index = actions_total, 0
    while remaining > 0:
        agent = builder.agent(f"bulk-{index}", f"Bulk agent {index}.")
        for j in range(min(per_agent, remaining)):
            agent.action(f"op_{index}_{j}", f"Bulk operation {index}/{j}.")(
                lambda state, args, _t=(index, j): list(_t)
            )
        remaining -= min(per_agent, remaining)
        index += 1
    container = builder.build()
    platform.register(container.descriptor(), container, client.token)
    return platform, client


def agents_platform(k: int) -> tuple[RuntimePlatform, LocalPlatformClient]:
    """Platform with exactly k single-action agents."""
    platform = RuntimePlatform(users=USERS)
    client = LocalPlatformClient(platform, "admin", "s3cret")
    builder = ContainerBuilder("flat")
    builder.seed({"hits": 0})
    for index in range(k):
        agent = builder.agent(f"unit-{index}", f"Unit agent number {index}.")

        def touch(state, args):
            state["hits"] += 1
            return state["hits"]

        agent.action("touch", "Bump the shared counter.")(touch)
    container = builder.build()
    platform.register(container.descriptor(), container, client.token)
    return platform, client


# -- scripted reply shorthand ------------------------------------------------------

def say(content: str, module: str | None = None, prompt_tokens: int = 10, completion_tokens: int = 5,
        elapsed_ms: float = 0.0, contains: list[str] | None = None) -> ScriptedReply:
    match = None
    if module or contains:
        match = ReplyMatcher(module=module, contains=contains or [])
    return ScriptedReply(
        match=match, content=content,
        prompt_tokens=prompt_tokens, completion_tokens=completion_tokens, elapsed_ms=elapsed_ms,
    )


def calls(*specs: tuple[str, dict], module: str | None = None, content: str | None = None,
          prompt_tokens: int = 12, completion_tokens: int = 6) -> ScriptedReply:
    match = ReplyMatcher(module=module) if module else None
    return ScriptedReply(
        match=match,
        content=content,
        tool_calls=[ScriptedToolCall(tool_name=name, arguments=args) for name, args in specs],
        prompt_tokens=prompt_tokens,
        completion_tokens=completion_tokens,
    )


def embedded(tool_name: str, arguments: dict, prompt_tokens: int = 12, completion_tokens: int = 6) -> ScriptedReply:
    body = json.dumps({"name": tool_name, "parameters": arguments})
    return ScriptedReply(content=body, prompt_tokens=prompt_tokens, completion_tokens=completion_tokens)
