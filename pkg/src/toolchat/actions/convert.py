"""Turning platform actions into the flat tool list an LLM receives."""

from __future__ import annotations

from .model import ActionDescriptor, AgentDescriptor, ContainerDescriptor, ToolDescriptor
from .schema import object_schema

TOOL_NAME_SEPARATOR = "--"

# Ceiling observed on mainstream hosted models; overridable per method config.
DEFAULT_TOOL_LIMIT = 128


def tool_name_for(agent_id: str, action_name: str) -> str:
    return f"{agent_id}{TOOL_NAME_SEPARATOR}{action_name}"


def split_tool_name(tool_name: str) -> tuple[str, str]:
    """Inverse of :func:`tool_name_for`; raises ValueError on foreign names."""
    agent_id, sep, action = tool_name.partition(TOOL_NAME_SEPARATOR)
    if not sep or not agent_id or not action:
        raise ValueError(f"not a qualified tool name: {tool_name!r}")
    return agent_id, action


def convert_action_to_tool(agent_id: str, action: ActionDescriptor) -> ToolDescriptor:
    """Map one action to its tool form.

    The tool name is ``<agent_id>--<action_name>`` so tools stay unique and
    reversible across the whole platform; the parameter map becomes a single
    object schema with one property per parameter.
    """
    return ToolDescriptor(
        tool_name=tool_name_for(agent_id, action.name),
        description=action.description,
        parameter_schema=object_schema(dict(action.parameters)),
    )


def tools_for_agents(agents: list[AgentDescriptor], limit: int = DEFAULT_TOOL_LIMIT) -> list[ToolDescriptor]:
    """Tool list in agent/action declaration order, truncated at ``limit``."""
    if limit < 1:
        raise ValueError("tool limit must be >= 1")
    tools: list[ToolDescriptor] = []
    for agent in agents:
        for action in agent.actions:
            tools.append(convert_action_to_tool(agent.agent_id, action))
            if len(tools) == limit:
                return tools
    return tools


def build_tool_list(containers: list[ContainerDescriptor], limit: int = DEFAULT_TOOL_LIMIT) -> list[ToolDescriptor]:
    """Deterministic container -> agent -> action order, cut off at ``limit``."""
    agents: list[AgentDescriptor] = []
    for container in containers:
        agents.extend(container.agents)
    return tools_for_agents(agents, limit)
