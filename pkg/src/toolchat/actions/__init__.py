"""Canonical data model for agents, actions, parameters, and LLM tools."""

from .convert import (
    DEFAULT_TOOL_LIMIT,
    build_tool_list,
    convert_action_to_tool,
    split_tool_name,
    tool_name_for,
    tools_for_agents,
)
from .model import (
    ActionDescriptor,
    AgentDescriptor,
    ContainerDescriptor,
    ToolCall,
    ToolDescriptor,
)
from .schema import (
    MissingRequiredParameter,
    ParameterKind,
    ParameterSchema,
    UncastableValue,
    UnknownParameter,
    ValidationFailure,
    conforms,
    object_schema,
    validate_and_cast,
)

__all__ = [
    "ActionDescriptor",
    "AgentDescriptor",
    "ContainerDescriptor",
    "DEFAULT_TOOL_LIMIT",
    "MissingRequiredParameter",
    "ParameterKind",
    "ParameterSchema",
    "ToolCall",
    "ToolDescriptor",
    "UncastableValue",
    "UnknownParameter",
    "ValidationFailure",
    "build_tool_list",
    "conforms",
    "convert_action_to_tool",
    "object_schema",
    "split_tool_name",
    "tool_name_for",
    "tools_for_agents",
    "validate_and_cast",
]
