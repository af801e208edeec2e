"""Descriptors for containers, agents, actions, and their LLM-facing tool form."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, model_validator

from .schema import ParameterSchema


class ActionDescriptor(BaseModel):
    """One callable action exposed by an agent."""

    model_config = {"frozen": True}

    name: str
    description: str = ""
    parameters: dict[str, ParameterSchema] = {}
    result_kind: Optional[ParameterSchema] = None


class AgentDescriptor(BaseModel):
    model_config = {"frozen": True}

    agent_id: str
    description: str = ""
    actions: list[ActionDescriptor] = []

    @model_validator(mode="after")
    def _unique_action_names(self) -> "AgentDescriptor":
        names = [a.name for a in self.actions]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate action names on agent {self.agent_id}")
        return self


class ContainerDescriptor(BaseModel):
    model_config = {"frozen": True}

    container_id: str
    agents: list[AgentDescriptor] = []
    requires_login: bool = False

    @model_validator(mode="after")
    def _unique_agent_ids(self) -> "ContainerDescriptor":
        ids = [a.agent_id for a in self.agents]
        if len(ids) != len(set(ids)):
            raise ValueError(f"duplicate agent ids in container {self.container_id}")
        return self


class ToolDescriptor(BaseModel):
    """An action as presented to the LLM: name, description, object schema."""

    model_config = {"frozen": True}

    tool_name: str
    description: str = ""
    parameter_schema: ParameterSchema

    def to_openai(self) -> dict[str, Any]:
        """The de-facto chat-completion "function tool" layout."""
        return {
            "type": "function",
            "function": {
                "name": self.tool_name,
                "description": self.description,
                "parameters": self.parameter_schema.to_json_schema(),
            },
        }


class ToolCall(BaseModel):
    """A concrete invocation request produced by a model."""

    model_config = {"frozen": True}

    call_id: str
    tool_name: str
    arguments: dict[str, Any] = {}
