"""Simulated service containers: in-process state machines behind the
platform's container-handler interface."""

from __future__ import annotations

import copy
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from ..actions import (
    ActionDescriptor,
    AgentDescriptor,
    ContainerDescriptor,
    ParameterSchema,
)
from ..platform import ActionError


class NoMatch(ActionError):
    def __init__(self, what: str, fragment: str):
        super().__init__(f"no {what} matching {fragment!r}")


class AmbiguousMatch(ActionError):
    def __init__(self, what: str, fragment: str, hits: list[str]):
        super().__init__(f"fragment {fragment!r} matches several {what}: {', '.join(sorted(hits))}")


def lookup_by_fragment(entries: dict[str, str], fragment: str, what: str) -> str:
    """Resolve a case-insensitive name fragment to the single matching id."""
    needle = fragment.lower()
    hits = [key for key, name in entries.items() if needle in name.lower()]
    if not hits:
        raise NoMatch(what, fragment)
    if len(hits) > 1:
        raise AmbiguousMatch(what, fragment, hits)
    return hits[0]


Handler = Callable[[dict[str, Any], dict[str, Any]], Any]


@dataclass
class SimAction:
    descriptor: ActionDescriptor
    handler: Handler
    latency_ms: float = 0.0


@dataclass
class SimAgent:
    agent_id: str
    description: str
    actions: list[SimAction] = field(default_factory=list)

    def descriptor(self) -> AgentDescriptor:
        return AgentDescriptor(
            agent_id=self.agent_id,
            description=self.description,
            actions=[a.descriptor for a in self.actions],
        )


class SimContainer:
    """One container: agents, handlers, and a single serialized state domain.

    Concurrent invocations on the same container apply in arrival order;
    different containers never contend.
    """

    def __init__(
        self,
        container_id: str,
        agents: list[SimAgent],
        seed_state: dict[str, Any],
        requires_login: bool = False,
        users: dict[str, str] | None = None,
        latency_enabled: bool = False,
    ):
        self.container_id = container_id
        self.agents = agents
        self.seed_state = copy.deepcopy(seed_state)
        self.requires_login = requires_login
        self.users = dict(users or {})
        self.latency_enabled = latency_enabled
        self.state: dict[str, Any] = copy.deepcopy(seed_state)
        self._lock = threading.Lock()
        self._index: dict[tuple[str, str], SimAction] = {
            (agent.agent_id, action.descriptor.name): action
            for agent in agents
            for action in agent.actions
        }

    def descriptor(self) -> ContainerDescriptor:
        return ContainerDescriptor(
            container_id=self.container_id,
            agents=[a.descriptor() for a in self.agents],
            requires_login=self.requires_login,
        )

    # ContainerHandler interface ------------------------------------------------

    def invoke(self, agent_id: str, action_name: str, arguments: dict[str, Any]) -> Any:
        action = self._index.get((agent_id, action_name))
        if action is None:
            raise ActionError(f"container {self.container_id} has no {agent_id}/{action_name}")
        with self._lock:
            if self.latency_enabled and action.latency_ms > 0:
                time.sleep(action.latency_ms / 1000.0)
            return action.handler(self.state, arguments)

    def authenticate(self, credentials: dict[str, Any]) -> bool:
        if not self.requires_login:
            return True
        username = credentials.get("username")
        return username is not None and self.users.get(username) == credentials.get("password")

    def reset(self) -> None:
        with self._lock:
            self.state = copy.deepcopy(self.seed_state)


class AgentBuilder:
    def __init__(self, agent: SimAgent):
        self._agent = agent

    def action(
        self,
        name: str,
        description: str,
        parameters: dict[str, ParameterSchema] | None = None,
        result: ParameterSchema | None = None,
        latency_ms: float = 0.0,
    ) -> Callable[[Handler], Handler]:
        def register(handler: Handler) -> Handler:
            descriptor = ActionDescriptor(
                name=name,
                description=description,
                parameters=parameters or {},
                result_kind=result,
            )
            self._agent.actions.append(SimAction(descriptor, handler, latency_ms))
            return handler

        return register


class ContainerBuilder:
    """Terse declaration of a container's agents, actions, and seed state."""

    def __init__(self, container_id: str, requires_login: bool = False, users: dict[str, str] | None = None):
        self.container_id = container_id
        self.requires_login = requires_login
        self.users = users
        self._agents: list[SimAgent] = []
        self._seed: dict[str, Any] = {}

    def agent(self, agent_id: str, description: str) -> AgentBuilder:
        agent = SimAgent(agent_id=agent_id, description=description)
        self._agents.append(agent)
        return AgentBuilder(agent)

    def seed(self, state: dict[str, Any]) -> None:
        self._seed = state

    def build(self, latency_enabled: bool = False) -> SimContainer:
        return SimContainer(
            self.container_id,
            self._agents,
            self._seed,
            requires_login=self.requires_login,
            users=self.users,
            latency_enabled=latency_enabled,
        )


# schema shorthand for action declarations ------------------------------------

def p_string(description: str | None = None, required: bool = True) -> ParameterSchema:
    return ParameterSchema(kind="string", description=description, required=required)


def p_integer(description: str | None = None, required: bool = True) -> ParameterSchema:
    return ParameterSchema(kind="integer", description=description, required=required)


def p_number(description: str | None = None, required: bool = True) -> ParameterSchema:
    return ParameterSchema(kind="number", description=description, required=required)


def p_boolean(description: str | None = None, required: bool = True) -> ParameterSchema:
    return ParameterSchema(kind="boolean", description=description, required=required)


def p_object(fields: dict[str, ParameterSchema], description: str | None = None, required: bool = True) -> ParameterSchema:
    return ParameterSchema(kind="object", fields=fields, description=description, required=required)


def p_array(item: ParameterSchema, description: str | None = None, required: bool = True) -> ParameterSchema:
    return ParameterSchema(kind="array", item_schema=item, description=description, required=required)
