"""In-process action platform: container registry, auth, unified invocation."""

from __future__ import annotations

import secrets
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from enum import Enum
from typing import Any, Callable, Optional, Protocol

from pydantic import BaseModel

from ..actions import (
    ActionDescriptor,
    AgentDescriptor,
    ContainerDescriptor,
    ValidationFailure,
    object_schema,
    validate_and_cast,
)
from ..actions.schema import cast_value

DEFAULT_TOKEN_TTL_S = 24 * 3600.0
DEFAULT_ACTION_TIMEOUT_S = 30.0


class AuthError(Exception):
    """Missing, unknown, or expired platform token."""


class ActionError(Exception):
    """Raised by container handlers for domain-level failures."""


class InvalidCredentials(Exception):
    pass


class ContainerNotFound(Exception):
    pass


class ContainerAuthFailed(Exception):
    pass


class DuplicateContainer(Exception):
    pass


class PlatformToken(BaseModel):
    model_config = {"frozen": True}

    token: str
    issued_to: str
    expiry: float  # epoch seconds


class InvocationStatus(str, Enum):
    OK = "ok"
    ACTION_ERROR = "action_error"
    NOT_FOUND = "not_found"
    AUTH_REQUIRED = "auth_required"


class InvocationResult(BaseModel):
    model_config = {"frozen": True}

    status: InvocationStatus
    payload: Any = None
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == InvocationStatus.OK


class ContainerHandler(Protocol):
    """Invocation target for one container (in-process or remote proxy)."""

    def invoke(self, agent_id: str, action_name: str, arguments: dict[str, Any]) -> Any: ...

    def authenticate(self, credentials: dict[str, Any]) -> bool: ...

    def reset(self) -> None: ...


class ContainerRegistration(BaseModel):
    model_config = {"frozen": True, "arbitrary_types_allowed": True}

    descriptor: ContainerDescriptor
    handler: Any  # ContainerHandler


class AgentInfo(BaseModel):
    """One deployed agent plus where it lives."""

    model_config = {"frozen": True}

    container_id: str
    requires_login: bool
    agent: AgentDescriptor


class InvocationLogEntry(BaseModel):
    model_config = {"frozen": True}

    tool_name: str
    arguments: dict[str, Any]
    status: InvocationStatus
    elapsed_ms: float


class RuntimePlatform:
    """Registry and router for agent containers behind token auth.

    Registration and lookup are guarded by one lock (readers see a snapshot);
    handler execution happens outside it so containers can serialize their
    own state independently.
    """

    def __init__(
        self,
        users: dict[str, str] | None = None,
        token_ttl_s: float = DEFAULT_TOKEN_TTL_S,
        action_timeout_s: float = DEFAULT_ACTION_TIMEOUT_S,
        clock: Callable[[], float] = time.time,
    ):
        self._users = dict(users or {})
        self.token_ttl_s = token_ttl_s
        self.action_timeout_s = action_timeout_s
        self._clock = clock
        self._lock = threading.RLock()
        self._registrations: dict[str, ContainerRegistration] = {}
        self._tokens: dict[str, PlatformToken] = {}
        # user -> container_id -> stored credentials (used for auto re-auth)
        self._container_credentials: dict[str, dict[str, dict[str, Any]]] = {}
        self.invocation_log: list[InvocationLogEntry] = []
        self._executor = ThreadPoolExecutor(max_workers=32, thread_name_prefix="action")

    # -- auth ---------------------------------------------------------------

    def login(self, username: str, password: str) -> PlatformToken:
        if self._users.get(username) != password:
            raise InvalidCredentials(f"unknown user or wrong password for {username!r}")
        token = PlatformToken(
            token=secrets.token_urlsafe(24),
            issued_to=username,
            expiry=self._clock() + self.token_ttl_s,
        )
        with self._lock:
            self._tokens[token.token] = token
        return token

    def _authenticate(self, token: str) -> str:
        with self._lock:
            record = self._tokens.get(token)
        if record is None:
            raise AuthError("unknown token")
        if record.expiry <= self._clock():
            raise AuthError("token expired")
        return record.issued_to

    def container_login(self, token: str, container_id: str, credentials: dict[str, Any]) -> None:
        """Authenticate against one container and remember the credentials.

        Subsequent invocations by the same user reuse them, so no re-auth is
        needed per request. A no-op for containers without login.
        """
        username = self._authenticate(token)
        registration = self._registration(container_id)
        if not registration.descriptor.requires_login:
            return
        if not registration.handler.authenticate(credentials):
            raise ContainerAuthFailed(f"container {container_id!r} rejected the credentials")
        with self._lock:
            self._container_credentials.setdefault(username, {})[container_id] = dict(credentials)

    # -- registry -----------------------------------------------------------

    def register(self, descriptor: ContainerDescriptor, handler: ContainerHandler, token: str) -> None:
        self._authenticate(token)
        with self._lock:
            if descriptor.container_id in self._registrations:
                raise DuplicateContainer(descriptor.container_id)
            existing_agents = {
                agent.agent_id
                for reg in self._registrations.values()
                for agent in reg.descriptor.agents
            }
            clashes = existing_agents & {a.agent_id for a in descriptor.agents}
            if clashes:
                # invocation routes by agent id alone, so ids must stay unique
                raise DuplicateContainer(f"agent ids already deployed: {sorted(clashes)}")
            self._registrations[descriptor.container_id] = ContainerRegistration(
                descriptor=descriptor, handler=handler
            )

    def deregister(self, container_id: str, token: str) -> None:
        self._authenticate(token)
        with self._lock:
            if container_id not in self._registrations:
                raise ContainerNotFound(container_id)
            del self._registrations[container_id]

    def _registration(self, container_id: str) -> ContainerRegistration:
        with self._lock:
            registration = self._registrations.get(container_id)
        if registration is None:
            raise ContainerNotFound(container_id)
        return registration

    def containers(self, token: str) -> list[ContainerDescriptor]:
        self._authenticate(token)
        with self._lock:
            return [r.descriptor for r in self._registrations.values()]

    def get_agents(self, token: str) -> list[AgentInfo]:
        """Live self-description of every deployed agent, registration order."""
        self._authenticate(token)
        with self._lock:
            registrations = list(self._registrations.values())
        return [
            AgentInfo(
                container_id=reg.descriptor.container_id,
                requires_login=reg.descriptor.requires_login,
                agent=agent,
            )
            for reg in registrations
            for agent in reg.descriptor.agents
        ]

    def reset_container(self, container_id: str, token: str) -> None:
        self._authenticate(token)
        self._registration(container_id).handler.reset()

    # -- invocation ----------------------------------------------------------

    def _find_action(
        self, agent_id: str, action_name: str
    ) -> Optional[tuple[ContainerRegistration, AgentDescriptor, ActionDescriptor]]:
        with self._lock:
            registrations = list(self._registrations.values())
        for registration in registrations:
            for agent in registration.descriptor.agents:
                if agent.agent_id != agent_id:
                    continue
                for action in agent.actions:
                    if action.name == action_name:
                        return registration, agent, action
        return None

    def invoke_action(
        self, token: str, agent_id: str, action_name: str, arguments: dict[str, Any]
    ) -> InvocationResult:
        username = self._authenticate(token)
        started = time.perf_counter()

        def finish(status: InvocationStatus, payload: Any) -> InvocationResult:
            elapsed_ms = (time.perf_counter() - started) * 1000.0
            result = InvocationResult(status=status, payload=payload, elapsed_ms=elapsed_ms)
            entry = InvocationLogEntry(
                tool_name=f"{agent_id}--{action_name}",
                arguments=arguments if isinstance(arguments, dict) else {},
                status=status,
                elapsed_ms=elapsed_ms,
            )
            with self._lock:
                self.invocation_log.append(entry)
            return result

        found = self._find_action(agent_id, action_name)
        if found is None:
            return finish(InvocationStatus.NOT_FOUND, f"no action {action_name!r} on agent {agent_id!r}")
        registration, _, action = found

        if registration.descriptor.requires_login:
            with self._lock:
                credentials = self._container_credentials.get(username, {}).get(
                    registration.descriptor.container_id
                )
            if credentials is None:
                return finish(
                    InvocationStatus.AUTH_REQUIRED,
                    f"container {registration.descriptor.container_id!r} requires a login",
                )

        try:
            cast_arguments = validate_and_cast(arguments, object_schema(dict(action.parameters)))
        except ValidationFailure as failure:
            return finish(InvocationStatus.ACTION_ERROR, failure.message)

        future = self._executor.submit(
            registration.handler.invoke, agent_id, action_name, cast_arguments
        )
        try:
            payload = future.result(timeout=self.action_timeout_s)
        except FutureTimeout:
            future.cancel()
            return finish(
                InvocationStatus.ACTION_ERROR,
                f"action timed out after {self.action_timeout_s:.0f}s",
            )
        except ActionError as err:
            return finish(InvocationStatus.ACTION_ERROR, str(err))
        except Exception as err:  # handler bug: surfaced, never propagated
            return finish(InvocationStatus.ACTION_ERROR, f"{type(err).__name__}: {err}")

        if action.result_kind is not None:
            try:
                payload = cast_value(payload, action.result_kind, "<result>")
            except ValidationFailure as failure:
                return finish(
                    InvocationStatus.ACTION_ERROR, f"malformed action result: {failure.message}"
                )
        return finish(InvocationStatus.OK, payload)
