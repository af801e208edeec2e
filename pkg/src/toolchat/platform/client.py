"""Platform access for strategies and the backend: one protocol, two transports."""

from __future__ import annotations

from typing import Any, Protocol

import httpx

from ..actions import AgentDescriptor
from .core import (
    AgentInfo,
    AuthError,
    ContainerAuthFailed,
    ContainerNotFound,
    InvalidCredentials,
    InvocationResult,
    RuntimePlatform,
)


class PlatformClient(Protocol):
    """Authenticated view onto one platform."""

    def get_agents(self) -> list[AgentInfo]: ...

    def invoke(self, agent_id: str, action_name: str, arguments: dict[str, Any]) -> InvocationResult: ...

    def container_login(self, container_id: str, credentials: dict[str, Any]) -> None: ...

    def reset_container(self, container_id: str) -> None: ...


class LocalPlatformClient:
    """Direct in-process access; used by tests and the bundled benchmark."""

    def __init__(self, platform: RuntimePlatform, username: str, password: str):
        self.platform = platform
        self._token = platform.login(username, password).token

    @property
    def token(self) -> str:
        return self._token

    def get_agents(self) -> list[AgentInfo]:
        return self.platform.get_agents(self._token)

    def invoke(self, agent_id: str, action_name: str, arguments: dict[str, Any]) -> InvocationResult:
        return self.platform.invoke_action(self._token, agent_id, action_name, arguments)

    def container_login(self, container_id: str, credentials: dict[str, Any]) -> None:
        self.platform.container_login(self._token, container_id, credentials)

    def reset_container(self, container_id: str) -> None:
        self.platform.reset_container(container_id, self._token)


class HttpPlatformClient:
    """Speaks the platform HTTP routes; one instance per (platform, user)."""

    def __init__(
        self,
        base_url: str,
        username: str,
        password: str,
        client: httpx.Client | None = None,
        timeout: float = 60.0,
    ):
        self.base_url = base_url.rstrip("/")
        self._client = client or httpx.Client(timeout=timeout)
        self._token = self._login(username, password)

    def _login(self, username: str, password: str) -> str:
        response = self._client.post(
            f"{self.base_url}/login", json={"username": username, "password": password}
        )
        if response.status_code == 401:
            raise InvalidCredentials(response.json().get("detail", "login rejected"))
        response.raise_for_status()
        return response.json()["token"]

    def _headers(self) -> dict[str, str]:
        return {"Authorization": f"Bearer {self._token}"}

    def _raise_for(self, response: httpx.Response) -> None:
        if response.status_code == 401:
            raise AuthError(response.json().get("detail", "unauthorized"))
        if response.status_code == 404:
            raise ContainerNotFound(response.json().get("detail", "not found"))
        if response.status_code == 403:
            raise ContainerAuthFailed(response.json().get("detail", "forbidden"))
        response.raise_for_status()

    def get_agents(self) -> list[AgentInfo]:
        response = self._client.get(f"{self.base_url}/agents", headers=self._headers())
        self._raise_for(response)
        return [
            AgentInfo(
                container_id=doc["container_id"],
                requires_login=doc["requires_login"],
                agent=AgentDescriptor.model_validate(doc["agent"]),
            )
            for doc in response.json()["agents"]
        ]

    def invoke(self, agent_id: str, action_name: str, arguments: dict[str, Any]) -> InvocationResult:
        response = self._client.post(
            f"{self.base_url}/invoke/{agent_id}/{action_name}",
            json={"arguments": arguments},
            headers=self._headers(),
        )
        self._raise_for(response)
        return InvocationResult.model_validate(response.json())

    def container_login(self, container_id: str, credentials: dict[str, Any]) -> None:
        response = self._client.post(
            f"{self.base_url}/containers/{container_id}/login",
            json={"credentials": credentials},
            headers=self._headers(),
        )
        self._raise_for(response)

    def reset_container(self, container_id: str) -> None:
        response = self._client.post(
            f"{self.base_url}/containers/{container_id}/reset", headers=self._headers()
        )
        self._raise_for(response)
