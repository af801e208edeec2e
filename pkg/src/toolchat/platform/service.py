"""HTTP surface of the runtime platform.

Routes and field names are documented in docs/protocol.md and kept stable;
every route except POST /login requires a bearer token.
"""

from __future__ import annotations

from typing import Any

import httpx
from fastapi import Depends, FastAPI, Header, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..actions import ContainerDescriptor
from .core import (
    ActionError,
    AuthError,
    ContainerAuthFailed,
    ContainerNotFound,
    DuplicateContainer,
    InvalidCredentials,
    InvocationResult,
    RuntimePlatform,
)


class LoginRequest(BaseModel):
    username: str
    password: str


class LoginResponse(BaseModel):
    token: str
    expiry: float


class ContainerLoginRequest(BaseModel):
    credentials: dict[str, Any] = {}


class InvokeRequest(BaseModel):
    arguments: dict[str, Any] = {}


class RegisterRequest(BaseModel):
    descriptor: ContainerDescriptor
    # remote containers give the base URL the platform should call back on
    base_url: str | None = None


class Ack(BaseModel):
    ok: bool = True


class RemoteContainerHandler:
    """Proxies invocations to a container served elsewhere over HTTP."""

    def __init__(self, base_url: str, client: httpx.Client | None = None, timeout: float = 30.0):
        self.base_url = base_url.rstrip("/")
        self._client = client or httpx.Client(timeout=timeout)

    def invoke(self, agent_id: str, action_name: str, arguments: dict[str, Any]) -> Any:
        response = self._client.post(
            f"{self.base_url}/invoke/{agent_id}/{action_name}", json={"arguments": arguments}
        )
        body = response.json()
        if response.status_code != 200:
            raise ActionError(body.get("error", f"remote container error {response.status_code}"))
        return body.get("result")

    def authenticate(self, credentials: dict[str, Any]) -> bool:
        response = self._client.post(f"{self.base_url}/login", json={"credentials": credentials})
        return response.status_code == 200

    def reset(self) -> None:
        self._client.post(f"{self.base_url}/reset")


def create_container_app(handler, descriptor: ContainerDescriptor | None = None) -> FastAPI:
    """Serve one container over HTTP, mirroring RemoteContainerHandler's calls."""
    app = FastAPI(title="agent container", version="1")

    @app.get("/descriptor")
    def get_descriptor():
        if descriptor is None:
            raise HTTPException(status_code=404, detail="descriptor not published")
        return descriptor.model_dump(mode="json")

    @app.post("/invoke/{agent_id}/{action_name}")
    def invoke(agent_id: str, action_name: str, body: InvokeRequest):
        try:
            result = handler.invoke(agent_id, action_name, body.arguments)
        except ActionError as err:
            return JSONResponse({"error": str(err)}, status_code=400)
        return {"result": result}

    @app.post("/login")
    def login(body: ContainerLoginRequest):
        if handler.authenticate(body.credentials):
            return {"ok": True}
        raise HTTPException(status_code=403, detail="container rejected the credentials")

    @app.post("/reset")
    def reset():
        handler.reset()
        return {"ok": True}

    return app


def create_platform_app(platform: RuntimePlatform) -> FastAPI:
    app = FastAPI(title="action platform", version="1")
    app.state.platform = platform

    def bearer(authorization: str | None = Header(default=None)) -> str:
        if not authorization or not authorization.startswith("Bearer "):
            raise HTTPException(status_code=401, detail="missing bearer token")
        return authorization.removeprefix("Bearer ")

    @app.exception_handler(AuthError)
    async def _auth_error(_, err):
        return JSONResponse({"detail": str(err)}, status_code=401)

    @app.post("/login", response_model=LoginResponse)
    def login(body: LoginRequest):
        try:
            token = platform.login(body.username, body.password)
        except InvalidCredentials as err:
            raise HTTPException(status_code=401, detail=str(err))
        return LoginResponse(token=token.token, expiry=token.expiry)

    @app.post("/containers/{container_id}/login", response_model=Ack)
    def container_login(container_id: str, body: ContainerLoginRequest, token: str = Depends(bearer)):
        try:
            platform.container_login(token, container_id, body.credentials)
        except ContainerNotFound as err:
            raise HTTPException(status_code=404, detail=str(err))
        except ContainerAuthFailed as err:
            raise HTTPException(status_code=403, detail=str(err))
        return Ack()

    @app.get("/agents")
    def get_agents(token: str = Depends(bearer)):
        agents = platform.get_agents(token)
        return {"agents": [a.model_dump(mode="json") for a in agents]}

    @app.post("/invoke/{agent_id}/{action_name}", response_model=InvocationResult)
    def invoke(agent_id: str, action_name: str, body: InvokeRequest, token: str = Depends(bearer)):
        return platform.invoke_action(token, agent_id, action_name, body.arguments)

    @app.post("/containers", response_model=Ack)
    def register(body: RegisterRequest, token: str = Depends(bearer)):
        if body.base_url is None:
            raise HTTPException(
                status_code=422, detail="HTTP registration needs base_url for callbacks"
            )
        handler = RemoteContainerHandler(body.base_url)
        try:
            platform.register(body.descriptor, handler, token)
        except DuplicateContainer as err:
            raise HTTPException(status_code=409, detail=str(err))
        return Ack()

    @app.delete("/containers/{container_id}", response_model=Ack)
    def deregister(container_id: str, token: str = Depends(bearer)):
        try:
            platform.deregister(container_id, token)
        except ContainerNotFound as err:
            raise HTTPException(status_code=404, detail=str(err))
        return Ack()

    @app.post("/containers/{container_id}/reset", response_model=Ack)
    def reset(container_id: str, token: str = Depends(bearer)):
        try:
            platform.reset_container(container_id, token)
        except ContainerNotFound as err:
            raise HTTPException(status_code=404, detail=str(err))
        return Ack()

    return app
