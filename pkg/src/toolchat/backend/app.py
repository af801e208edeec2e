"""User-facing HTTP/websocket gateway in front of the prompting methods.

Request/config routes are plain HTTP; intermediate steps stream over the
session's websocket as ordered StreamEvent frames (documented in
docs/protocol.md).
"""

from __future__ import annotations

import asyncio
from typing import Any

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from ..events import EventKind, StreamEvent
from ..llm import LlmGateway
from ..platform import (
    ContainerAuthFailed,
    ContainerNotFound,
    HttpPlatformClient,
    InvalidCredentials,
    LocalPlatformClient,
    RuntimePlatform,
)
from ..strategies import (
    METHOD_MODULES,
    Method,
    MethodConfig,
    MissingEndpointProfile,
    run_method,
)
from .sessions import NotConnected, Session, SessionStore


class SessionCreated(BaseModel):
    session_id: str


class ConnectRequest(BaseModel):
    platform_url: str
    username: str
    password: str


class ConfigureRequest(BaseModel):
    method: str
    endpoint_profiles: dict[str, str] | None = None
    max_iterations: int | None = None
    tool_limit: int | None = None
    trio_max_rounds: int | None = None
    orchestration_max_reiterations: int | None = None


class QueryRequest(BaseModel):
    message: str
    attachments: list[Any] | None = None


class QueryResponse(BaseModel):
    answer: str
    request_id: str
    iterations: int
    llm_calls: int
    prompt_tokens: int
    completion_tokens: int
    total_elapsed_ms: float
    per_module: dict[str, dict[str, float]]


class ContainerLoginRequest(BaseModel):
    credentials: dict[str, Any] = {}


class Ack(BaseModel):
    ok: bool = True


def create_backend_app(
    gateway: LlmGateway,
    local_platforms: dict[str, RuntimePlatform] | None = None,
) -> FastAPI:
    """Build the backend service around one configured LLM gateway.

    ``local_platforms`` maps names onto in-process platforms reachable via
    ``local:<name>`` connection URLs (used by the bundled demo and tests);
    any other URL is treated as a remote platform's HTTP base URL.
    """
    app = FastAPI(title="toolchat backend", version="1")
    # the browser client may be served from another origin (dev server)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = SessionStore()
    app.state.sessions = store
    locals_by_name = dict(local_platforms or {})

    def session_or_404(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        return session

    @app.post("/sessions", response_model=SessionCreated)
    def create_session():
        return SessionCreated(session_id=store.create().session_id)

    @app.post("/sessions/{session_id}/connect", response_model=Ack)
    def connect(session_id: str, body: ConnectRequest):
        session = session_or_404(session_id)
        try:
            if body.platform_url.startswith("local:"):
                name = body.platform_url.removeprefix("local:")
                platform = locals_by_name.get(name)
                if platform is None:
                    raise HTTPException(status_code=502, detail=f"no local platform {name!r}")
                client = LocalPlatformClient(platform, body.username, body.password)
            else:
                client = HttpPlatformClient(body.platform_url, body.username, body.password)
            client.get_agents()  # connection must yield a live tool list
        except InvalidCredentials as err:
            raise HTTPException(status_code=401, detail=str(err))
        except HTTPException:
            raise
        except Exception as err:
            raise HTTPException(status_code=502, detail=f"platform unreachable: {err}")
        session.platform = client
        session.platform_url = body.platform_url
        return Ack()

    @app.post("/sessions/{session_id}/configure", response_model=Ack)
    def configure(session_id: str, body: ConfigureRequest):
        session = session_or_404(session_id)
        try:
            method = Method(body.method)
        except ValueError:
            raise HTTPException(status_code=422, detail=f"unknown method {body.method!r}")
        fields: dict[str, Any] = {"method": method}
        if body.endpoint_profiles is not None:
            fields["endpoint_profiles"] = body.endpoint_profiles
        else:
            fields["endpoint_profiles"] = dict(session.method_config.endpoint_profiles)
        for knob in ("max_iterations", "tool_limit", "trio_max_rounds", "orchestration_max_reiterations"):
            value = getattr(body, knob)
            if value is not None:
                fields[knob] = value
        config = MethodConfig(**fields)
        try:
            config.validate_profiles()
            for module in METHOD_MODULES[method]:
                gateway.profile_for(config.profile_for(module))
        except MissingEndpointProfile as err:
            raise HTTPException(status_code=422, detail=str(err))
        except Exception as err:
            raise HTTPException(status_code=422, detail=f"unknown endpoint profile: {err}")
        session.method_config = config
        return Ack()

    @app.post("/sessions/{session_id}/query", response_model=QueryResponse)
    def query(session_id: str, body: QueryRequest):
        session = session_or_404(session_id)
        if body.attachments:
            raise HTTPException(status_code=400, detail="attachments are not supported")
        try:
            platform = session.require_platform()
        except NotConnected as err:
            session.emit(StreamEvent(kind=EventKind.ERROR, payload=str(err)))
            raise HTTPException(status_code=400, detail=str(err))

        with session.query_lock:  # a second query on this session queues here
            history = list(session.chat_history)
            try:
                record = run_method(
                    gateway,
                    platform,
                    session.method_config,
                    body.message,
                    history=history,
                    emit=session.emit,
                )
            except Exception as err:
                session.emit(
                    StreamEvent(kind=EventKind.ERROR, payload=f"{type(err).__name__}: {err}")
                )
                raise HTTPException(status_code=500, detail=f"strategy failed: {err}")
            session.append_turn(body.message, record.final_answer)
            summary = QueryResponse(
                answer=record.final_answer,
                request_id=record.request_id,
                iterations=record.iterations,
                llm_calls=record.llm_calls,
                prompt_tokens=record.total_prompt_tokens,
                completion_tokens=record.total_completion_tokens,
                total_elapsed_ms=record.total_elapsed_ms,
                per_module={
                    module: {
                        "calls": stats.calls,
                        "prompt_tokens": stats.prompt_tokens,
                        "completion_tokens": stats.completion_tokens,
                        "elapsed_ms": stats.elapsed_ms,
                    }
                    for module, stats in record.per_module.items()
                },
            )
            session.emit(
                StreamEvent(kind=EventKind.FINAL, payload=summary.model_dump(mode="json"))
            )
            return summary

    @app.get("/sessions/{session_id}/actions")
    def get_actions(session_id: str):
        session = session_or_404(session_id)
        try:
            agents = session.require_platform().get_agents()
        except NotConnected as err:
            raise HTTPException(status_code=400, detail=str(err))
        return {"agents": [a.model_dump(mode="json") for a in agents]}

    @app.post("/sessions/{session_id}/containers/{container_id}/login", response_model=Ack)
    def container_login(session_id: str, container_id: str, body: ContainerLoginRequest):
        session = session_or_404(session_id)
        try:
            session.require_platform().container_login(container_id, body.credentials)
        except NotConnected as err:
            raise HTTPException(status_code=400, detail=str(err))
        except ContainerNotFound as err:
            raise HTTPException(status_code=404, detail=str(err))
        except ContainerAuthFailed as err:
            raise HTTPException(status_code=403, detail=str(err))
        session.container_credentials[container_id] = dict(body.credentials)
        return Ack()

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        session = store.get(session_id)
        if session is None:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        subscriber = session.subscribe()
        # wait on the event queue and the socket at once, so disconnects
        # are noticed even while no events flow
        receive_task = asyncio.create_task(websocket.receive())
        event_task = asyncio.create_task(run_in_threadpool(subscriber.get))
        try:
            while True:
                done, _ = await asyncio.wait(
                    {receive_task, event_task}, return_when=asyncio.FIRST_COMPLETED
                )
                if receive_task in done:
                    try:
                        message = receive_task.result()
                    except WebSocketDisconnect:
                        break
                    if message["type"] == "websocket.disconnect":
                        break
                    receive_task = asyncio.create_task(websocket.receive())
                    continue
                event = event_task.result()
                if event is None:
                    break
                await websocket.send_json(event.model_dump(mode="json"))
                event_task = asyncio.create_task(run_in_threadpool(subscriber.get))
        finally:
            session.unsubscribe(subscriber)  # the sentinel also frees a blocked getter
            for task in (receive_task, event_task):
                task.cancel()

    return app
