"""Uniform completion front door: profile routing, retries, accounting."""

from __future__ import annotations

import time
from typing import Callable, Optional, Protocol

from .http_client import HttpChatClient
from .messages import (
    ChatRequest,
    ChatResponse,
    EndpointKind,
    EndpointProfile,
    MalformedResponse,
    TransportError,
)
from .stub import ScriptedChatClient, StubScript


class ChatClient(Protocol):
    def complete(
        self,
        request: ChatRequest,
        module: str = "",
        on_delta: Optional[Callable[[str], None]] = None,
    ) -> ChatResponse: ...


class CallRecorder(Protocol):
    def record_llm_call(self, module: str, request: ChatRequest, response: ChatResponse) -> None: ...


class UnknownProfile(Exception):
    pass


class LlmGateway:
    """Resolves endpoint profiles to clients and records every completion.

    Transport failures are retried (twice, exponential backoff) and recorded
    once, on success. Guided-choice requests against endpoints without
    native support are validated post-hoc with a single retry.
    """

    def __init__(
        self,
        profiles: dict[str, EndpointProfile],
        clients: dict[str, ChatClient] | None = None,
        retries: int = 2,
        backoff_s: float = 0.2,
    ):
        self.profiles = dict(profiles)
        self._clients: dict[str, ChatClient] = dict(clients or {})
        self.retries = retries
        self.backoff_s = backoff_s

    @classmethod
    def build(
        cls,
        profiles: dict[str, EndpointProfile],
        scripts: dict[str, StubScript] | None = None,
    ) -> "LlmGateway":
        """Construct clients for every profile; scripted ones take their
        script from ``scripts`` (keyed by profile name) or ``script_path``."""
        scripts = scripts or {}
        clients: dict[str, ChatClient] = {}
        for name, profile in profiles.items():
            if profile.kind == EndpointKind.SCRIPTED:
                script = scripts.get(name)
                if script is None and profile.script_path:
                    script = StubScript.load(profile.script_path)
                if script is None:
                    raise ValueError(f"scripted profile {name!r} has no script")
                clients[name] = ScriptedChatClient(script)
            else:
                clients[name] = HttpChatClient(profile)
        return cls(profiles, clients)

    def client_for(self, profile_name: str) -> ChatClient:
        try:
            return self._clients[profile_name]
        except KeyError:
            raise UnknownProfile(profile_name) from None

    def profile_for(self, profile_name: str) -> EndpointProfile:
        try:
            return self.profiles[profile_name]
        except KeyError:
            raise UnknownProfile(profile_name) from None

    def complete(
        self,
        profile_name: str,
        request: ChatRequest,
        module: str = "",
        recorder: CallRecorder | None = None,
        on_delta: Optional[Callable[[str], None]] = None,
    ) -> ChatResponse:
        client = self.client_for(profile_name)
        response = self._complete_with_retries(client, request, module, on_delta)
        if request.guided_choice and response.content not in request.guided_choice:
            # one emulation retry for endpoints lacking native guided choice
            response = self._complete_with_retries(client, request, module, on_delta)
            if response.content not in request.guided_choice:
                raise MalformedResponse(
                    f"{module or profile_name}: {response.content!r} outside "
                    f"guided choice {request.guided_choice}"
                )
        if recorder is not None:
            recorder.record_llm_call(module, request, response)
        return response

    def _complete_with_retries(self, client, request, module, on_delta) -> ChatResponse:
        attempt = 0
        while True:
            started = time.perf_counter()
            try:
                response = client.complete(request, module=module, on_delta=on_delta)
            except TransportError:
                if attempt >= self.retries:
                    raise
                time.sleep(self.backoff_s * (2**attempt))
                attempt += 1
                continue
            if response.elapsed_ms == 0.0:
                # backends that do not self-report get wall-clock attribution
                measured = (time.perf_counter() - started) * 1000.0
                response = response.model_copy(update={"elapsed_ms": measured})
            return response
