"""HTTP chat client for any endpoint speaking the OpenAI completions dialect."""

from __future__ import annotations

import json
import os
from typing import Callable, Optional

import httpx

from .messages import (
    ChatRequest,
    ChatResponse,
    EndpointError,
    EndpointProfile,
    MalformedResponse,
    TransportError,
)
from .wire import StreamAccumulator, decode_completion, encode_request


class HttpChatClient:
    def __init__(self, profile: EndpointProfile, client: httpx.Client | None = None, timeout: float = 120.0):
        self.profile = profile
        self._client = client or httpx.Client(timeout=timeout)

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.profile.api_key_env:
            key = os.environ.get(self.profile.api_key_env, "")
            if key:
                headers["Authorization"] = f"Bearer {key}"
        return headers

    def _url(self) -> str:
        return self.profile.base_url.rstrip("/") + "/chat/completions"

    def complete(
        self,
        request: ChatRequest,
        module: str = "",
        on_delta: Optional[Callable[[str], None]] = None,
    ) -> ChatResponse:
        body = encode_request(request, stream=on_delta is not None)
        if request.guided_choice and self.profile.native_guided_choice:
            body["guided_choice"] = list(request.guided_choice)
        try:
            if on_delta is None:
                message, prompt, completion = self._post(body)
            else:
                message, prompt, completion = self._post_streaming(body, on_delta)
        except httpx.HTTPError as err:
            raise TransportError(str(err)) from err
        return ChatResponse(message=message, prompt_tokens=prompt, completion_tokens=completion)

    def _post(self, body: dict):
        response = self._client.post(self._url(), json=body, headers=self._headers())
        if response.status_code != 200:
            raise EndpointError(response.status_code, response.text)
        return decode_completion(response.json())

    def _post_streaming(self, body: dict, on_delta: Callable[[str], None]):
        accumulator = StreamAccumulator()
        with self._client.stream("POST", self._url(), json=body, headers=self._headers()) as response:
            if response.status_code != 200:
                response.read()
                raise EndpointError(response.status_code, response.text)
            for line in response.iter_lines():
                line = line.strip()
                if not line.startswith("data:"):
                    continue
                payload = line[len("data:"):].strip()
                if payload == "[DONE]":
                    break
                try:
                    chunk = json.loads(payload)
                except json.JSONDecodeError as err:
                    raise MalformedResponse(f"bad stream chunk: {payload[:120]!r}") from err
                text = accumulator.feed(chunk)
                if text:
                    on_delta(text)
        return accumulator.result()
