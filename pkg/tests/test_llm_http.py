"""Wire compatibility: the HTTP client against a faithful fake endpoint."""

import json

import pytest
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse
from fastapi.testclient import TestClient

from toolchat.actions import ParameterSchema, ToolDescriptor, object_schema
from toolchat.llm import (
    ChatRequest,
    EndpointError,
    EndpointProfile,
    HttpChatClient,
    system,
    user,
)


def make_endpoint_app():
    """Minimal chat-completions endpoint that records what it receives."""
    app = FastAPI()
    app.state.received = []

    @app.post("/v1/chat/completions")
    async def completions(request: Request):
        body = await request.json()
        app.state.received.append(body)
        if body["model"] == "explode":
            return JSONResponse({"error": "boom"}, status_code=500)
        if body.get("stream"):
            return StreamingResponse(stream_chunks(), media_type="text/event-stream")
        reply = {
            "id": "cmpl-1",
            "choices": [
                {
                    "index": 0,
                    "message": {
                        "role": "assistant",
                        "content": None,
                        "tool_calls": [
                            {
                                "id": "call_abc",
                                "type": "function",
                                "function": {
                                    "name": "climate--get_temperature",
                                    "arguments": json.dumps({"room_id": "r1"}),
                                },
                            }
                        ],
                    },
                }
            ],
            "usage": {"prompt_tokens": 21, "completion_tokens": 8},
        }
        return JSONResponse(reply)

    def stream_chunks():
        def data(doc):
            return f"data: {json.dumps(doc)}\n\n"

        yield data({"choices": [{"delta": {"role": "assistant"}}]})
        yield data({"choices": [{"delta": {"content": "Hel"}}]})
        yield data({"choices": [{"delta": {"content": "lo!"}}]})
        yield data({"choices": [], "usage": {"prompt_tokens": 4, "completion_tokens": 2}})
        yield "data: [DONE]\n\n"

    return app


@pytest.fixture()
def endpoint():
    app = make_endpoint_app()
    http = TestClient(app)  # a sync httpx.Client driving the ASGI app
    profile = EndpointProfile(name="fake", base_url="http://fake/v1", model="test-model")
    yield HttpChatClient(profile, client=http), app


def test_request_and_tool_call_round_trip(endpoint):
    client, app = endpoint
    tool = ToolDescriptor(
        tool_name="climate--get_temperature",
        description="Read a room temperature",
        parameter_schema=object_schema({"room_id": ParameterSchema(kind="string")}),
    )
    request = ChatRequest(
        model="test-model",
        messages=[system("You control an office."), user("How warm is the kitchen?")],
        tools=[tool],
        temperature=0.0,
    )
    response = client.complete(request)

    sent = app.state.received[0]
    assert sent["model"] == "test-model"
    assert sent["messages"][0] == {"role": "system", "content": "You control an office."}
    assert sent["tools"][0]["type"] == "function"
    assert sent["tools"][0]["function"]["name"] == "climate--get_temperature"
    assert sent["tools"][0]["function"]["parameters"]["required"] == ["room_id"]
    assert sent["temperature"] == 0.0

    assert response.prompt_tokens == 21
    assert response.completion_tokens == 8
    call = response.message.tool_calls[0]
    assert call.call_id == "call_abc"
    assert call.arguments == {"room_id": "r1"}


def test_streaming_deltas_and_usage(endpoint):
    client, _ = endpoint
    seen = []
    response = client.complete(
        ChatRequest(model="test-model", messages=[user("hi")]),
        on_delta=seen.append,
    )
    assert seen == ["Hel", "lo!"]
    assert response.content == "Hello!"
    assert response.prompt_tokens == 4
    assert response.completion_tokens == 2


def test_endpoint_error_carries_status(endpoint):
    client, _ = endpoint
    with pytest.raises(EndpointError) as err:
        client.complete(ChatRequest(model="explode", messages=[user("hi")]))
    assert err.value.status_code == 500
