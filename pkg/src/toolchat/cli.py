"""The ``toolchat`` command line: serve the backend/platform, or chat
against a running backend as a thin HTTP client."""

from __future__ import annotations

import json
from pathlib import Path

import click
import httpx
import yaml

from .backend import create_backend_app
from .containers import install_benchmark_containers
from .llm import EndpointProfile, LlmGateway
from .platform import RuntimePlatform, create_platform_app

DEFAULT_SERVE_CONFIG = {
    "profiles": {
        "default": {
            "kind": "http",
            "base_url": "https://api.openai.com/v1",
            "model": "gpt-4o-mini",
            "api_key_env": "OPENAI_API_KEY",
        }
    },
    "platform": {"users": {"admin": "admin"}, "local_name": "bench"},
}


def _load_config(path: str | None) -> dict:
    if path is None:
        return DEFAULT_SERVE_CONFIG
    return yaml.safe_load(Path(path).read_text())


def _build_platform(config: dict) -> tuple[str, RuntimePlatform]:
    platform_doc = config.get("platform", DEFAULT_SERVE_CONFIG["platform"])
    users = dict(platform_doc.get("users", {"admin": "admin"}))
    platform = RuntimePlatform(users=users)
    username, password = next(iter(users.items()))
    token = platform.login(username, password).token
    install_benchmark_containers(platform, token, platform_doc.get("manifest"))
    return platform_doc.get("local_name", "bench"), platform


@click.group()
def main() -> None:
    """Tool-augmented chat over a multi-agent action platform."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8800, show_default=True)
@click.option("--ui", "ui_dir", type=click.Path(exists=True), default=None,
              help="Serve a built browser client (frontend/) under /ui.")
def serve(config_path: str | None, host: str, port: int, ui_dir: str | None) -> None:
    """Run the backend service with the bundled benchmark platform attached."""
    import uvicorn
    from fastapi.staticfiles import StaticFiles

    config = _load_config(config_path)
    profiles = {
        name: EndpointProfile.from_config(name, doc)
        for name, doc in config.get("profiles", {}).items()
    }
    gateway = LlmGateway.build(profiles)
    local_name, platform = _build_platform(config)
    app = create_backend_app(gateway, {local_name: platform})
    if ui_dir:
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
        click.echo(f"ui on http://{host}:{port}/ui/")
    click.echo(f"backend on http://{host}:{port} (local platform: local:{local_name})")
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8700, show_default=True)
def platform(config_path: str | None, host: str, port: int) -> None:
    """Run the action platform (with benchmark containers) standalone."""
    import uvicorn

    config = _load_config(config_path)
    _, runtime = _build_platform(config)
    app = create_platform_app(runtime)
    click.echo(f"platform on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


class BackendClient:
    """Thin HTTP wrapper around the backend routes; no domain logic here."""

    def __init__(self, base_url: str):
        self.base_url = base_url.rstrip("/")
        self.http = httpx.Client(timeout=300)
        self.session_id = self._post("/sessions")["session_id"]

    def _post(self, path: str, body: dict | None = None) -> dict:
        response = self.http.post(f"{self.base_url}{path}", json=body or {})
        if response.status_code >= 400:
            raise click.ClickException(f"{path}: {response.json().get('detail', response.text)}")
        return response.json()

    def connect(self, platform_url: str, username: str, password: str) -> None:
        self._post(
            f"/sessions/{self.session_id}/connect",
            {"platform_url": platform_url, "username": username, "password": password},
        )

    def configure(self, method: str) -> None:
        self._post(f"/sessions/{self.session_id}/configure", {"method": method})

    def query(self, message: str) -> dict:
        return self._post(f"/sessions/{self.session_id}/query", {"message": message})

    def actions(self) -> dict:
        response = self.http.get(f"{self.base_url}/sessions/{self.session_id}/actions")
        response.raise_for_status()
        return response.json()


def _print_summary(result: dict) -> None:
    per_module = result.get("per_module", {})
    modules = ", ".join(f"{m}: {int(s['calls'])}" for m, s in per_module.items())
    click.echo(
        f"[{result['llm_calls']} LLM calls | {result['iterations']} iterations | "
        f"{result['prompt_tokens']}+{result['completion_tokens']} tokens | "
        f"{result['total_elapsed_ms']:.0f} ms | {modules}]"
    )


@main.command()
@click.option("--backend", default="http://127.0.0.1:8800", show_default=True)
@click.option("--platform-url", default="local:bench", show_default=True)
@click.option("--username", default="admin", show_default=True)
@click.option("--password", default="admin", show_default=True)
@click.option("--method", default="simple_tools", show_default=True,
              type=click.Choice(["simple", "simple_tools", "tool_chain", "orchestration"]))
def chat(backend: str, platform_url: str, username: str, password: str, method: str) -> None:
    """Interactive chat against a running backend."""
    client = BackendClient(backend)
    client.connect(platform_url, username, password)
    client.configure(method)
    agents = client.actions()["agents"]
    click.echo(f"connected: {len(agents)} agents available; method {method}. Ctrl-D to exit.")
    while True:
        try:
            message = click.prompt("you", prompt_suffix="> ")
        except (EOFError, click.Abort):
            click.echo("bye")
            return
        result = client.query(message)
        click.echo(result["answer"])
        _print_summary(result)


@main.command()
@click.argument("message")
@click.option("--backend", default="http://127.0.0.1:8800", show_default=True)
@click.option("--platform-url", default="local:bench", show_default=True)
@click.option("--username", default="admin", show_default=True)
@click.option("--password", default="admin", show_default=True)
@click.option("--method", default="simple_tools", show_default=True,
              type=click.Choice(["simple", "simple_tools", "tool_chain", "orchestration"]))
@click.option("--json", "as_json", is_flag=True, help="print the full result object")
def ask(message: str, backend: str, platform_url: str, username: str, password: str,
        method: str, as_json: bool) -> None:
    """One-shot question against a running backend."""
    client = BackendClient(backend)
    client.connect(platform_url, username, password)
    client.configure(method)
    result = client.query(message)
    if as_json:
        click.echo(json.dumps(result, indent=2))
    else:
        click.echo(result["answer"])
        _print_summary(result)
