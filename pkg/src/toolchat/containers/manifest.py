"""The versioned seed manifest: the JSON source the benchmark containers load.

The manifest declares container structure (agents, actions, schemas) and
seed state; behavior comes from the handler registry built out of the
container modules. ``python -m toolchat.containers.manifest`` regenerates
the bundled file from code, and a test pins the two together.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..actions import ParameterSchema
from ..platform import RuntimePlatform
from . import music, office, warehouse
from .runtime import Handler, SimAction, SimAgent, SimContainer

DEFAULT_MANIFEST_PATH = Path(__file__).parent / "data" / "benchmark_manifest.json"

_BUILDERS = (office.build, warehouse.build, music.build)


class ManifestError(Exception):
    pass


def _handler_registry() -> dict[tuple[str, str, str], tuple[Handler, float]]:
    registry: dict[tuple[str, str, str], tuple[Handler, float]] = {}
    for build in _BUILDERS:
        container = build().build()
        for agent in container.agents:
            for action in agent.actions:
                key = (container.container_id, agent.agent_id, action.descriptor.name)
                registry[key] = (action.handler, action.latency_ms)
    return registry


def _schema_doc(schema: ParameterSchema) -> dict[str, Any]:
    return schema.model_dump(mode="json", exclude_none=True, exclude_defaults=True) | {
        "kind": schema.kind.value
    }


def generate_manifest() -> dict[str, Any]:
    """Manifest document derived from the container modules."""
    containers = []
    for build in _BUILDERS:
        container = build().build()
        agents = []
        for agent in container.agents:
            actions = []
            for action in agent.actions:
                descriptor = action.descriptor
                doc: dict[str, Any] = {
                    "name": descriptor.name,
                    "description": descriptor.description,
                    "parameters": {
                        name: _schema_doc(schema)
                        for name, schema in descriptor.parameters.items()
                    },
                    "result": _schema_doc(descriptor.result_kind)
                    if descriptor.result_kind
                    else None,
                }
                if action.latency_ms:
                    doc["latency_ms"] = action.latency_ms
                actions.append(doc)
            agents.append(
                {
                    "agent_id": agent.agent_id,
                    "description": agent.description,
                    "actions": actions,
                }
            )
        containers.append(
            {
                "container_id": container.container_id,
                "requires_login": container.requires_login,
                "agents": agents,
                "seed_state": container.seed_state,
            }
        )
    return {"version": 1, "containers": containers}


def load_manifest(
    path: str | Path | None = None, latency_enabled: bool = False
) -> list[SimContainer]:
    """Build runnable containers from a manifest file.

    Every listed action must have a handler in the code registry; extra
    handlers are fine (that is how a trimmed-down manifest stays loadable).
    """
    document = json.loads(Path(path or DEFAULT_MANIFEST_PATH).read_text())
    registry = _handler_registry()
    containers = []
    for centry in document["containers"]:
        agents = []
        for aentry in centry["agents"]:
            actions = []
            for doc in aentry["actions"]:
                key = (centry["container_id"], aentry["agent_id"], doc["name"])
                if key not in registry:
                    raise ManifestError(f"no handler registered for {'/'.join(key)}")
                handler, _ = registry[key]
                from ..actions import ActionDescriptor

                descriptor = ActionDescriptor(
                    name=doc["name"],
                    description=doc.get("description", ""),
                    parameters={
                        name: ParameterSchema.model_validate(schema_doc)
                        for name, schema_doc in doc.get("parameters", {}).items()
                    },
                    result_kind=ParameterSchema.model_validate(doc["result"])
                    if doc.get("result")
                    else None,
                )
                actions.append(
                    SimAction(descriptor, handler, latency_ms=doc.get("latency_ms", 0.0))
                )
            agents.append(
                SimAgent(aentry["agent_id"], aentry.get("description", ""), actions)
            )
        containers.append(
            SimContainer(
                centry["container_id"],
                agents,
                centry.get("seed_state", {}),
                requires_login=centry.get("requires_login", False),
                latency_enabled=latency_enabled,
            )
        )
    return containers


def install_benchmark_containers(
    platform: RuntimePlatform,
    token: str,
    manifest_path: str | Path | None = None,
    latency_enabled: bool = False,
) -> list[SimContainer]:
    """Register the manifest's containers on a running platform."""
    containers = load_manifest(manifest_path, latency_enabled=latency_enabled)
    for container in containers:
        platform.register(container.descriptor(), container, token)
    return containers


def write_manifest(path: str | Path | None = None) -> Path:
    target = Path(path or DEFAULT_MANIFEST_PATH)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(generate_manifest(), indent=2, sort_keys=False) + "\n")
    return target


if __name__ == "__main__":
    print(f"wrote {write_manifest()}")
