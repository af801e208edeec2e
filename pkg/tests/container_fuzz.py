"""Random action sequences over the benchmark containers, plus the state
invariants they must preserve. Shared by the container tests and the
acceptance suite."""

from __future__ import annotations

import math
import random
from typing import Any

from toolchat.actions import ParameterKind, ParameterSchema
from toolchat.containers import SimContainer

FRAGMENT_POOL = [
    "server", "copper", "conference", "desk", "a1", "drive", "focus", "bolt",
    "glass", "wire", "neon", "quiet", "velotec", "acme", "dhl", "kitchen",
    "xyz-nothing", "",
]

WORD_POOL = [
    "ana", "jonas", "open", "packed", "shipped", "delivered", "in_transit",
    "low", "medium", "high", "2026-08-20", "2026-09-01", "DHL", "UPS",
    "ACME Corp", "Globex", "Night Drive", "maintenance",
]


def _string_leaves(value: Any, out: list[str]) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            if isinstance(key, str):
                out.append(key)
            _string_leaves(sub, out)
    elif isinstance(value, list):
        for sub in value:
            _string_leaves(sub, out)
    elif isinstance(value, str):
        out.append(value)


def harvest_strings(container: SimContainer, cap: int = 200) -> list[str]:
    found: list[str] = []
    _string_leaves(container.state, found)
    return found[:cap]


def random_value(schema: ParameterSchema, rng: random.Random, pool: list[str]) -> Any:
    kind = schema.kind
    if kind == ParameterKind.STRING:
        return rng.choice(pool + FRAGMENT_POOL + WORD_POOL)
    if kind == ParameterKind.INTEGER:
        return rng.choice([0, 1, 2, 3, 5, 10, 25, 200, -1])
    if kind == ParameterKind.NUMBER:
        return rng.choice([0, 1.5, 7, 18.5, 21.0, 33.3, -2.5, 40.0])
    if kind == ParameterKind.BOOLEAN:
        return rng.random() < 0.5
    if kind == ParameterKind.ARRAY:
        return [random_value(schema.item_schema, rng, pool) for _ in range(rng.randint(0, 2))]
    if kind == ParameterKind.OBJECT:
        out = {}
        for name, sub in schema.fields.items():
            if sub.required or rng.random() < 0.5:
                out[name] = random_value(sub, rng, pool)
        return out
    raise AssertionError(kind)


def random_invocation(container: SimContainer, rng: random.Random) -> tuple[str, str, dict]:
    agent = rng.choice(container.agents)
    action = rng.choice(agent.actions)
    pool = harvest_strings(container)
    arguments = {
        name: random_value(schema, rng, pool)
        for name, schema in action.descriptor.parameters.items()
        if schema.required or rng.random() < 0.7
    }
    return agent.agent_id, action.descriptor.name, arguments


# -- invariants -----------------------------------------------------------------


def check_office_invariants(state: dict) -> None:
    for room in state["rooms"].values():
        assert math.isfinite(room["temperature"])
        assert isinstance(room["light_on"], bool)
    for booking in state["bookings"].values():
        assert booking["desk_id"] in state["desks"], "booking references a missing desk"
    for issue in state["issues"].values():
        assert issue["room_id"] in state["rooms"]
    for cleaning in state["cleanings"].values():
        assert cleaning["room_id"] in state["rooms"]


def check_warehouse_invariants(state: dict) -> None:
    for item in state["items"].values():
        assert item["quantity"] >= 0, "stock went negative"
    for order in state["orders"].values():
        assert order["status"] in ("open", "packed", "shipped", "cancelled")
        for line in order["lines"]:
            assert line["item_id"] in state["items"], "order line references a missing item"
            assert line["quantity"] > 0
    for shipment in state["shipments"].values():
        assert shipment["order_id"] in state["orders"], "shipment references a missing order"
    for supplier in state["suppliers"].values():
        for item_id in supplier["items"]:
            assert item_id in state["items"]


def check_music_invariants(state: dict) -> None:
    for playlist in state["playlists"].values():
        for track_id in playlist["tracks"]:
            assert track_id in state["tracks"], "playlist references a missing track"
    for track_id in state["queue"]:
        assert track_id in state["tracks"]
    player = state["player"]
    if player["playing"]:
        assert player["current"] is not None, "playing without a current track"
    if player["current"] is not None:
        assert player["current"] in state["tracks"]
    for track_id in state["play_counts"]:
        assert track_id in state["tracks"]


INVARIANT_CHECKS = {
    "smart-office": check_office_invariants,
    "warehouse": check_warehouse_invariants,
    "music-player": check_music_invariants,
}


def check_invariants(container: SimContainer) -> None:
    INVARIANT_CHECKS[container.container_id](container.state)
