"""Benchmark container behavior: seed data, lookups, mutations, determinism."""

import copy
import json
import random

import pytest

from toolchat.containers import (
    DEFAULT_MANIFEST_PATH,
    ManifestError,
    generate_manifest,
    install_benchmark_containers,
    load_manifest,
)
from toolchat.platform import InvocationStatus, LocalPlatformClient, RuntimePlatform

from container_fuzz import check_invariants, random_invocation

USERS = {"admin": "s3cret"}


@pytest.fixture()
def bench():
    platform = RuntimePlatform(users=USERS)
    client = LocalPlatformClient(platform, "admin", "s3cret")
    containers = install_benchmark_containers(platform, client.token)
    return platform, client, {c.container_id: c for c in containers}


def test_install_exposes_fifteen_agents(bench):
    _, client, _ = bench
    agents = client.get_agents()
    assert len(agents) == 15
    assert sum(len(a.agent.actions) for a in agents) == 102


def test_duplicate_install_rejected(bench):
    platform, client, _ = bench
    with pytest.raises(Exception):
        install_benchmark_containers(platform, client.token)


def test_committed_manifest_matches_code():
    committed = json.loads(DEFAULT_MANIFEST_PATH.read_text())
    assert committed == generate_manifest()


def test_manifest_can_be_trimmed(tmp_path):
    document = generate_manifest()
    document["containers"] = document["containers"][:1]
    document["containers"][0]["agents"] = document["containers"][0]["agents"][:2]
    path = tmp_path / "trimmed.json"
    path.write_text(json.dumps(document))
    containers = load_manifest(path)
    assert len(containers) == 1
    assert len(containers[0].agents) == 2


def test_manifest_unknown_action_rejected(tmp_path):
    document = generate_manifest()
    document["containers"][0]["agents"][0]["actions"][0]["name"] = "not_a_real_action"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document))
    with pytest.raises(ManifestError):
        load_manifest(path)


# -- id lookups -----------------------------------------------------------------

def test_find_room_id_by_fragment(bench):
    _, client, _ = bench
    result = client.invoke("room-info", "find_room_id", {"name_fragment": "server"})
    assert result.ok
    assert result.payload == "room-server"  # matched "Server Room" case-insensitively


def test_find_with_no_match(bench):
    _, client, _ = bench
    result = client.invoke("room-info", "find_room_id", {"name_fragment": "aquarium"})
    assert result.status == InvocationStatus.ACTION_ERROR
    assert "no room matching" in result.payload


def test_find_with_two_matches_is_ambiguous(bench):
    _, client, _ = bench
    # seed has "Copper Wire Spool" and "Copper Pipe 22mm"
    result = client.invoke("inventory", "find_item_id", {"name_fragment": "copper"})
    assert result.status == InvocationStatus.ACTION_ERROR
    assert "matches several" in result.payload


def test_lookup_feeds_dependent_call(bench):
    _, client, _ = bench
    room_id = client.invoke("room-info", "find_room_id", {"name_fragment": "kitchen"}).payload
    temperature = client.invoke("climate", "get_temperature", {"room_id": room_id}).payload
    assert temperature == 22.5


# -- state mutations ------------------------------------------------------------

def test_create_order_then_visible(bench):
    _, client, _ = bench
    created = client.invoke(
        "orders",
        "create_order",
        {"customer": "Umbrella", "lines": [{"item_id": "item-steel-bolt", "quantity": 3}]},
    )
    assert created.ok
    orders = client.invoke("orders", "list_orders", {}).payload
    assert any(o["order_id"] == created.payload for o in orders)


def test_remove_order_twice_fails_second_time(bench):
    _, client, _ = bench
    order_id = client.invoke(
        "orders",
        "create_order",
        {"customer": "Umbrella", "lines": [{"item_id": "item-led-strip", "quantity": 1}]},
    ).payload
    assert client.invoke("orders", "cancel_order", {"order_id": order_id}).ok
    second = client.invoke("orders", "cancel_order", {"order_id": order_id})
    assert second.status == InvocationStatus.ACTION_ERROR
    assert "not found" in second.payload


def test_stock_never_negative(bench):
    _, client, _ = bench
    result = client.invoke("inventory", "remove_stock", {"item_id": "item-server-rack", "quantity": 99})
    assert result.status == InvocationStatus.ACTION_ERROR
    level = client.invoke("inventory", "get_stock_level", {"item_id": "item-server-rack"}).payload
    assert level == 3


def test_nested_object_creation(bench):
    _, client, _ = bench
    result = client.invoke(
        "desk-booking",
        "create_recurring_booking",
        {"plan": {"desk_id": "desk-c1", "user": "mira", "start_date": "2026-09-07", "weeks": 3}},
    )
    assert result.ok
    assert len(result.payload) == 3
    bookings = client.invoke("desk-booking", "list_bookings", {}).payload
    dates = [b["date"] for b in bookings if b["user"] == "mira"]
    assert dates == ["2026-09-07", "2026-09-14", "2026-09-21"]


def test_player_state_machine(bench):
    _, client, _ = bench
    assert client.invoke("player", "play_track", {"track_id": "trk-005"}).payload["playing"]
    assert client.invoke("player", "pause", {}).payload["playing"] is False
    assert client.invoke("player", "resume", {}).payload["playing"] is True
    nowp = client.invoke("player", "now_playing", {}).payload
    assert nowp["title"] == "Low Tide"
    stopped = client.invoke("player", "stop", {}).payload
    assert stopped == {"current": None, "playing": False}
    result = client.invoke("player", "skip_to_next", {})
    assert result.status == InvocationStatus.ACTION_ERROR  # queue empty


# -- reset ------------------------------------------------------------------------

def test_mutate_then_reset_restores_seed(bench):
    _, client, containers = bench
    before = copy.deepcopy(containers["warehouse"].state)
    client.invoke("inventory", "add_stock", {"item_id": "item-steel-bolt", "quantity": 10})
    assert containers["warehouse"].state != before
    client.reset_container("warehouse")
    assert containers["warehouse"].state == before
    assert containers["warehouse"].state == containers["warehouse"].seed_state


def test_reset_on_fresh_container_is_noop(bench):
    _, client, containers = bench
    before = copy.deepcopy(containers["music-player"].state)
    client.reset_container("music-player")
    assert containers["music-player"].state == before


def test_reset_unknown_container(bench):
    _, client, _ = bench
    with pytest.raises(Exception):
        client.reset_container("nope")


# -- determinism and invariants ----------------------------------------------------

def run_sequence(client, containers, seed: int, length: int = 10):
    rng = random.Random(seed)
    outcomes = []
    for _ in range(length):
        container = containers[rng.choice(sorted(containers))]
        agent_id, action_name, arguments = random_invocation(container, rng)
        result = client.invoke(agent_id, action_name, arguments)
        outcomes.append((agent_id, action_name, result.status.value, result.payload))
        check_invariants(container)
    return outcomes


def reset_all(client, containers):
    for container_id in containers:
        client.reset_container(container_id)


@pytest.mark.parametrize("seed", range(25))
def test_random_sequences_preserve_invariants_and_replay(bench, seed):
    _, client, containers = bench
    reset_all(client, containers)
    first = run_sequence(client, containers, seed)
    states = {cid: copy.deepcopy(c.state) for cid, c in containers.items()}

    reset_all(client, containers)
    second = run_sequence(client, containers, seed)
    assert second == first, "same seed must replay identically"
    for cid, container in containers.items():
        assert container.state == states[cid]


def test_latency_injection_changes_time_not_results(bench):
    platform = RuntimePlatform(users=USERS)
    client = LocalPlatformClient(platform, "admin", "s3cret")
    containers = install_benchmark_containers(platform, client.token, latency_enabled=True)
    baseline_client = bench[1]

    result = client.invoke("room-info", "count_rooms", {})
    baseline = baseline_client.invoke("room-info", "count_rooms", {})
    assert result.payload == baseline.payload
