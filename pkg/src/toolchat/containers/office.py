"""Smart-office container: rooms, climate, lighting, desks, facilities."""

from __future__ import annotations

from datetime import date as _date, timedelta

from ..platform import ActionError
from .runtime import (
    ContainerBuilder,
    SimContainer,
    lookup_by_fragment,
    p_boolean,
    p_integer,
    p_number,
    p_object,
    p_string,
)

CONTAINER_ID = "smart-office"

SEED = {
    "rooms": {
        "room-server": {"name": "Server Room", "temperature": 18.0, "light_on": True},
        "room-kitchen": {"name": "Kitchen", "temperature": 22.5, "light_on": False},
        "room-conf-a": {"name": "Conference Room Alpha", "temperature": 21.0, "light_on": False},
        "room-conf-b": {"name": "Conference Room Beta", "temperature": 20.5, "light_on": True},
        "room-lounge": {"name": "Lounge", "temperature": 23.0, "light_on": False},
        "room-lab": {"name": "Robotics Lab", "temperature": 19.5, "light_on": True},
    },
    "desks": {
        "desk-a1": {"label": "Desk A1", "room_id": "room-lab"},
        "desk-a2": {"label": "Desk A2", "room_id": "room-lab"},
        "desk-b1": {"label": "Desk B1", "room_id": "room-lounge"},
        "desk-b2": {"label": "Desk B2", "room_id": "room-lounge"},
        "desk-c1": {"label": "Desk C1", "room_id": "room-conf-a"},
        "desk-c2": {"label": "Desk C2", "room_id": "room-conf-b"},
    },
    "bookings": {
        "bkg-1": {"desk_id": "desk-a1", "user": "ana", "date": "2026-08-10"},
        "bkg-2": {"desk_id": "desk-b2", "user": "jonas", "date": "2026-08-11"},
    },
    "issues": {
        "iss-1": {"room_id": "room-kitchen", "description": "Leaky faucet", "severity": "medium", "open": True},
        "iss-2": {"room_id": "room-server", "description": "Rack fan rattles", "severity": "low", "open": True},
    },
    "cleanings": {},
    "next_ids": {"booking": 3, "issue": 3, "cleaning": 1},
}


def _room(state, room_id):
    room = state["rooms"].get(room_id)
    if room is None:
        raise ActionError(f"unknown room {room_id!r}")
    return room


def _desk(state, desk_id):
    desk = state["desks"].get(desk_id)
    if desk is None:
        raise ActionError(f"unknown desk {desk_id!r}")
    return desk


def _take_id(state, kind: str, prefix: str) -> str:
    number = state["next_ids"][kind]
    state["next_ids"][kind] = number + 1
    return f"{prefix}-{number}"


def build() -> ContainerBuilder:
    c = ContainerBuilder(CONTAINER_ID)
    c.seed(SEED)

    rooms = c.agent("room-info", "Knows every room in the office and resolves room names to ids.")

    @rooms.action("list_rooms", "List all room ids with their display names.")
    def list_rooms(state, args):
        return [{"room_id": rid, "name": r["name"]} for rid, r in state["rooms"].items()]

    @rooms.action(
        "find_room_id",
        "Resolve a room name fragment (case-insensitive) to the single matching room id.",
        {"name_fragment": p_string("part of the room name")},
        result=p_string(),
    )
    def find_room_id(state, args):
        names = {rid: r["name"] for rid, r in state["rooms"].items()}
        return lookup_by_fragment(names, args["name_fragment"], "room")

    @rooms.action(
        "get_room",
        "Full record for one room: name, temperature, light state.",
        {"room_id": p_string()},
    )
    def get_room(state, args):
        room = _room(state, args["room_id"])
        return {"room_id": args["room_id"], **room}

    @rooms.action(
        "get_room_name", "Display name of a room id.", {"room_id": p_string()}, result=p_string()
    )
    def get_room_name(state, args):
        return _room(state, args["room_id"])["name"]

    @rooms.action("count_rooms", "Number of rooms in the office.", result=p_integer())
    def count_rooms(state, args):
        return len(state["rooms"])

    @rooms.action("list_room_names", "All display names, in declaration order.")
    def list_room_names(state, args):
        return [r["name"] for r in state["rooms"].values()]

    @rooms.action(
        "get_room_summary",
        "One-line human summary of a room's climate and lighting.",
        {"room_id": p_string()},
        result=p_string(),
    )
    def get_room_summary(state, args):
        room = _room(state, args["room_id"])
        light = "on" if room["light_on"] else "off"
        return f"{room['name']}: {room['temperature']} degrees, light {light}"

    climate = c.agent("climate", "Reads and adjusts room temperatures.")

    @climate.action(
        "get_temperature",
        "Current temperature of a room in degrees Celsius.",
        {"room_id": p_string()},
        result=p_number(),
    )
    def get_temperature(state, args):
        return _room(state, args["room_id"])["temperature"]

    @climate.action(
        "set_temperature",
        "Set a room's target temperature (5-35 degrees Celsius).",
        {"room_id": p_string(), "target": p_number("degrees Celsius")},
        result=p_number(),
    )
    def set_temperature(state, args):
        if not 5 <= args["target"] <= 35:
            raise ActionError(f"target {args['target']} out of range 5..35")
        room = _room(state, args["room_id"])
        room["temperature"] = args["target"]
        return room["temperature"]

    @climate.action(
        "adjust_temperature",
        "Change a room temperature by a delta, clamped to 5-35 degrees.",
        {"room_id": p_string(), "delta": p_number("degrees to add (negative to cool)")},
        result=p_number(),
    )
    def adjust_temperature(state, args):
        room = _room(state, args["room_id"])
        room["temperature"] = min(35.0, max(5.0, room["temperature"] + args["delta"]))
        return room["temperature"]

    @climate.action("get_all_temperatures", "Temperature of every room, keyed by room id.")
    def get_all_temperatures(state, args):
        return {rid: r["temperature"] for rid, r in state["rooms"].items()}

    @climate.action("average_temperature", "Mean temperature across all rooms.", result=p_number())
    def average_temperature(state, args):
        rooms = state["rooms"]
        return sum(r["temperature"] for r in rooms.values()) / len(rooms)

    @climate.action("warmest_room", "Room with the highest temperature.")
    def warmest_room(state, args):
        rid = max(state["rooms"], key=lambda r: state["rooms"][r]["temperature"])
        return {"room_id": rid, "name": state["rooms"][rid]["name"], "temperature": state["rooms"][rid]["temperature"]}

    @climate.action("coldest_room", "Room with the lowest temperature.")
    def coldest_room(state, args):
        rid = min(state["rooms"], key=lambda r: state["rooms"][r]["temperature"])
        return {"room_id": rid, "name": state["rooms"][rid]["name"], "temperature": state["rooms"][rid]["temperature"]}

    lights = c.agent("lighting", "Switches and inspects room lights.")

    @lights.action(
        "get_light_state", "Whether a room's light is on.", {"room_id": p_string()}, result=p_boolean()
    )
    def get_light_state(state, args):
        return _room(state, args["room_id"])["light_on"]

    @lights.action("turn_on_light", "Switch a room light on.", {"room_id": p_string()}, result=p_boolean())
    def turn_on_light(state, args):
        _room(state, args["room_id"])["light_on"] = True
        return True

    @lights.action("turn_off_light", "Switch a room light off.", {"room_id": p_string()}, result=p_boolean())
    def turn_off_light(state, args):
        _room(state, args["room_id"])["light_on"] = False
        return False

    @lights.action(
        "toggle_light", "Flip a room light; returns the new state.", {"room_id": p_string()}, result=p_boolean()
    )
    def toggle_light(state, args):
        room = _room(state, args["room_id"])
        room["light_on"] = not room["light_on"]
        return room["light_on"]

    @lights.action("rooms_with_light_on", "Ids of all rooms whose light is currently on.")
    def rooms_with_light_on(state, args):
        return [rid for rid, r in state["rooms"].items() if r["light_on"]]

    @lights.action(
        "set_all_lights", "Switch every light in the office at once.", {"on": p_boolean()}, result=p_integer()
    )
    def set_all_lights(state, args):
        for room in state["rooms"].values():
            room["light_on"] = args["on"]
        return len(state["rooms"])

    desks = c.agent("desk-booking", "Books desks and manages existing bookings.")

    @desks.action("list_desks", "Every desk with its label and room.")
    def list_desks(state, args):
        return [{"desk_id": did, **d} for did, d in state["desks"].items()]

    @desks.action(
        "find_desk_id",
        "Resolve a desk label fragment to the single matching desk id.",
        {"label_fragment": p_string()},
        result=p_string(),
    )
    def find_desk_id(state, args):
        labels = {did: d["label"] for did, d in state["desks"].items()}
        return lookup_by_fragment(labels, args["label_fragment"], "desk")

    @desks.action(
        "is_desk_free",
        "Whether a desk has no booking on the given date.",
        {"desk_id": p_string(), "date": p_string("ISO date, e.g. 2026-08-12")},
        result=p_boolean(),
    )
    def is_desk_free(state, args):
        _desk(state, args["desk_id"])
        return not any(
            b["desk_id"] == args["desk_id"] and b["date"] == args["date"]
            for b in state["bookings"].values()
        )

    @desks.action(
        "book_desk",
        "Book a desk for a user on a date; returns the booking id.",
        {"desk_id": p_string(), "user": p_string(), "date": p_string("ISO date")},
        result=p_string(),
    )
    def book_desk(state, args):
        _desk(state, args["desk_id"])
        if not is_desk_free(state, {"desk_id": args["desk_id"], "date": args["date"]}):
            raise ActionError(f"desk {args['desk_id']} is already booked on {args['date']}")
        booking_id = _take_id(state, "booking", "bkg")
        state["bookings"][booking_id] = {
            "desk_id": args["desk_id"], "user": args["user"], "date": args["date"]
        }
        return booking_id

    @desks.action(
        "cancel_booking", "Delete a booking by id.", {"booking_id": p_string()}, result=p_boolean()
    )
    def cancel_booking(state, args):
        if args["booking_id"] not in state["bookings"]:
            raise ActionError(f"booking {args['booking_id']!r} not found")
        del state["bookings"][args["booking_id"]]
        return True

    @desks.action("list_bookings", "All bookings with their ids.")
    def list_bookings(state, args):
        return [{"booking_id": bid, **b} for bid, b in state["bookings"].items()]

    @desks.action(
        "bookings_for_user", "Bookings held by one user.", {"user": p_string()}
    )
    def bookings_for_user(state, args):
        return [
            {"booking_id": bid, **b}
            for bid, b in state["bookings"].items()
            if b["user"] == args["user"]
        ]

    @desks.action(
        "create_recurring_booking",
        "Book the same desk for several consecutive weeks; returns all booking ids.",
        {
            "plan": p_object(
                {
                    "desk_id": p_string(),
                    "user": p_string(),
                    "start_date": p_string("ISO date of the first booking"),
                    "weeks": p_integer("number of consecutive weeks (1-8)"),
                },
                description="recurring booking request",
            )
        },
    )
    def create_recurring_booking(state, args):
        plan = args["plan"]
        _desk(state, plan["desk_id"])
        if not 1 <= plan["weeks"] <= 8:
            raise ActionError("weeks must be between 1 and 8")
        try:
            start = _date.fromisoformat(plan["start_date"])
        except ValueError:
            raise ActionError(f"bad ISO date {plan['start_date']!r}") from None
        ids = []
        for week in range(plan["weeks"]):
            date = (start + timedelta(weeks=week)).isoformat()
            if not is_desk_free(state, {"desk_id": plan["desk_id"], "date": date}):
                raise ActionError(f"desk {plan['desk_id']} is already booked on {date}")
            booking_id = _take_id(state, "booking", "bkg")
            state["bookings"][booking_id] = {
                "desk_id": plan["desk_id"], "user": plan["user"], "date": date
            }
            ids.append(booking_id)
        return ids

    facilities = c.agent("facilities", "Tracks maintenance issues and cleaning schedules.")

    @facilities.action(
        "report_issue",
        "File a maintenance issue for a room; returns the issue id.",
        {"room_id": p_string(), "description": p_string(), "severity": p_string("low, medium, or high")},
        result=p_string(),
    )
    def report_issue(state, args):
        _room(state, args["room_id"])
        if args["severity"] not in ("low", "medium", "high"):
            raise ActionError(f"severity must be low, medium, or high, not {args['severity']!r}")
        issue_id = _take_id(state, "issue", "iss")
        state["issues"][issue_id] = {
            "room_id": args["room_id"],
            "description": args["description"],
            "severity": args["severity"],
            "open": True,
        }
        return issue_id

    @facilities.action("list_issues", "All issues, open and resolved.")
    def list_issues(state, args):
        return [{"issue_id": iid, **i} for iid, i in state["issues"].items()]

    @facilities.action(
        "resolve_issue", "Mark an issue as resolved.", {"issue_id": p_string()}, result=p_boolean()
    )
    def resolve_issue(state, args):
        issue = state["issues"].get(args["issue_id"])
        if issue is None:
            raise ActionError(f"issue {args['issue_id']!r} not found")
        issue["open"] = False
        return True

    @facilities.action("open_issue_count", "Number of unresolved issues.", result=p_integer())
    def open_issue_count(state, args):
        return sum(1 for i in state["issues"].values() if i["open"])

    @facilities.action(
        "find_issue_id",
        "Resolve an issue description fragment to the single matching issue id.",
        {"description_fragment": p_string()},
        result=p_string(),
    )
    def find_issue_id(state, args):
        descriptions = {iid: i["description"] for iid, i in state["issues"].items()}
        return lookup_by_fragment(descriptions, args["description_fragment"], "issue")

    @facilities.action(
        "schedule_cleaning",
        "Schedule a cleaning for a room on a date; returns the schedule id.",
        {"room_id": p_string(), "date": p_string("ISO date")},
        result=p_string(),
    )
    def schedule_cleaning(state, args):
        _room(state, args["room_id"])
        cleaning_id = _take_id(state, "cleaning", "cln")
        state["cleanings"][cleaning_id] = {"room_id": args["room_id"], "date": args["date"]}
        return cleaning_id

    return c


def build_container(latency_enabled: bool = False) -> SimContainer:
    return build().build(latency_enabled)
