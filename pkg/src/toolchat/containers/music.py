"""Music container: track library, playlists, player, queue, listening stats."""

from __future__ import annotations

from ..platform import ActionError
from .runtime import (
    ContainerBuilder,
    SimContainer,
    lookup_by_fragment,
    p_integer,
    p_number,
    p_object,
    p_string,
)

CONTAINER_ID = "music-player"

SEED = {
    "tracks": {
        "trk-001": {"title": "Midnight Drive", "artist": "Neon Harbor", "duration_s": 245},
        "trk-002": {"title": "Blue Static", "artist": "Neon Harbor", "duration_s": 198},
        "trk-003": {"title": "Paper Planes Over Berlin", "artist": "Ada Quell", "duration_s": 212},
        "trk-004": {"title": "Glasshouse", "artist": "Ada Quell", "duration_s": 304},
        "trk-005": {"title": "Low Tide", "artist": "The Marble Sea", "duration_s": 189},
        "trk-006": {"title": "Cobalt Sky", "artist": "The Marble Sea", "duration_s": 233},
        "trk-007": {"title": "Seven Signals", "artist": "Voxhall", "duration_s": 276},
        "trk-008": {"title": "Afterglow", "artist": "Voxhall", "duration_s": 251},
        "trk-009": {"title": "Quiet Engines", "artist": "Lena Mercer", "duration_s": 264},
        "trk-010": {"title": "North of Nowhere", "artist": "Lena Mercer", "duration_s": 221},
    },
    "playlists": {
        "pl-focus": {"name": "Deep Focus", "tracks": ["trk-009", "trk-004", "trk-005"]},
        "pl-drive": {"name": "Night Drive", "tracks": ["trk-001", "trk-006", "trk-002"]},
        "pl-fresh": {"name": "Fresh Finds", "tracks": ["trk-003"]},
    },
    "player": {"current": None, "playing": False},
    "queue": [],
    "play_counts": {
        "trk-001": 12, "trk-002": 7, "trk-003": 3, "trk-004": 9, "trk-005": 5,
        "trk-006": 11, "trk-007": 2, "trk-008": 6, "trk-009": 14, "trk-010": 4,
    },
    "next_ids": {"track": 11, "playlist": 4},
}


def _track(state, track_id):
    track = state["tracks"].get(track_id)
    if track is None:
        raise ActionError(f"unknown track {track_id!r}")
    return track


def _playlist(state, playlist_id):
    playlist = state["playlists"].get(playlist_id)
    if playlist is None:
        raise ActionError(f"playlist {playlist_id!r} not found")
    return playlist


def build() -> ContainerBuilder:
    c = ContainerBuilder(CONTAINER_ID)
    c.seed(SEED)

    library = c.agent("library", "The track catalogue: search, inspect, extend.")

    @library.action("list_tracks", "Every track with id, title, and artist.")
    def list_tracks(state, args):
        return [
            {"track_id": tid, "title": t["title"], "artist": t["artist"]}
            for tid, t in state["tracks"].items()
        ]

    @library.action(
        "find_track_id",
        "Resolve a title fragment (case-insensitive) to the single matching track id.",
        {"title_fragment": p_string()},
        result=p_string(),
    )
    def find_track_id(state, args):
        titles = {tid: t["title"] for tid, t in state["tracks"].items()}
        return lookup_by_fragment(titles, args["title_fragment"], "track")

    @library.action(
        "get_track",
        "Full record for one track.",
        {"track_id": p_string()},
        result=p_object({"title": p_string(), "artist": p_string(), "duration_s": p_integer()}),
    )
    def get_track(state, args):
        return dict(_track(state, args["track_id"]))

    @library.action(
        "search_tracks",
        "Track ids whose title or artist contains the query (may be several).",
        {"query": p_string()},
    )
    def search_tracks(state, args):
        needle = args["query"].lower()
        return [
            tid
            for tid, t in state["tracks"].items()
            if needle in t["title"].lower() or needle in t["artist"].lower()
        ]

    @library.action(
        "add_track",
        "Add a track to the library; returns the new track id.",
        {
            "track": p_object(
                {"title": p_string(), "artist": p_string(), "duration_s": p_integer("seconds, > 0")},
                description="track record",
            )
        },
        result=p_string(),
    )
    def add_track(state, args):
        record = args["track"]
        if record["duration_s"] <= 0:
            raise ActionError("duration_s must be positive")
        number = state["next_ids"]["track"]
        state["next_ids"]["track"] = number + 1
        track_id = f"trk-{number:03d}"
        state["tracks"][track_id] = dict(record)
        state["play_counts"][track_id] = 0
        return track_id

    @library.action(
        "remove_track",
        "Delete a track; it is also dropped from playlists, queue, and player.",
        {"track_id": p_string()},
    )
    def remove_track(state, args):
        track_id = args["track_id"]
        _track(state, track_id)
        del state["tracks"][track_id]
        state["play_counts"].pop(track_id, None)
        for playlist in state["playlists"].values():
            playlist["tracks"] = [t for t in playlist["tracks"] if t != track_id]
        state["queue"] = [t for t in state["queue"] if t != track_id]
        if state["player"]["current"] == track_id:
            state["player"] = {"current": None, "playing": False}
        return True

    @library.action("tracks_by_artist", "Track ids by an artist (exact name, case-insensitive).", {"artist": p_string()})
    def tracks_by_artist(state, args):
        return [
            tid for tid, t in state["tracks"].items()
            if t["artist"].lower() == args["artist"].lower()
        ]

    @library.action("total_library_duration", "Sum of all track durations in seconds.", result=p_integer())
    def total_library_duration(state, args):
        return sum(t["duration_s"] for t in state["tracks"].values())

    playlists = c.agent("playlists", "Creates and edits playlists.")

    @playlists.action("list_playlists", "Every playlist with id and name.")
    def list_playlists(state, args):
        return [{"playlist_id": pid, "name": p["name"]} for pid, p in state["playlists"].items()]

    @playlists.action(
        "find_playlist_id",
        "Resolve a playlist name fragment to the single matching playlist id.",
        {"name_fragment": p_string()},
        result=p_string(),
    )
    def find_playlist_id(state, args):
        names = {pid: p["name"] for pid, p in state["playlists"].items()}
        return lookup_by_fragment(names, args["name_fragment"], "playlist")

    @playlists.action("get_playlist", "One playlist with its ordered track ids.", {"playlist_id": p_string()})
    def get_playlist(state, args):
        return {"playlist_id": args["playlist_id"], **_playlist(state, args["playlist_id"])}

    @playlists.action(
        "create_playlist", "Create an empty playlist; returns its id.", {"name": p_string()}, result=p_string()
    )
    def create_playlist(state, args):
        number = state["next_ids"]["playlist"]
        state["next_ids"]["playlist"] = number + 1
        playlist_id = f"pl-{number}"
        state["playlists"][playlist_id] = {"name": args["name"], "tracks": []}
        return playlist_id

    @playlists.action("delete_playlist", "Remove a playlist (tracks stay in the library).", {"playlist_id": p_string()})
    def delete_playlist(state, args):
        _playlist(state, args["playlist_id"])
        del state["playlists"][args["playlist_id"]]
        return True

    @playlists.action(
        "add_track_to_playlist",
        "Append a track to a playlist.",
        {"playlist_id": p_string(), "track_id": p_string()},
        result=p_integer(),
    )
    def add_track_to_playlist(state, args):
        playlist = _playlist(state, args["playlist_id"])
        _track(state, args["track_id"])
        playlist["tracks"].append(args["track_id"])
        return len(playlist["tracks"])

    @playlists.action(
        "remove_track_from_playlist",
        "Remove the first occurrence of a track from a playlist.",
        {"playlist_id": p_string(), "track_id": p_string()},
        result=p_integer(),
    )
    def remove_track_from_playlist(state, args):
        playlist = _playlist(state, args["playlist_id"])
        if args["track_id"] not in playlist["tracks"]:
            raise ActionError(f"track {args['track_id']} is not on playlist {args['playlist_id']}")
        playlist["tracks"].remove(args["track_id"])
        return len(playlist["tracks"])

    @playlists.action(
        "playlist_duration", "Total duration of a playlist in seconds.", {"playlist_id": p_string()}, result=p_integer()
    )
    def playlist_duration(state, args):
        playlist = _playlist(state, args["playlist_id"])
        return sum(state["tracks"][tid]["duration_s"] for tid in playlist["tracks"])

    player = c.agent("player", "Playback control for the active track.")

    @player.action("get_player_state", "Current track id (if any) and whether playback runs.")
    def get_player_state(state, args):
        return dict(state["player"])

    @player.action(
        "play_track", "Start playing a track; counts as one play.", {"track_id": p_string()}
    )
    def play_track(state, args):
        _track(state, args["track_id"])
        state["player"] = {"current": args["track_id"], "playing": True}
        state["play_counts"][args["track_id"]] = state["play_counts"].get(args["track_id"], 0) + 1
        return dict(state["player"])

    @player.action("pause", "Pause playback, keeping the current track loaded.")
    def pause(state, args):
        if state["player"]["current"] is None:
            raise ActionError("nothing is loaded")
        state["player"]["playing"] = False
        return dict(state["player"])

    @player.action("resume", "Resume the loaded track.")
    def resume(state, args):
        if state["player"]["current"] is None:
            raise ActionError("nothing is loaded")
        state["player"]["playing"] = True
        return dict(state["player"])

    @player.action("stop", "Stop playback and unload the track.")
    def stop(state, args):
        state["player"] = {"current": None, "playing": False}
        return dict(state["player"])

    @player.action("skip_to_next", "Play the next queued track; error when the queue is empty.")
    def skip_to_next(state, args):
        if not state["queue"]:
            raise ActionError("queue is empty")
        track_id = state["queue"].pop(0)
        state["player"] = {"current": track_id, "playing": True}
        state["play_counts"][track_id] = state["play_counts"].get(track_id, 0) + 1
        return dict(state["player"])

    @player.action("now_playing", "Title and artist of the playing track.")
    def now_playing(state, args):
        current = state["player"]["current"]
        if current is None or not state["player"]["playing"]:
            raise ActionError("nothing is playing")
        track = state["tracks"][current]
        return {"track_id": current, "title": track["title"], "artist": track["artist"]}

    queue = c.agent("queue", "The up-next list feeding the player.")

    @queue.action("view_queue", "Track ids queued up, in play order.")
    def view_queue(state, args):
        return list(state["queue"])

    @queue.action("enqueue_track", "Append a track to the queue.", {"track_id": p_string()}, result=p_integer())
    def enqueue_track(state, args):
        _track(state, args["track_id"])
        state["queue"].append(args["track_id"])
        return len(state["queue"])

    @queue.action("dequeue_next", "Remove and return the next queued track id.", result=p_string())
    def dequeue_next(state, args):
        if not state["queue"]:
            raise ActionError("queue is empty")
        return state["queue"].pop(0)

    @queue.action("clear_queue", "Empty the queue; returns how many entries were dropped.", result=p_integer())
    def clear_queue(state, args):
        dropped = len(state["queue"])
        state["queue"] = []
        return dropped

    @queue.action("queue_length", "How many tracks are queued.", result=p_integer())
    def queue_length(state, args):
        return len(state["queue"])

    stats = c.agent("music-stats", "Listening statistics over the library.")

    @stats.action("most_played_track", "The track with the highest play count.")
    def most_played_track(state, args):
        if not state["play_counts"]:
            raise ActionError("no plays recorded")
        track_id = min(state["play_counts"], key=lambda t: (-state["play_counts"][t], t))
        return {
            "track_id": track_id,
            "title": state["tracks"][track_id]["title"],
            "play_count": state["play_counts"][track_id],
        }

    @stats.action("play_count", "How often a track has been played.", {"track_id": p_string()}, result=p_integer())
    def play_count(state, args):
        _track(state, args["track_id"])
        return state["play_counts"].get(args["track_id"], 0)

    @stats.action(
        "top_artists", "Artists ranked by summed play counts.", {"limit": p_integer("how many artists")}
    )
    def top_artists(state, args):
        if args["limit"] < 1:
            raise ActionError("limit must be >= 1")
        totals: dict[str, int] = {}
        for tid, count in state["play_counts"].items():
            artist = state["tracks"][tid]["artist"]
            totals[artist] = totals.get(artist, 0) + count
        ranked = sorted(totals.items(), key=lambda pair: (-pair[1], pair[0]))
        return [{"artist": artist, "plays": plays} for artist, plays in ranked[: args["limit"]]]

    @stats.action("longest_track", "Track with the longest duration.")
    def longest_track(state, args):
        track_id = min(state["tracks"], key=lambda t: (-state["tracks"][t]["duration_s"], t))
        return {"track_id": track_id, **state["tracks"][track_id]}

    @stats.action("shortest_track", "Track with the shortest duration.")
    def shortest_track(state, args):
        track_id = min(state["tracks"], key=lambda t: (state["tracks"][t]["duration_s"], t))
        return {"track_id": track_id, **state["tracks"][track_id]}

    @stats.action("average_track_duration", "Mean track duration in seconds.", result=p_number())
    def average_track_duration(state, args):
        tracks = state["tracks"]
        if not tracks:
            raise ActionError("library is empty")
        return sum(t["duration_s"] for t in tracks.values()) / len(tracks)

    return c


def build_container(latency_enabled: bool = False) -> SimContainer:
    return build().build(latency_enabled)
