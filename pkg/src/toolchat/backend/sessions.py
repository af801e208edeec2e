"""Session state for the user-facing service: one platform connection,
one method configuration, one chat history per session."""

from __future__ import annotations

import queue
import threading
import uuid
from dataclasses import dataclass, field
from typing import Any

from ..events import StreamEvent
from ..llm import ChatMessage, assistant, user
from ..platform import PlatformClient
from ..strategies import Method, MethodConfig

DEFAULT_CONFIG = MethodConfig(method=Method.SIMPLE_TOOLS, endpoint_profiles={"default": "default"})

_CLOSE = None  # sentinel pushed to subscriber queues on close


class NotConnected(Exception):
    pass


@dataclass
class Session:
    session_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    platform: PlatformClient | None = None
    platform_url: str = ""
    method_config: MethodConfig = DEFAULT_CONFIG
    chat_history: list[ChatMessage] = field(default_factory=list)
    container_credentials: dict[str, dict[str, Any]] = field(default_factory=dict)
    # one in-flight query at a time; a second caller queues on this lock
    query_lock: threading.Lock = field(default_factory=threading.Lock)
    _emit_lock: threading.Lock = field(default_factory=threading.Lock)
    _subscribers: list[queue.Queue] = field(default_factory=list)

    def require_platform(self) -> PlatformClient:
        if self.platform is None:
            raise NotConnected("session is not connected to a platform")
        return self.platform

    # -- event fan-out ---------------------------------------------------------

    def subscribe(self) -> queue.Queue:
        subscriber: queue.Queue = queue.Queue()
        with self._emit_lock:
            self._subscribers.append(subscriber)
        return subscriber

    def unsubscribe(self, subscriber: queue.Queue) -> None:
        with self._emit_lock:
            if subscriber in self._subscribers:
                self._subscribers.remove(subscriber)
        subscriber.put(_CLOSE)

    def emit(self, event: StreamEvent) -> None:
        # a single lock keeps the event order identical for every subscriber
        with self._emit_lock:
            for subscriber in self._subscribers:
                subscriber.put(event)

    # -- history -----------------------------------------------------------------

    def append_turn(self, user_message: str, answer: str) -> None:
        self.chat_history.append(user(user_message))
        self.chat_history.append(assistant(answer))


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self) -> Session:
        session = Session()
        with self._lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)
