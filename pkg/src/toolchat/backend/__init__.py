"""User-facing backend: sessions, query execution, event streaming."""

from .app import create_backend_app
from .sessions import NotConnected, Session, SessionStore

__all__ = ["NotConnected", "Session", "SessionStore", "create_backend_app"]
