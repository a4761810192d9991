"""HTTP service exposing ingestion, sources and the ask endpoint."""

from .app import create_app
from .sessions import Session, SessionTable, Turn

__all__ = ["Session", "SessionTable", "Turn", "create_app"]
