"""In-memory session table with TTL eviction.

Sessions are an exploratory conversation, not an archive: they live in
process memory and expire after an idle hour by default.  Asks on the
same session serialize through a per-session lock so the append-only
history has a total order.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

DEFAULT_TTL_SECONDS = 3600


@dataclass
class Turn:
    question: str
    answer_text: str
    citations: list[str]


@dataclass
class Session:
    session_id: str
    collection_id: str
    turns: list[Turn] = field(default_factory=list)
    created_at: float = field(default_factory=time.time)
    last_used: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def history(self) -> list[tuple[str, str]]:
        return [(turn.question, turn.answer_text) for turn in self.turns]


class SessionTable:
    def __init__(self, ttl_seconds: int = DEFAULT_TTL_SECONDS):
        self.ttl_seconds = ttl_seconds
        self._sessions: dict[str, Session] = {}
        self._guard = threading.Lock()

    def _purge(self, now: float) -> None:
        expired = [
            sid for sid, s in self._sessions.items()
            if now - s.last_used > self.ttl_seconds
        ]
        for sid in expired:
            del self._sessions[sid]

    def create(self, collection_id: str) -> Session:
        session = Session(session_id=secrets.token_urlsafe(16), collection_id=collection_id)
        with self._guard:
            self._purge(time.time())
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        now = time.time()
        with self._guard:
            self._purge(now)
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_used = now
            return session

    def append_turn(self, session: Session, turn: Turn) -> None:
        session.turns.append(turn)
        session.last_used = time.time()

    def __len__(self) -> int:
        with self._guard:
            return len(self._sessions)
