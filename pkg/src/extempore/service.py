"""HTTP API over sites and sessions, for the companion UI and batch clients.

Sessions live in memory with an idle expiry; distinct sessions are fully
independent, and requests against one session are serialized by a
per-session lock. Domain errors surface as 422 responses whose bodies
carry the engine's stable error codes; unknown sites/sessions are 404 and
malformed bodies are 400.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import analysis
from .errors import ExtemporeError
from .fixtures import (
    full_congress_document,
    full_congress_vocab_document,
    mini_congress_document,
    mini_vocab_document,
)
from .session import Session
from .site import SiteTree, load_site
from .vocab import FunctionalDependency, Lexicon, build_lexicon, parse_fds

DEFAULT_IDLE_SECONDS = 30 * 60


@dataclass
class SiteEntry:
    site: SiteTree
    lexicon: Lexicon
    fds: tuple[FunctionalDependency, ...] = ()

    @classmethod
    def from_documents(cls, site_document, vocab_document=None) -> "SiteEntry":
        site = load_site(site_document)
        return cls(
            site=site,
            lexicon=build_lexicon(site, vocab_document),
            fds=parse_fds(site, vocab_document) if vocab_document else (),
        )


def default_catalog() -> list[SiteEntry]:
    return [
        SiteEntry.from_documents(mini_congress_document(), mini_vocab_document()),
        SiteEntry.from_documents(full_congress_document(), full_congress_vocab_document()),
    ]


@dataclass
class _Slot:
    session: Session
    entry: SiteEntry
    created: float
    last_access: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session registry with lazy idle expiry."""

    def __init__(self, idle_seconds: float, clock: Callable[[], float]) -> None:
        self._slots: dict[str, _Slot] = {}
        self._idle = idle_seconds
        self._clock = clock
        self._lock = threading.Lock()

    def create(self, entry: SiteEntry) -> tuple[str, _Slot]:
        now = self._clock()
        with self._lock:
            expired = [sid for sid, slot in self._slots.items() if now - slot.last_access > self._idle]
            for sid in expired:
                del self._slots[sid]
            sid = uuid.uuid4().hex
            slot = _Slot(
                session=Session(entry.site), entry=entry, created=now, last_access=now
            )
            self._slots[sid] = slot
        return sid, slot

    def get(self, sid: str) -> Optional[_Slot]:
        now = self._clock()
        with self._lock:
            slot = self._slots.get(sid)
            if slot is None:
                return None
            if now - slot.last_access > self._idle:
                del self._slots[sid]
                return None
            slot.last_access = now
            return slot


class CreateSessionBody(BaseModel):
    siteId: str


class ClickBody(BaseModel):
    label: str


class UtteranceBody(BaseModel):
    text: str


def _error_response(status: int, code: str, message: str, details: dict | None = None):
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message, "details": details or {}}},
    )


def create_app(
    catalog: Sequence[SiteEntry] | None = None,
    *,
    idle_seconds: float = DEFAULT_IDLE_SECONDS,
    clock: Callable[[], float] = time.monotonic,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service; ``catalog`` defaults to the bundled fixtures."""
    entries = list(catalog) if catalog is not None else default_catalog()
    if not entries:
        raise ValueError("service needs at least one site")
    by_id: dict[str, SiteEntry] = {}
    for entry in entries:
        if entry.site.site_id in by_id:
            raise ValueError(f"duplicate site id {entry.site.site_id!r} in catalog")
        by_id[entry.site.site_id] = entry
    store = SessionStore(idle_seconds=idle_seconds, clock=clock)

    app = FastAPI(title="extempore", version="0.1.0")
    app.state.store = store
    app.state.catalog = by_id

    @app.exception_handler(ExtemporeError)
    async def _domain_error(request: Request, exc: ExtemporeError):
        return _error_response(422, exc.code, exc.message, exc.details)

    @app.exception_handler(RequestValidationError)
    async def _bad_body(request: Request, exc: RequestValidationError):
        return _error_response(400, "bad-request", "malformed request body", {"errors": exc.errors()})

    def _slot_or_404(sid: str) -> _Slot | JSONResponse:
        slot = store.get(sid)
        if slot is None:
            return _error_response(404, "unknown-session", f"no session {sid!r}")
        return slot

    @app.get("/sites")
    def list_sites():
        return [
            {
                "id": entry.site.site_id,
                "title": entry.site.title,
                "facets": list(entry.site.facets),
                "leafCount": entry.site.leaf_count,
            }
            for entry in entries
        ]

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        entry = by_id.get(body.siteId)
        if entry is None:
            return _error_response(404, "unknown-site", f"no site {body.siteId!r}")
        sid, slot = store.create(entry)
        return {"sessionId": sid, "summary": slot.session.summary()}

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        slot = _slot_or_404(sid)
        if isinstance(slot, JSONResponse):
            return slot
        with slot.lock:
            return slot.session.summary()

    @app.post("/sessions/{sid}/click")
    def click(sid: str, body: ClickBody):
        slot = _slot_or_404(sid)
        if isinstance(slot, JSONResponse):
            return slot
        with slot.lock:
            slot.session.click(body.label)
            return slot.session.summary()

    @app.post("/sessions/{sid}/utterance")
    def utterance(sid: str, body: UtteranceBody):
        slot = _slot_or_404(sid)
        if isinstance(slot, JSONResponse):
            return slot
        with slot.lock:
            before = slot.session.fork()
            slot.session.utter(body.text, slot.entry.lexicon, slot.entry.fds)
            tokens = analysis.tokenize_aspects(before, slot.session.events[-1].aspects)
            return {"summary": slot.session.summary(), "tokens": tokens}

    @app.post("/sessions/{sid}/back")
    def back(sid: str):
        slot = _slot_or_404(sid)
        if isinstance(slot, JSONResponse):
            return slot
        with slot.lock:
            slot.session.back()
            return slot.session.summary()

    @app.get("/sessions/{sid}/what-may-i-say")
    def what_may_i_say(sid: str):
        slot = _slot_or_404(sid)
        if isinstance(slot, JSONResponse):
            return slot
        with slot.lock:
            return slot.session.what_may_i_say()

    @app.get("/sessions/{sid}/log")
    def session_log(sid: str):
        slot = _slot_or_404(sid)
        if isinstance(slot, JSONResponse):
            return slot
        with slot.lock:
            records = analysis.session_records(slot.session)
            return analysis.log_document(slot.entry.site, records)

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path and ui_path.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_path), html=True), name="ui")

        @app.get("/")
        def root_redirect():
            from fastapi.responses import RedirectResponse

            return RedirectResponse("/ui/")

    else:

        @app.get("/")
        def root():
            return {"service": "extempore", "sites": sorted(by_id)}

    return app
