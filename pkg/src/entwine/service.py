"""HTTP session service consumed by the explorer UI.

Sessions live in memory; mutations to one session are serialized by a
per-session lock while distinct sessions proceed concurrently.  With a
snapshot directory configured, sessions persist across restarts and
replay identically for identical seeds.
"""

from __future__ import annotations

import json
import threading
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import BadParameter, EntwineError, UnknownSession
from .measure import joint_peek, peek
from .reps import decompose_product
from .scenario import (
    BUILTIN_DOCS,
    Session,
    apply_ask,
    apply_evolve,
    apply_reset,
    get_scenario,
    new_session,
    resolve_question,
    session_from_snapshot,
)
from .serialize import (
    decomposition_to_doc,
    distribution_to_doc,
    joint_distribution_to_doc,
    scenario_info_doc,
    state_summary_doc,
)

STATUS_BY_CODE = {
    "SCHEMA": 400,
    "VALIDATION": 400,
    "UNKNOWN_NAME": 400,
    "UNKNOWN_SESSION": 404,
    "NON_COMMUTING": 409,
    "INTERNAL": 500,
}


class SessionStore:
    """In-memory sessions with per-session mutation locks."""

    def __init__(self):
        self._guard = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}

    def add(self, session: Session) -> None:
        with self._guard:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()

    def acquire(self, session_id: str):
        with self._guard:
            if session_id not in self._sessions:
                raise UnknownSession(f"no session {session_id!r}")
            return self._sessions[session_id], self._locks[session_id]

    def all_sessions(self) -> list[Session]:
        with self._guard:
            return list(self._sessions.values())

    def save_all(self, directory: Path) -> None:
        directory.mkdir(parents=True, exist_ok=True)
        for session in self.all_sessions():
            path = directory / f"{session.id}.json"
            path.write_text(json.dumps(session.snapshot(), indent=2))

    def load_all(self, directory: Path) -> int:
        count = 0
        for path in sorted(directory.glob("*.json")):
            session = session_from_snapshot(json.loads(path.read_text()))
            self.add(session)
            count += 1
        return count


def _session_view(session: Session) -> dict:
    return {
        "id": session.id,
        "scenario": session.scenario.name,
        "seed": session.seed,
        "questions": session.scenario.question_names(),
        "state_summary": state_summary_doc(session.state),
        "history_length": len(session.history),
    }


def _question_ref(payload: dict):
    if "question" in payload:
        return payload["question"]
    raise BadParameter("request body needs a question")


def create_app(allow_origins=None, snapshot_dir: str | None = None) -> FastAPI:
    store = SessionStore()
    snapshot_path = Path(snapshot_dir) if snapshot_dir else None

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        if snapshot_path and snapshot_path.exists():
            store.load_all(snapshot_path)
        yield
        if snapshot_path:
            store.save_all(snapshot_path)

    app = FastAPI(title="entwine session service", lifespan=lifespan)
    if allow_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(allow_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )
    app.state.store = store

    @app.exception_handler(EntwineError)
    async def on_entwine_error(_: Request, exc: EntwineError):
        doc = {"code": exc.code, "message": exc.message}
        if exc.path:
            doc["path"] = exc.path
        return JSONResponse({"error": doc}, status_code=STATUS_BY_CODE[exc.code])

    @app.exception_handler(RequestValidationError)
    async def on_request_error(_: Request, exc: RequestValidationError):
        return JSONResponse(
            {"error": {"code": "SCHEMA", "message": str(exc.errors()[:1])}},
            status_code=400,
        )

    @app.exception_handler(Exception)
    async def on_unexpected(_: Request, exc: Exception):
        return JSONResponse(
            {"error": {"code": "INTERNAL", "message": str(exc)}}, status_code=500
        )

    @app.get("/scenarios")
    def list_scenarios():
        out = []
        for name, doc in BUILTIN_DOCS.items():
            scenario = get_scenario(name)
            out.append(
                {
                    "name": name,
                    "algebra": scenario.algebra_id,
                    "d": scenario.d,
                    "d_r": scenario.d_r,
                    "options": list(scenario.options),
                    "derived": list(scenario.derived),
                    "questions": scenario.question_names(),
                }
            )
        return {"scenarios": out}

    @app.post("/sessions")
    def create_session(payload: dict = Body(...)):
        if "scenario" not in payload:
            raise BadParameter("request body needs a scenario")
        scenario = get_scenario(payload["scenario"])
        session = new_session(scenario, seed=payload.get("seed"))
        store.add(session)
        return _session_view(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session, lock = store.acquire(session_id)
        with lock:
            return _session_view(session)

    @app.post("/sessions/{session_id}/peek")
    def peek_session(session_id: str, payload: dict = Body(...)):
        session, lock = store.acquire(session_id)
        with lock:
            if "questions" in payload:
                refs = payload["questions"]
                questions = [resolve_question(session.scenario, r) for r in refs]
                dist = joint_peek(session.state, questions)
                return {"questions": refs, **joint_distribution_to_doc(dist)}
            ref = _question_ref(payload)
            q = resolve_question(session.scenario, ref)
            dist = peek(session.state, q)
            return {"question": ref, **distribution_to_doc(dist)}

    @app.post("/sessions/{session_id}/ask")
    def ask_session(session_id: str, payload: dict = Body(...)):
        session, lock = store.acquire(session_id)
        with lock:
            ref = _question_ref(payload)
            q = resolve_question(session.scenario, ref)
            before = distribution_to_doc(peek(session.state, q))
            event = apply_ask(session, ref)
            return {
                "outcome": {
                    k: event[k]
                    for k in ("eigenvalue", "outcome_index", "seq", "seed")
                },
                "distribution_before": before,
                "state_summary": state_summary_doc(session.state),
            }

    @app.post("/sessions/{session_id}/evolve")
    def evolve_session(session_id: str, payload: dict = Body(...)):
        session, lock = store.acquire(session_id)
        with lock:
            ref = _question_ref(payload)
            if "theta" not in payload:
                raise BadParameter("evolve needs a theta angle")
            event = apply_evolve(session, ref, float(payload["theta"]))
            return {
                "event": {"seq": event["seq"], "theta": event["theta"]},
                "state_summary": state_summary_doc(session.state),
            }

    @app.post("/sessions/{session_id}/reset")
    def reset_session(session_id: str):
        session, lock = store.acquire(session_id)
        with lock:
            event = apply_reset(session)
            return {
                "event": {"seq": event["seq"]},
                "state_summary": state_summary_doc(session.state),
            }

    @app.get("/sessions/{session_id}/history")
    def session_history(session_id: str):
        session, lock = store.acquire(session_id)
        with lock:
            return {"id": session.id, "history": [dict(e) for e in session.history]}

    @app.get("/algebra/{scenario_name}/info")
    def algebra_info(scenario_name: str):
        scenario = get_scenario(scenario_name)
        return scenario_info_doc(scenario)

    @app.post("/decompose")
    def decompose_endpoint(payload: dict = Body(...)):
        for key in ("algebra", "factors"):
            if key not in payload:
                raise BadParameter(f"request body needs {key!r}")
        result = decompose_product(
            payload["algebra"],
            [str(f) for f in payload["factors"]],
            payload.get("max_dim"),
        )
        return decomposition_to_doc(
            result, with_isometries=bool(payload.get("with_isometries"))
        )

    return app
