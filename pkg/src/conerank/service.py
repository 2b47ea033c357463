"""HTTP JSON API powering the what-if workbench.

Sessions live in memory only (LRU-evicted scratchpads); all geometry and
ranking math runs server-side so the browser only renders numbers it was
sent.  A session's problem is replaced atomically on panel updates, and
derived cones/rankings are cached per panel content.
"""

from __future__ import annotations

import math
import threading
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import analysis
from .cones import DEFAULT_TOLERANCE
from .distribution import rank_alternatives
from .model import (
    DecisionProblem,
    ImportanceVector,
    JudgePanel,
    ProblemFormatError,
    parse_problem,
    validate_problem,
)

DEFAULT_MAX_SESSIONS = 256


@dataclass
class SessionState:
    session_id: str
    problem: DecisionProblem
    cache: dict = field(default_factory=dict)


class SessionStore:
    """Thread-safe LRU map of session id to state."""

    def __init__(self, max_sessions: int = DEFAULT_MAX_SESSIONS):
        self._max = max_sessions
        self._lock = threading.Lock()
        self._sessions: OrderedDict[str, SessionState] = OrderedDict()

    def create(self, problem: DecisionProblem) -> SessionState:
        state = SessionState(session_id=uuid.uuid4().hex, problem=problem)
        with self._lock:
            self._sessions[state.session_id] = state
            while len(self._sessions) > self._max:
                self._sessions.popitem(last=False)
        return state

    def get(self, session_id: str) -> SessionState | None:
        with self._lock:
            state = self._sessions.get(session_id)
            if state is not None:
                self._sessions.move_to_end(session_id)
            return state

    def replace(self, session_id: str, state: SessionState) -> None:
        with self._lock:
            if session_id in self._sessions:
                self._sessions[session_id] = state
                self._sessions.move_to_end(session_id)


def _error(status: int, message: str, violations=None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": message, "violations": list(violations or [])},
    )


def _panel_key(panel: JudgePanel) -> tuple:
    return tuple((j.judge_id, j.weights) for j in panel.judges)


def _cached_rank_payload(state: SessionState, judge_ids, tol: float) -> dict:
    key = (_panel_key(state.problem.panel), tuple(judge_ids) if judge_ids else None)
    cached = state.cache.get(key)
    if cached is not None:
        return cached
    importance, _ = analysis.panel_cones(state.problem.panel, judge_ids, tol=tol)
    result = rank_alternatives(
        state.problem.evaluations,
        importance,
        state.problem.alternative_ids(),
        tol=tol,
    )
    payload = analysis.rank_payload(importance, result)
    state.cache[key] = payload
    return payload


def _summary(problem: DecisionProblem) -> dict:
    return {
        "criteria": [{"id": c.id, "label": c.label} for c in problem.criteria],
        "alternatives": [{"id": a.id, "label": a.label} for a in problem.alternatives],
        "d": problem.d,
        "m": problem.m,
        "judges": [
            {"id": j.judge_id, "weights": list(j.weights)} for j in problem.panel.judges
        ],
        "evaluations": [list(col) for col in problem.evaluations.columns],
    }


def create_app(
    max_sessions: int = DEFAULT_MAX_SESSIONS,
    static_dir: str | None = None,
    tol: float = DEFAULT_TOLERANCE,
) -> FastAPI:
    app = FastAPI(title="conerank", docs_url=None, redoc_url=None)
    store = SessionStore(max_sessions=max_sessions)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        try:
            body = (await request.body()).decode("utf-8")
        except UnicodeDecodeError:
            return _error(400, "request body is not valid UTF-8")
        if not body.strip():
            return _error(400, "malformed problem document: empty body")
        try:
            problem = parse_problem(body)
        except ProblemFormatError as exc:
            return _error(400, "invalid problem document", violations=[str(exc)])
        state = store.create(problem)
        return JSONResponse(
            status_code=201,
            content={"session_id": state.session_id, "summary": _summary(problem)},
        )

    def _session_or_error(session_id: str):
        state = store.get(session_id)
        if state is None:
            return None, _error(404, f"unknown session {session_id!r}")
        return state, None

    def _judge_subset(state: SessionState, judges: str | None):
        if judges is None:
            return None, None
        ids = [j.strip() for j in judges.split(",") if j.strip()]
        if not ids:
            return None, _error(422, "empty judge subset")
        known = set(state.problem.judge_ids())
        unknown = [j for j in ids if j not in known]
        if unknown:
            return None, _error(422, f"unknown judge id(s): {', '.join(unknown)}")
        return ids, None

    @app.get("/sessions/{session_id}/rank")
    def query_ranking(session_id: str, judges: str | None = None):
        state, err = _session_or_error(session_id)
        if err:
            return err
        ids, err = _judge_subset(state, judges)
        if err:
            return err
        return _cached_rank_payload(state, ids, tol)

    @app.put("/sessions/{session_id}/panel")
    async def update_panel(session_id: str, request: Request):
        state, err = _session_or_error(session_id)
        if err:
            return err
        try:
            data = await request.json()
        except Exception:
            return _error(400, "malformed JSON body")
        judges = data.get("judges") if isinstance(data, dict) else None
        if not isinstance(judges, list) or not judges:
            return _error(400, "body must provide a non-empty 'judges' array")
        rows = []
        for j, row in enumerate(judges):
            if not isinstance(row, list) or not all(
                isinstance(w, (int, float)) and not isinstance(w, bool) for w in row
            ):
                return _error(400, f"judge #{j + 1} must be an array of numbers")
            rows.append(tuple(float(w) for w in row))
        panel = JudgePanel(
            tuple(
                ImportanceVector(f"j{i + 1}", weights) for i, weights in enumerate(rows)
            )
        )
        candidate = DecisionProblem(
            state.problem.criteria,
            state.problem.alternatives,
            panel,
            state.problem.evaluations,
        )
        violations = validate_problem(candidate)
        if violations:
            return _error(400, "invalid importance vectors", violations=violations)
        new_state = SessionState(session_id=state.session_id, problem=candidate)
        store.replace(session_id, new_state)
        payload = analysis.cones_payload(candidate, tol=tol)
        payload["ranks"] = _cached_rank_payload(new_state, None, tol)
        payload["summary"] = _summary(candidate)
        return payload

    @app.get("/sessions/{session_id}/classify")
    def query_classification(session_id: str, p: str, judges: str | None = None):
        state, err = _session_or_error(session_id)
        if err:
            return err
        ids, err = _judge_subset(state, judges)
        if err:
            return err
        try:
            level = float(p)
        except ValueError:
            return _error(422, f"p must be a float in (0, 1), got {p!r}")
        if not (0.0 < level < 1.0) or math.isnan(level):
            return _error(422, f"p must lie in the open interval (0, 1), got {p}")
        return analysis.classify_payload(state.problem, level, ids, tol=tol)

    @app.get("/sessions/{session_id}/cones")
    def query_cones(session_id: str, judges: str | None = None):
        state, err = _session_or_error(session_id)
        if err:
            return err
        ids, err = _judge_subset(state, judges)
        if err:
            return err
        return analysis.cones_payload(state.problem, ids, tol=tol)

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="workbench")

    return app


app = create_app()
