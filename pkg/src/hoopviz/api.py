"""JSON-over-HTTP session service for the browser UI.

Endpoints:
    POST /session                 create {system, kind, optimizer?, seed?}
    POST /session/{id}/command    apply one interaction command
    GET  /session/{id}/state      current snapshot
    GET  /session/{id}/log        event log as tab-separated text

Every successful response carries the freshly rendered SVG so the client
stays thin; command responses add the transition descriptor (1000 ms for
reorder/rotate commands). Errors are JSON {code, message} with 400/404
statuses and never change session state.
"""

from __future__ import annotations

import argparse
import threading
import uuid
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import session as sess
from .errors import (
    HoopvizError,
    InvalidCommandError,
    InvalidSetError,
    InvalidSystemError,
    ParseError,
    ThresholdExceededError,
)
from .ordering import segment_counts
from .render import render_svg
from .set_model import system_from_zones_doc


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def snapshot(
    session_id: str,
    state: sess.SessionState,
    transition: sess.TransitionDescriptor | None = None,
) -> dict[str, Any]:
    """Wire representation of a session state."""
    stats = segment_counts(state.system, state.current_arrangement)
    target = state.highlight.target
    return {
        "session_id": session_id,
        "kind": state.diagram_kind,
        "svg": render_svg(sess.layout(state), state.highlight),
        "highlight": {
            "target": {"variant": target.variant, "index": target.index},
            "emphasis": state.highlight.emphasis,
        },
        "transition": None
        if transition is None
        else {
            "command": transition.command,
            "animation_duration_ms": transition.animation_duration_ms,
            "zone_moves": [
                {"zone": m.index, "from": m.from_position, "to": m.to_position}
                for m in transition.zone_moves
            ],
            "set_moves": [
                {"set": m.index, "from": m.from_position, "to": m.to_position}
                for m in transition.set_moves
            ],
        },
        "segment_stats": {
            "runs_per_set": list(stats.runs_per_set),
            "total": stats.total,
        },
    }


def parse_command(body: Any) -> sess.InteractionCommand:
    """Decode a wire command object into a session command."""
    if not isinstance(body, dict):
        raise InvalidCommandError("command must be a JSON object")
    kind = body.get("kind")
    if kind == "probe":
        try:
            return sess.Probe(float(body["x"]), float(body["y"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidCommandError("probe requires numeric x and y") from exc
    if kind == "bring_to_front":
        return sess.BringToFront(_int_field(body, "set"))
    if kind == "reorder_set":
        return sess.ReorderSet(_int_field(body, "set"))
    if kind == "rotate":
        direction = body.get("direction")
        if direction not in ("left", "right"):
            raise InvalidCommandError("rotate requires direction left or right")
        return sess.Rotate(direction)
    if kind == "reset":
        return sess.Reset()
    raise InvalidCommandError(f"unknown command kind {kind!r}")


def _int_field(body: dict, name: str) -> int:
    value = body.get(name)
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidCommandError(f"{name!r} must be an integer index")
    return value


def create_app() -> FastAPI:
    app = FastAPI(title="hoopviz", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    sessions: dict[str, sess.SessionState] = {}
    locks: dict[str, threading.Lock] = {}
    registry_lock = threading.Lock()

    async def read_json(request: Request) -> Any:
        try:
            return await request.json()
        except Exception as exc:
            raise ParseError(f"invalid JSON body: {exc}") from exc

    @app.exception_handler(HoopvizError)
    async def on_error(_request: Request, exc: HoopvizError):
        if isinstance(exc, InvalidSetError):
            return _error(400, "invalid-index", str(exc))
        if isinstance(exc, ThresholdExceededError):
            return _error(400, "threshold-exceeded", str(exc))
        if isinstance(exc, InvalidSystemError):
            return _error(400, "invalid-system", str(exc))
        if isinstance(exc, ParseError):
            return _error(400, "parse-error", str(exc))
        if isinstance(exc, InvalidCommandError):
            return _error(400, "invalid-command", str(exc))
        return _error(400, "error", str(exc))

    @app.post("/session")
    async def create_session(request: Request):
        body = await read_json(request)
        if not isinstance(body, dict):
            raise InvalidCommandError("request must be a JSON object")
        kind = body.get("kind", "hoop")
        if kind not in ("hoop", "linear"):
            raise InvalidCommandError(f"unknown diagram kind {kind!r}")
        optimizer = body.get("optimizer", "auto")
        seed = body.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise InvalidCommandError("'seed' must be an integer")
        system = system_from_zones_doc(body.get("system"))
        state = sess.create_session(system, kind, optimizer, seed=seed)
        session_id = uuid.uuid4().hex
        with registry_lock:
            sessions[session_id] = state
            locks[session_id] = threading.Lock()
        return snapshot(session_id, state)

    def get_state(session_id: str) -> sess.SessionState | None:
        with registry_lock:
            return sessions.get(session_id)

    @app.post("/session/{session_id}/command")
    async def command(session_id: str, request: Request):
        if get_state(session_id) is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        body = await read_json(request)
        cmd = parse_command(body)
        with locks[session_id]:
            state = sessions[session_id]
            new_state, transition = sess.apply(state, cmd)
            sessions[session_id] = new_state
        return snapshot(session_id, new_state, transition)

    @app.get("/session/{session_id}/state")
    async def state(session_id: str):
        current = get_state(session_id)
        if current is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        return snapshot(session_id, current)

    @app.get("/session/{session_id}/log")
    async def log(session_id: str):
        current = get_state(session_id)
        if current is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        return PlainTextResponse(
            sess.export_log(current), media_type="text/tab-separated-values"
        )

    return app


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(prog="hoopviz-serve")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8750)
    args = parser.parse_args(argv)

    import uvicorn

    uvicorn.run(create_app(), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
