"""Game sessions and the HTTP facade for interactive play and analysis.

Sessions live in memory behind per-session locks; an optional append-only
JSON-lines event log allows rebuilding them after a restart.  All sessions
share one transposition table, so solver work is reused across games.

Annotations here are evaluated at runtime: the request models are closure
locals, and the HTTP layer needs to resolve them when the routes are built.
"""

import json
import secrets
import threading
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from . import rewrite, solver
from .errors import (
    GameOver,
    IllegalMove,
    KnotGameError,
    NotAKnot,
    NotYourTurn,
    ParseError,
    PositionTooLarge,
)
from .tangle import (
    MoveDescriptor,
    SumPosition,
    format_position,
    parse_position,
)

DEFAULT_CROSSING_CAP = 20


class GameStatus(Enum):
    IN_PROGRESS = "in-progress"
    UNKNOTTER_WON = "unknotter-won"
    KNOTTER_WON = "knotter-won"


class SessionNotFound(KnotGameError):
    """No session with the requested id."""


@dataclass
class GameSession:
    id: str
    position: SumPosition
    initial: SumPosition
    engine_plays: solver.Player
    to_move: str  # "human" | "engine"
    status: GameStatus = GameStatus.IN_PROGRESS
    history: list[tuple[MoveDescriptor, str]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def version(self) -> int:
        return len(self.history)

    def side_to_move(self) -> solver.Player:
        if self.to_move == "engine":
            return self.engine_plays
        return self.engine_plays.opponent


def _status_of(position: SumPosition) -> GameStatus:
    if not position.fully_resolved:
        return GameStatus.IN_PROGRESS
    return GameStatus.UNKNOTTER_WON if position.is_unknot() else GameStatus.KNOTTER_WON


class GameStore:
    """In-memory session registry with optional event-log recovery."""

    def __init__(
        self,
        *,
        crossing_cap: int = DEFAULT_CROSSING_CAP,
        event_log: str | Path | None = None,
        table: solver.TranspositionTable | None = None,
    ) -> None:
        self.crossing_cap = crossing_cap
        self.table = table if table is not None else solver.TranspositionTable()
        self._sessions: dict[str, GameSession] = {}
        self._registry_lock = threading.Lock()
        self._log_lock = threading.Lock()
        self._event_log = Path(event_log) if event_log is not None else None
        if self._event_log is not None and self._event_log.exists():
            self._recover()

    # -- persistence ----------------------------------------------------

    def _append_event(self, event: dict[str, Any]) -> None:
        if self._event_log is None:
            return
        with self._log_lock:
            with self._event_log.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(event) + "\n")
                fh.flush()

    def _recover(self) -> None:
        assert self._event_log is not None
        log_path = self._event_log
        self._event_log = None  # replaying must not re-log
        try:
            for line in log_path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                event = json.loads(line)
                if event["event"] == "create":
                    self.create(
                        event["position"],
                        engine_role=event["engine_role"],
                        first_mover=event["first_mover"],
                        session_id=event["id"],
                    )
                elif event["event"] == "move":
                    move = MoveDescriptor(
                        event["component"], event["region"], event["sign"]
                    )
                    if event["mover"] == "human":
                        self.submit_human_move(event["id"], move)
                    else:
                        self.engine_move(event["id"])
        finally:
            self._event_log = log_path

    # -- session API ----------------------------------------------------

    def create(
        self,
        position_text: str,
        *,
        engine_role: str = "knotter",
        first_mover: str = "human",
        session_id: str | None = None,
    ) -> GameSession:
        position = parse_position(position_text)
        for comp in position.components:
            if not comp.is_knot():
                raise NotAKnot(f"component {comp} closes to a two-component link")
        if position.unresolved_count() > self.crossing_cap:
            raise PositionTooLarge(
                f"{position.unresolved_count()} unresolved crossings exceed the cap of {self.crossing_cap}"
            )
        if engine_role not in ("unknotter", "knotter"):
            raise ParseError(f"engine_role must be 'unknotter' or 'knotter', got {engine_role!r}")
        if first_mover not in ("human", "engine"):
            raise ParseError(f"first_mover must be 'human' or 'engine', got {first_mover!r}")
        session = GameSession(
            id=session_id or secrets.token_hex(8),
            position=position,
            initial=position,
            engine_plays=solver.Player(engine_role),
            to_move=first_mover,
            status=_status_of(position),
        )
        with self._registry_lock:
            self._sessions[session.id] = session
        self._append_event(
            {
                "event": "create",
                "id": session.id,
                "position": position_text,
                "engine_role": engine_role,
                "first_mover": first_mover,
            }
        )
        return session

    def get(self, session_id: str) -> GameSession:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionNotFound(f"no session {session_id!r}")
        return session

    def sessions(self) -> list[GameSession]:
        with self._registry_lock:
            return list(self._sessions.values())

    def _apply(self, session: GameSession, move: MoveDescriptor, mover: str) -> None:
        session.position = session.position.apply_move(move)
        session.history.append((move, mover))
        session.status = _status_of(session.position)
        if session.status is GameStatus.IN_PROGRESS:
            session.to_move = "engine" if mover == "human" else "human"
        self._append_event(
            {
                "event": "move",
                "id": session.id,
                "component": move.component,
                "region": move.region,
                "sign": move.sign,
                "mover": mover,
            }
        )

    def submit_human_move(
        self, session_id: str, move: MoveDescriptor, *, expected_version: int | None = None
    ) -> GameSession:
        session = self.get(session_id)
        with session.lock:
            if session.status is not GameStatus.IN_PROGRESS:
                raise GameOver(f"game finished: {session.status.value}")
            if session.to_move != "human":
                raise NotYourTurn("engine is to move")
            if expected_version is not None and expected_version != session.version:
                raise IllegalMove(
                    f"stale version {expected_version}, session is at {session.version}"
                )
            self._apply(session, MoveDescriptor(*move), "human")
        return session

    def engine_move(self, session_id: str) -> tuple[MoveDescriptor, GameSession]:
        """Perform the engine's move: a winning option if one exists, else the
        first legal option, both in deterministic region order."""
        session = self.get(session_id)
        with session.lock:
            if session.status is not GameStatus.IN_PROGRESS:
                raise GameOver(f"game finished: {session.status.value}")
            if session.to_move != "engine":
                raise NotYourTurn("human is to move")
            engine_side = session.engine_plays
            chosen: MoveDescriptor | None = None
            for move, successor in session.position.options():
                winner = solver.wins_moving_first(
                    successor, engine_side.opponent, table=self.table
                )
                if winner is engine_side:
                    chosen = move
                    break
            if chosen is None:
                chosen = session.position.options()[0][0]
            self._apply(session, chosen, "engine")
        return chosen, session

    def analyze_session(self, session_id: str) -> dict[str, Any]:
        session = self.get(session_id)
        with session.lock:
            position = session.position
            status = session.status
            side = session.side_to_move()
        moves = []
        if status is GameStatus.IN_PROGRESS:
            moves = annotate_moves(position, side, table=self.table)
        return {
            "id": session_id,
            "position": format_position(position),
            "side_to_move": side.value if status is GameStatus.IN_PROGRESS else None,
            "moves": moves,
        }


def annotate_moves(
    position: SumPosition,
    side: solver.Player,
    *,
    table: solver.TranspositionTable | None = None,
) -> list[dict[str, Any]]:
    """Outcome class after each legal move, and whether it wins for ``side``."""
    out = []
    for move, successor in position.options():
        winner = solver.wins_moving_first(successor, side.opponent, table=table)
        out.append(
            {
                "component": move.component,
                "region": move.region,
                "sign": move.sign,
                "outcome_after": solver.outcome(successor, table=table).value,
                "winning_for_mover": winner is side,
            }
        )
    return out


def snapshot(session: GameSession) -> dict[str, Any]:
    with session.lock:
        position = session.position
        status = session.status
        to_move = session.to_move
        history = list(session.history)
        version = session.version
    winner = None
    if status is GameStatus.UNKNOTTER_WON:
        winner = "unknotter"
    elif status is GameStatus.KNOTTER_WON:
        winner = "knotter"
    return {
        "id": session.id,
        "position": format_position(position),
        "components": [
            [{"resolved": r.resolved, "unresolved": r.unresolved} for r in comp.regions]
            for comp in position.components
        ],
        "engine_plays": session.engine_plays.value,
        "to_move": to_move if status is GameStatus.IN_PROGRESS else None,
        "status": status.value,
        "winner": winner,
        "version": version,
        "history": [
            {"component": m.component, "region": m.region, "sign": m.sign, "mover": mover}
            for m, mover in history
        ],
        "legal_moves": [
            {"component": m.component, "region": m.region, "sign": m.sign}
            for m, _ in position.options()
        ],
    }


_HTTP_STATUS = {
    "ParseError": 400,
    "NotAKnot": 400,
    "NotAShadow": 400,
    "IllegalMove": 400,
    "PositionTooLarge": 400,
    "NotYourTurn": 409,
    "GameOver": 409,
    "SessionNotFound": 404,
    "BudgetExceeded": 400,
}


def create_app(
    store: GameStore | None = None,
    *,
    crossing_cap: int = DEFAULT_CROSSING_CAP,
    event_log: str | Path | None = None,
    ui_dir: str | Path | None = None,
):
    """Build the FastAPI application around a session store."""
    from fastapi import FastAPI, Request
    from fastapi.responses import JSONResponse
    from pydantic import BaseModel

    if store is None:
        store = GameStore(crossing_cap=crossing_cap, event_log=event_log)

    class CreateGameBody(BaseModel):
        position: str
        engine_role: str = "knotter"
        first_mover: str = "human"

    class MoveBody(BaseModel):
        component: int
        region: int
        sign: int
        version: int | None = None

    app = FastAPI(title="knotgame", version="0.1.0")
    app.state.store = store

    @app.exception_handler(KnotGameError)
    async def _knot_error(request: Request, exc: KnotGameError):
        code = type(exc).__name__
        return JSONResponse(
            status_code=_HTTP_STATUS.get(code, 400),
            content={"code": code, "message": str(exc)},
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "sessions": len(store.sessions())}

    @app.post("/games", status_code=201)
    def create_game(body: CreateGameBody):
        session = store.create(
            body.position, engine_role=body.engine_role, first_mover=body.first_mover
        )
        return snapshot(session)

    @app.get("/games/{session_id}")
    def get_game(session_id: str):
        return snapshot(store.get(session_id))

    @app.post("/games/{session_id}/moves")
    def post_move(session_id: str, body: MoveBody):
        session = store.submit_human_move(
            session_id,
            MoveDescriptor(body.component, body.region, body.sign),
            expected_version=body.version,
        )
        return snapshot(session)

    @app.post("/games/{session_id}/engine-move")
    def post_engine_move(session_id: str):
        move, session = store.engine_move(session_id)
        snap = snapshot(session)
        snap["engine_move"] = {
            "component": move.component,
            "region": move.region,
            "sign": move.sign,
        }
        return snap

    @app.get("/games/{session_id}/analysis")
    def get_analysis(session_id: str):
        return store.analyze_session(session_id)

    @app.get("/analyze")
    def analyze(position: str):
        pos = parse_position(position)
        for comp in pos.components:
            if not comp.is_knot():
                raise NotAKnot(f"component {comp} closes to a two-component link")
        if pos.unresolved_count() > store.crossing_cap:
            raise PositionTooLarge(
                f"{pos.unresolved_count()} unresolved crossings exceed the cap of {store.crossing_cap}"
            )
        result: dict[str, Any] = {
            "position": format_position(pos),
            "parity": pos.parity(),
            "outcome": solver.outcome(pos, table=store.table).value,
            "winners": {
                "unknotter_first": solver.wins_moving_first(
                    pos, solver.Player.UNKNOTTER, table=store.table
                ).value,
                "knotter_first": solver.wins_moving_first(
                    pos, solver.Player.KNOTTER, table=store.table
                ).value,
            },
            "moves": [
                {
                    "component": ann["component"],
                    "region": ann["region"],
                    "sign": ann["sign"],
                    "outcome_after": ann["outcome_after"],
                    "winning_for_unknotter": ann["winning_for_mover"],
                }
                for ann in annotate_moves(pos, solver.Player.UNKNOTTER, table=store.table)
            ],
        }
        if pos.is_shadow:
            classifications = []
            for comp in pos.components:
                shadow_class = rewrite.classify_shadow(comp)
                classifications.append(
                    {
                        "component": str(comp),
                        "kind": shadow_class.kind.value,
                        "trace": rewrite.format_trace(shadow_class.witness),
                    }
                )
            result["classification"] = classifications
        return result

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
