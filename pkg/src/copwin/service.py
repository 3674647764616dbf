"""Session service: play either role live against a machine strategy.

HTTP + JSON API:

* ``POST /sessions`` {graph, role, strategy, convention} -> {id, state}
* ``GET  /sessions/{id}/state?x0&y0&x1&y1`` -> view within the viewport
* ``POST /sessions/{id}/moves`` {x, y} -> updated view (machine reply applied)
* ``GET  /sessions/{id}/hint`` -> suggested vertex for the human's side
* ``GET  /healthz``

The cop's start is chosen first, then the robber's; machine starts are picked
by the machine's strategy, human starts arrive as the first move posts.
Machine replies are computed synchronously inside the request.  Errors are
{code, message} with 4xx statuses.  Sessions are in-memory only.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional, Union

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .graphs import (
    QUADRANT,
    Box,
    FiniteGraph,
    QuadrantGraph,
    Vertex,
    parse_graph,
    path_graph,
    square_truncation,
    triangular_truncation,
)
from .solver import SolveResult, solve_capture_times
from .strategies import (
    AxisPushCop,
    BoundedMinimaxRobber,
    Convention,
    GameState,
    Move,
    RandomRobber,
    SidestepRobber,
    StayPutRobber,
    TableCop,
    TableRobber,
    Transcript,
    Turn,
    predicted_bound,
)

DEFAULT_COORDINATE_CAP = 10**6
DEFAULT_VIEWPORT = Box(0, 0, 20, 20)
MAX_VIEWPORT_CELLS = 250_000
TABLE_MAX_VERTICES = 600

COP_STRATEGIES = ("pushcop", "tablecop")
ROBBER_STRATEGIES = ("sidestep", "stay", "random", "minimax", "tablerobber")


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def build_graph(spec: str):
    """Resolve a graph spec string to a playable graph.

    ``builtin:quadrant`` (or ``quadrant``) is the infinite graph; other
    builtins are ``builtin:p5``, ``builtin:path:M``, ``builtin:tri:K``,
    ``builtin:sq:N``.  Anything else is read as a graph-format file path.
    """
    s = spec.strip()
    if s in ("quadrant", "builtin:quadrant"):
        return QUADRANT
    if s.startswith("builtin:"):
        body = s[len("builtin:"):]
        try:
            if body == "p5":
                return path_graph(5)
            if body.startswith("path:"):
                return path_graph(int(body.split(":", 1)[1]))
            if body.startswith("tri:"):
                return triangular_truncation(int(body.split(":", 1)[1]))
            if body.startswith("sq:"):
                return square_truncation(int(body.split(":", 1)[1]))
        except ValueError as e:
            raise ApiError(400, "invalid_spec", f"bad builtin graph {s!r}: {e}") from e
        raise ApiError(400, "invalid_spec", f"unknown builtin graph {s!r}")
    try:
        with open(s) as f:
            return parse_graph(f.read(), name=s)
    except OSError as e:
        raise ApiError(400, "invalid_spec", f"cannot read graph file {s!r}: {e}") from e
    except ValueError as e:
        raise ApiError(400, "invalid_spec", f"bad graph file {s!r}: {e}") from e


@dataclass
class Session:
    id: str
    graph: Union[QuadrantGraph, FiniteGraph]
    convention: Convention
    human_role: Turn
    strategy_name: str
    coordinate_cap: int
    table: Optional[SolveResult] = None
    cop: Optional[object] = None
    robber: Optional[object] = None
    phase: str = "choose_cop"  # choose_cop | choose_robber | play | done
    turn: Optional[Turn] = None
    cop_moves: int = 0
    outcome: Optional[str] = None
    transcript: Optional[Transcript] = None
    last_machine_move: Optional[dict] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def machine_role(self) -> Turn:
        return Turn.COP if self.human_role is Turn.ROBBER else Turn.ROBBER

    @property
    def is_infinite(self) -> bool:
        return isinstance(self.graph, QuadrantGraph)

    @property
    def status(self) -> str:
        if self.phase == "done":
            return "Finished"
        if self.phase in ("choose_cop", "choose_robber"):
            chooser = Turn.COP if self.phase == "choose_cop" else Turn.ROBBER
            return "AwaitingHuman" if chooser is self.human_role else "AwaitingMachine"
        return "AwaitingHuman" if self.turn is self.human_role else "AwaitingMachine"

    # ---- position codec: wire positions are always [x, y] pairs ----

    def pos_to_wire(self, p) -> Optional[list[int]]:
        if p is None:
            return None
        if isinstance(p, Vertex):
            return [p.x, p.y]
        return [p, 0]  # abstract finite vertex id embedded on a line

    def wire_to_pos(self, x: int, y: int):
        if self.is_infinite or (isinstance(self.graph, FiniteGraph) and self.graph.has_coords):
            try:
                return Vertex(x, y)
            except ValueError as e:
                raise ApiError(400, "illegal_move", str(e)) from e
        if y != 0:
            raise ApiError(400, "illegal_move", "abstract graphs use [id, 0] positions")
        return x

    def playing_graph(self):
        """Graph object strategies and legality checks run against."""
        if isinstance(self.graph, FiniteGraph) and self.graph.has_coords:
            return self.graph.oracle()
        return self.graph


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def add(self, s: Session) -> None:
        with self._lock:
            self._sessions[s.id] = s

    def get(self, sid: str) -> Session:
        with self._lock:
            s = self._sessions.get(sid)
        if s is None:
            raise ApiError(404, "unknown_session", f"no session {sid!r}")
        return s


def _strategy_by_name(session: Session, name: str):
    if name == "pushcop":
        return AxisPushCop()
    if name == "sidestep":
        return SidestepRobber()
    if name == "stay":
        return StayPutRobber()
    if name == "random":
        return RandomRobber(f"session:{session.id}", session.coordinate_cap)
    if name == "minimax":
        cap = 200
        if isinstance(session.robber, Vertex):
            cap = max(cap, 4 * max(session.robber.x, session.robber.y))
        return BoundedMinimaxRobber(3, cap)
    if name in ("tablecop", "tablerobber"):
        if session.table is None:
            session.table = solve_capture_times(session.graph)
        return TableCop(session.table) if name == "tablecop" else TableRobber(session.table)
    raise ApiError(400, "unknown_strategy", f"no strategy {name!r}")


def _validate_spec(graph, role: str, strategy: str, convention: str) -> tuple[Turn, Convention]:
    if role not in ("cop", "robber"):
        raise ApiError(400, "invalid_spec", f"role must be cop or robber, got {role!r}")
    try:
        conv = Convention(convention)
    except ValueError:
        raise ApiError(400, "invalid_spec", f"convention must be copfirst or robberfirst, got {convention!r}")
    human = Turn(role)
    machine_side = Turn.COP if human is Turn.ROBBER else Turn.ROBBER
    allowed = COP_STRATEGIES if machine_side is Turn.COP else ROBBER_STRATEGIES
    if strategy not in allowed:
        raise ApiError(
            400, "unknown_strategy",
            f"{strategy!r} is not a {machine_side.value} strategy (choose from {', '.join(allowed)})",
        )
    if strategy in ("tablecop", "tablerobber"):
        if isinstance(graph, QuadrantGraph):
            raise ApiError(400, "invalid_spec", "table strategies need a finite graph")
        if graph.n > TABLE_MAX_VERTICES:
            raise ApiError(400, "invalid_spec", f"graph too large to solve for table play (> {TABLE_MAX_VERTICES})")
    if strategy in ("pushcop", "sidestep", "minimax") and not (
        isinstance(graph, QuadrantGraph) or graph.has_coords
    ):
        raise ApiError(400, "invalid_spec", f"{strategy} plays on coordinate graphs only")
    return human, conv


def _start_for(session: Session, side: Turn, strategy_name: str):
    """Starting vertex a strategy of the given side would pick."""
    if side is Turn.COP:
        if strategy_name == "tablecop":
            if session.table is None:
                session.table = solve_capture_times(session.graph)
            i = session.table.best_cop_start()
            return session.graph.labels[i] if session.graph.has_coords else i
        return Vertex(1, 0)
    if strategy_name == "tablerobber":
        if session.table is None:
            session.table = solve_capture_times(session.graph)
        g = session.graph
        cop = session.cop if isinstance(session.cop, int) else g.id_of(session.cop)
        i = session.table.worst_robber_start(cop)
        return g.labels[i] if g.has_coords else i
    if isinstance(session.cop, Vertex):
        # far enough up the diagonal that the cop is not adjacent
        m = max(session.cop.x, session.cop.y, 3) + 2
        v = Vertex(m, m)
        if session.is_infinite or session.playing_graph().contains(v):
            return v
    g = session.graph
    return g.labels[g.n - 1] if g.has_coords else g.n - 1


def _apply_move(session: Session, mover: Turn, target) -> None:
    session.transcript.moves.append(
        Move(mover, session.cop if mover is Turn.COP else session.robber, target)
    )
    if mover is Turn.COP:
        session.cop = target
        session.cop_moves += 1
    else:
        session.robber = target
    if session.cop == session.robber:
        session.phase = "done"
        session.outcome = "captured"
        session.transcript.outcome = "captured"
        session.transcript.cop_moves = session.cop_moves
    else:
        session.turn = Turn.ROBBER if mover is Turn.COP else Turn.COP


def _run_machine(session: Session) -> None:
    """Let the machine act while it is its turn (start choice or moves)."""
    if session.phase == "choose_cop" and session.machine_role is Turn.COP:
        session.cop = _start_for(session, Turn.COP, session.strategy_name)
        session.phase = "choose_robber"
    if session.phase == "choose_robber" and session.machine_role is Turn.ROBBER:
        session.robber = _start_for(session, Turn.ROBBER, session.strategy_name)
        _begin_play(session)
    while session.phase == "play" and session.turn is session.machine_role:
        strategy = _strategy_by_name(session, session.strategy_name)
        state = GameState(session.robber, session.cop, session.turn, session.cop_moves, session.convention)
        target = strategy.next_move(state, session.playing_graph())
        frm = session.cop if session.turn is Turn.COP else session.robber
        session.last_machine_move = {
            "by": session.turn.value,
            "from": session.pos_to_wire(frm),
            "to": session.pos_to_wire(target),
        }
        _apply_move(session, session.machine_role, target)


def _begin_play(session: Session) -> None:
    session.phase = "play"
    session.turn = Turn.COP if session.convention is Convention.COP_FIRST else Turn.ROBBER
    session.transcript = Transcript(
        convention=session.convention,
        cop_strategy=session.strategy_name if session.machine_role is Turn.COP else "human",
        robber_strategy=session.strategy_name if session.machine_role is Turn.ROBBER else "human",
        cop_start=session.cop,
        robber_start=session.robber,
    )
    if session.cop == session.robber:
        session.phase = "done"
        session.outcome = "captured"
        session.transcript.outcome = "captured"
        session.transcript.cop_moves = 0


def _legal_human_moves(session: Session, viewport: Box) -> tuple[list[list[int]], bool]:
    """Human's legal targets inside the viewport, plus an off-viewport flag."""
    g = session.playing_graph()
    if session.phase in ("choose_cop", "choose_robber"):
        cells = []
        for x in range(viewport.x0, viewport.x1 + 1):
            for y in range(viewport.y0, viewport.y1 + 1):
                if session.is_infinite or session.graph.has_coords:
                    p = Vertex(x, y)
                elif y == 0:
                    p = x
                else:
                    continue
                if g.contains(p):
                    cells.append(session.pos_to_wire(p))
        return cells, True  # starts may always be chosen outside any finite window
    if session.phase != "play" or session.turn is not session.human_role:
        return [], False
    mine = session.robber if session.human_role is Turn.ROBBER else session.cop
    if isinstance(mine, Vertex):
        inside = [session.pos_to_wire(v) for v in g.neighbors_within(mine, viewport)]
        if viewport.contains(mine):
            inside.append(session.pos_to_wire(mine))
        if session.is_infinite:
            outside = True  # every vertex has unboundedly many neighbors
        else:
            total = len(session.graph.closed_neighbors(session.graph.id_of(mine)))
            outside = total > len(inside)
        return sorted(inside), outside
    closed = session.graph.closed_neighbors(mine)
    inside = [[i, 0] for i in closed if viewport.x0 <= i <= viewport.x1 and viewport.y0 <= 0 <= viewport.y1]
    return inside, len(inside) < len(closed)


def _view(session: Session, viewport: Box) -> dict:
    legal, outside = _legal_human_moves(session, viewport)
    bound = None
    if isinstance(session.robber, Vertex):
        bound = predicted_bound(session.robber, session.convention)
    return {
        "id": session.id,
        "status": session.status,
        "phase": session.phase,
        "convention": session.convention.value,
        "human_role": session.human_role.value,
        "machine_strategy": session.strategy_name,
        "graph": getattr(session.graph, "name", "quadrant"),
        "positions": {
            "cop": session.pos_to_wire(session.cop),
            "robber": session.pos_to_wire(session.robber),
        },
        "turn": session.turn.value if session.turn else None,
        "cop_moves": session.cop_moves,
        "predicted_bound": bound,
        "legal_moves": legal,
        "moves_exist_outside_viewport": outside,
        "last_machine_move": session.last_machine_move,
        "outcome": session.outcome,
        "transcript": session.transcript.to_dict() if session.transcript else None,
    }


class CreateSessionRequest(BaseModel):
    graph: str
    role: str
    strategy: str
    convention: str


class MoveRequest(BaseModel):
    x: int
    y: int


def _parse_viewport(x0, y0, x1, y1, cap: int) -> Box:
    vals = [x0, y0, x1, y1]
    if all(v is None for v in vals):
        return DEFAULT_VIEWPORT
    if any(v is None for v in vals):
        raise ApiError(400, "invalid_viewport", "provide all of x0, y0, x1, y1 or none")
    box = Box(x0, y0, x1, y1).clamped(0, cap)
    if box.area == 0:
        raise ApiError(400, "invalid_viewport", "empty viewport")
    if box.area > MAX_VIEWPORT_CELLS:
        raise ApiError(400, "invalid_viewport", f"viewport too large (> {MAX_VIEWPORT_CELLS} cells)")
    return box


def create_app(coordinate_cap: int = DEFAULT_COORDINATE_CAP) -> FastAPI:
    app = FastAPI(title="copwin session service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = SessionStore()

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"code": exc.code, "message": exc.message})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(req: CreateSessionRequest):
        graph = build_graph(req.graph)
        human, conv = _validate_spec(graph, req.role, req.strategy, req.convention)
        session = Session(
            id=uuid.uuid4().hex,
            graph=graph,
            convention=conv,
            human_role=human,
            strategy_name=req.strategy,
            coordinate_cap=coordinate_cap,
        )
        if req.strategy in ("tablecop", "tablerobber"):
            session.table = solve_capture_times(graph)
        with session.lock:
            _run_machine(session)
        store.add(session)
        return {"id": session.id, "state": _view(session, DEFAULT_VIEWPORT)}

    @app.get("/sessions/{sid}/state")
    def get_state(
        sid: str,
        x0: Optional[int] = None,
        y0: Optional[int] = None,
        x1: Optional[int] = None,
        y1: Optional[int] = None,
    ):
        session = store.get(sid)
        viewport = _parse_viewport(x0, y0, x1, y1, session.coordinate_cap)
        with session.lock:
            return _view(session, viewport)

    @app.post("/sessions/{sid}/moves")
    def post_move(sid: str, req: MoveRequest):
        session = store.get(sid)
        with session.lock:
            if session.phase == "done":
                raise ApiError(409, "finished", "session is finished")
            if session.status != "AwaitingHuman":
                raise ApiError(409, "wrong_turn", "not the human's turn")
            if req.x > session.coordinate_cap or req.y > session.coordinate_cap or req.x < 0 or req.y < 0:
                raise ApiError(400, "coordinate_cap", f"coordinates capped at {session.coordinate_cap}")
            target = session.wire_to_pos(req.x, req.y)
            g = session.playing_graph()
            if not g.contains(target):
                raise ApiError(400, "illegal_move", f"{[req.x, req.y]} is not a vertex of the graph")
            if session.phase == "choose_cop":
                session.cop = target
                session.phase = "choose_robber"
                _run_machine(session)
            elif session.phase == "choose_robber":
                session.robber = target
                _begin_play(session)
                _run_machine(session)
            else:
                mine = session.robber if session.human_role is Turn.ROBBER else session.cop
                if target != mine and not g.adjacent(mine, target):
                    raise ApiError(400, "illegal_move", f"{[req.x, req.y]} is not in your closed neighborhood")
                _apply_move(session, session.human_role, target)
                if session.phase == "play":
                    _run_machine(session)
            return _view(session, DEFAULT_VIEWPORT)

    @app.get("/sessions/{sid}/hint")
    def get_hint(sid: str):
        session = store.get(sid)
        with session.lock:
            if session.phase == "done":
                raise ApiError(409, "finished", "session is finished")
            if session.status != "AwaitingHuman":
                raise ApiError(409, "wrong_turn", "not the human's turn")
            suggestion = _hint(session)
            return {"x": suggestion[0], "y": suggestion[1]}

    return app


def _hint(session: Session) -> list[int]:
    """Suggestion from the matching machine strategy for the human's side."""
    human = session.human_role
    name = _default_strategy_name(session, human)
    if session.phase in ("choose_cop", "choose_robber"):
        return session.pos_to_wire(_start_for(session, human, name))
    strategy = _strategy_by_name(session, name)
    state = GameState(session.robber, session.cop, human, session.cop_moves, session.convention)
    return session.pos_to_wire(strategy.next_move(state, session.playing_graph()))


def _default_strategy_name(session: Session, side: Turn) -> str:
    if session.is_infinite:
        return "pushcop" if side is Turn.COP else "sidestep"
    return "tablecop" if side is Turn.COP else "tablerobber"
