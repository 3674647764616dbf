"""Executable pursuit strategies and the game runner.

The cop strategy drives the robber onto an axis highway: it captures when
adjacent, otherwise jumps to an axis vertex chosen so that every robber
reply either lands next to the cop or strictly shrinks one coordinate.  The
robber strategy stays put until threatened, then sidesteps just past the cop,
giving up one unit of one coordinate per move.  Both respect the reflection
symmetry across x = y: each is written once for the x-axis orientation and
reflected for the other.

The runner plays any two strategies against each other under either
move-order convention and records a replayable transcript.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol, Union

from .graphs import Vertex
from .solver import SolveResult

Position = Union[Vertex, int]


class Convention(str, Enum):
    """Which side makes the first move from the starting configuration."""

    COP_FIRST = "copfirst"
    ROBBER_FIRST = "robberfirst"


class Turn(str, Enum):
    COP = "cop"
    ROBBER = "robber"


@dataclass(frozen=True)
class GameState:
    robber: Position
    cop: Position
    turn: Turn
    cop_moves_made: int
    convention: Convention


class Strategy(Protocol):
    name: str

    def next_move(self, state: GameState, graph) -> Position: ...


class StrategyError(RuntimeError):
    """A strategy produced an illegal move; the runner aborts loudly."""


class MoveOutsideGraphError(StrategyError):
    """The intended move targets a vertex the graph does not contain.

    Raised by the axis-push cop on truncations too small for its jump;
    clamping would silently change the strategy, so this is a hard error.
    """


def predicted_bound(robber: Vertex, convention: Convention) -> int:
    """Guaranteed capture bound for the axis-push cop, in cop moves.

    Robber-first from (a, b): max(a, b) + 3.  Cop-first costs one extra cop
    move before the robber-first analysis applies: max(a, b) + 4.
    """
    base = max(robber.x, robber.y) + 3
    return base if convention is Convention.ROBBER_FIRST else base + 1


def _x_side(r: Vertex) -> bool:
    """Push toward the x-axis for this robber position?

    The x-axis orientation covers robbers at height <= 1 (the two-move capture
    zone) and interior robbers whose height does not exceed their width by
    more than one; everything else is handled by the reflected orientation.
    The asymmetric tie band keeps the choice stable along a forced descent.
    """
    return r.y <= 1 or (r.x >= 2 and r.y <= r.x + 1)


def axis_push_cop_move(robber: Vertex, cop: Vertex, graph) -> Vertex:
    """The cop move: capture if possible, else pin the robber against an axis.

    The push target on the x-axis side is (robber.x + cop.x + 1, 0): adjacent
    to the cop from anywhere, adjacent to the robber, and positioned so every
    robber reply is either adjacent to it or strictly lower.  The y-axis side
    is the same move reflected across x = y.
    """
    if robber == cop:
        return cop
    if graph.adjacent(cop, robber):
        return robber
    if _x_side(robber):
        target = Vertex(robber.x + cop.x + 1, 0)
    else:
        rr, rc = robber.reflected(), cop.reflected()
        target = Vertex(rr.x + rc.x + 1, 0).reflected()
    if not graph.contains(target):
        raise MoveOutsideGraphError(
            f"push target {target} is outside the graph (truncation too small)"
        )
    return target


def sidestep_robber_move(robber: Vertex, cop: Vertex, graph) -> Vertex:
    """The robber move: stay unless adjacent, else slip just past the cop.

    When the cop is adjacent from below-right, move to (cop.x + 1,
    robber.y - 1): not adjacent to anything the cop's old vertex is adjacent
    to, at the price of one unit of height.  The mirrored threat is answered
    by the reflected move.  Same-axis adjacency has no escape; stay.
    """
    if robber == cop or not graph.adjacent(robber, cop):
        return robber
    if robber.x < cop.x and robber.y > cop.y:
        target = Vertex(cop.x + 1, robber.y - 1)
    elif robber.x > cop.x and robber.y < cop.y:
        rr, rc = robber.reflected(), cop.reflected()
        target = Vertex(rc.x + 1, rr.y - 1).reflected()
    else:
        return robber
    return target if graph.contains(target) else robber


class AxisPushCop:
    name = "pushcop"

    def next_move(self, state: GameState, graph) -> Vertex:
        return axis_push_cop_move(state.robber, state.cop, graph)


class SidestepRobber:
    name = "sidestep"

    def next_move(self, state: GameState, graph) -> Vertex:
        return sidestep_robber_move(state.robber, state.cop, graph)


class StayPutRobber:
    name = "stay"

    def next_move(self, state: GameState, graph) -> Position:
        return state.robber


def _neighborhood_size(r: Vertex, cap: int) -> tuple[int, list[tuple[str, int]]]:
    """Sizes of the closed-neighborhood regions of r within [0..cap]^2."""
    a, b = r
    regions: list[tuple[str, int]] = [("stay", 1)]
    if b == 0:
        regions.append(("xaxis", max(cap - 1, 0) if a <= cap else cap))
    if a == 0:
        regions.append(("yaxis", max(cap - 1, 0) if b <= cap else cap))
    regions.append(("upleft", a * max(cap - b, 0)))
    regions.append(("downright", max(cap - a, 0) * b))
    return sum(c for _, c in regions), regions


def _neighborhood_pick(r: Vertex, cap: int, t: int) -> Vertex:
    """Deterministic index -> vertex mapping over the regions above."""
    a, b = r
    total, regions = _neighborhood_size(r, cap)
    assert 0 <= t < total
    for kind, count in regions:
        if t >= count:
            t -= count
            continue
        if kind == "stay":
            return r
        if kind == "xaxis":
            x = 1 + t
            if x >= a:
                x += 1
            return Vertex(x, 0)
        if kind == "yaxis":
            y = 1 + t
            if y >= b:
                y += 1
            return Vertex(0, y)
        if kind == "upleft":
            rows = cap - b
            return Vertex(t // rows, b + 1 + t % rows)
        rows = b
        return Vertex(a + 1 + t // rows, t % rows)
    raise AssertionError("index out of range")


class RandomRobber:
    """Uniform over the robber's closed neighborhood within [0..cap]^2."""

    def __init__(self, seed: Union[int, str], cap: int):
        self.name = f"random:{seed}"
        self.cap = cap
        self._rng = random.Random(seed)

    def next_move(self, state: GameState, graph) -> Vertex:
        total, _ = _neighborhood_size(state.robber, self.cap)
        for _ in range(8):
            v = _neighborhood_pick(state.robber, self.cap, self._rng.randrange(total))
            if graph.contains(v):
                return v
        return state.robber


class BoundedMinimaxRobber:
    """Adversarial robber: exhaustive lookahead over a bounded move basis.

    Searches `horizon` rounds deep (robber move then cop reply per round)
    over a structured candidate set per position: region corners, moves
    pivoting on the opponent's coordinates, and the sidestep move, all within
    the coordinate cap.  A bounded adversary, not an optimality proof.
    Deterministic: ties prefer positions keeping min(x, y) large, then the
    lexicographically smallest vertex.
    """

    def __init__(self, horizon: int, cap: int):
        self.name = f"minimax:{horizon}:{cap}"
        self.horizon = horizon
        self.cap = cap

    def _robber_candidates(self, r: Vertex, c: Vertex, graph) -> list[Vertex]:
        a, b = r
        M = self.cap
        out = {r}
        if a >= 1 and b < M:  # up-and-left region
            xs = {0, a - 1, c.x - 1, c.x + 1}
            ys = {b + 1, M, c.y - 1, c.y + 1}
            for x in xs:
                for y in ys:
                    if 0 <= x <= a - 1 and b + 1 <= y <= M and (x, y) != (0, 0):
                        out.add(Vertex(x, y))
        if b >= 1 and a < M:  # down-and-right region
            xs = {a + 1, M, c.x - 1, c.x + 1}
            ys = {0, b - 1, c.y - 1, c.y + 1}
            for x in xs:
                for y in ys:
                    if a + 1 <= x <= M and 0 <= y <= b - 1:
                        out.add(Vertex(x, y))
        if b == 0:
            for x in {1, a - 1, a + 1, c.x + 1, M}:
                if 1 <= x <= M and x != a:
                    out.add(Vertex(x, 0))
        if a == 0:
            for y in {1, b - 1, b + 1, c.y + 1, M}:
                if 1 <= y <= M and y != b:
                    out.add(Vertex(0, y))
        side = sidestep_robber_move(r, c, graph)
        if side.x <= M and side.y <= M:
            out.add(side)
        return [
            v
            for v in out
            if graph.contains(v) and (v == r or graph.adjacent(r, v))
        ]

    def _cop_candidates(self, r: Vertex, c: Vertex, graph) -> list[Vertex]:
        # the cap bounds the robber's move space, not the opponent: model the
        # cop's real replies (capture, either axis push, stay)
        if r == c or graph.adjacent(c, r):
            return [r]
        out = {c}
        for t in (Vertex(r.x + c.x + 1, 0), Vertex(0, r.y + c.y + 1)):
            if graph.contains(t) and graph.adjacent(c, t):
                out.add(t)
        return sorted(out)

    def _survival(self, r: Vertex, c: Vertex, graph, h: int, memo: dict) -> int:
        if h == 0:
            return 0
        key = (r, c, h)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best = 0
        for x in self._robber_candidates(r, c, graph):
            val = self._round_value(x, c, graph, h, memo)
            if val > best:
                best = val
                if best >= h:
                    break
        memo[key] = best
        return best

    def _round_value(self, x: Vertex, c: Vertex, graph, h: int, memo: dict) -> int:
        """Survival after the robber commits to x, cop to reply; capped at h."""
        if x == c or graph.adjacent(c, x):
            return 0
        worst = h - 1
        for y in self._cop_candidates(x, c, graph):
            sub = self._survival(x, y, graph, h - 1, memo)
            if sub < worst:
                worst = sub
                if worst == 0:
                    break
        return 1 + worst

    def next_move(self, state: GameState, graph) -> Vertex:
        r, c = state.robber, state.cop
        memo: dict = {}
        best_key = None
        best_move = r
        for x in self._robber_candidates(r, c, graph):
            val = self._round_value(x, c, graph, self.horizon, memo)
            key = (val, min(x.x, x.y), x.x + x.y, (-x.x, -x.y))
            if best_key is None or key > best_key:
                best_key = key
                best_move = x
        return best_move


class TableCop:
    """Optimal cop on a solved finite graph; plays the extracted policy."""

    name = "tablecop"

    def __init__(self, result: SolveResult):
        self.result = result

    def _ids(self, state: GameState) -> tuple[int, int]:
        g = self.result.graph
        r, c = state.robber, state.cop
        try:
            ri = r if isinstance(r, int) else g.id_of(r)
            ci = c if isinstance(c, int) else g.id_of(c)
        except KeyError as e:
            raise StrategyError(f"state position {e} not in solved table") from e
        if not (g.contains(ri) and g.contains(ci)):
            raise StrategyError(f"state ({r}, {c}) not in solved table")
        return ri, ci

    def next_move(self, state: GameState, graph) -> Position:
        ri, ci = self._ids(state)
        out = self.result.cop_policy[ri][ci]
        return out if isinstance(state.cop, int) else self.result.graph.vertex_at(out)


class TableRobber:
    """Optimal robber on a solved finite graph."""

    name = "tablerobber"

    def __init__(self, result: SolveResult):
        self.result = result

    def next_move(self, state: GameState, graph) -> Position:
        g = self.result.graph
        r, c = state.robber, state.cop
        try:
            ri = r if isinstance(r, int) else g.id_of(r)
            ci = c if isinstance(c, int) else g.id_of(c)
        except KeyError as e:
            raise StrategyError(f"state position {e} not in solved table") from e
        out = self.result.robber_policy[ri][ci]
        return out if isinstance(state.robber, int) else g.vertex_at(out)


@dataclass
class Move:
    by: Turn
    frm: Position
    to: Position


CAPTURED = "captured"
MOVE_CAP = "move_cap"


@dataclass
class Transcript:
    """Full move-by-move record of one game; replayable."""

    convention: Convention
    cop_strategy: str
    robber_strategy: str
    cop_start: Position
    robber_start: Position
    moves: list[Move] = field(default_factory=list)
    outcome: str = MOVE_CAP
    cop_moves: int = 0

    @staticmethod
    def _pos_json(p: Position):
        return [p.x, p.y] if isinstance(p, Vertex) else p

    def to_dict(self) -> dict:
        return {
            "convention": self.convention.value,
            "cop_strategy": self.cop_strategy,
            "robber_strategy": self.robber_strategy,
            "starts": {"cop": self._pos_json(self.cop_start), "robber": self._pos_json(self.robber_start)},
            "moves": [
                {"by": m.by.value, "from": self._pos_json(m.frm), "to": self._pos_json(m.to)}
                for m in self.moves
            ],
            "outcome": self.outcome,
            "cop_moves": self.cop_moves,
        }

    @staticmethod
    def _pos_load(raw) -> Position:
        return Vertex(raw[0], raw[1]) if isinstance(raw, list) else raw

    @classmethod
    def from_dict(cls, doc: dict) -> "Transcript":
        t = cls(
            convention=Convention(doc["convention"]),
            cop_strategy=doc["cop_strategy"],
            robber_strategy=doc["robber_strategy"],
            cop_start=cls._pos_load(doc["starts"]["cop"]),
            robber_start=cls._pos_load(doc["starts"]["robber"]),
            outcome=doc["outcome"],
            cop_moves=doc["cop_moves"],
        )
        t.moves = [
            Move(Turn(m["by"]), cls._pos_load(m["from"]), cls._pos_load(m["to"]))
            for m in doc["moves"]
        ]
        return t

    def replay(self, graph) -> bool:
        """Walk the moves, checking legality and that the outcome reproduces."""
        cop, robber = self.cop_start, self.robber_start
        cop_moves = 0
        captured = cop == robber
        for m in self.moves:
            if captured:
                return False
            cur = cop if m.by is Turn.COP else robber
            if m.frm != cur:
                return False
            if m.to != cur and not graph.adjacent(cur, m.to):
                return False
            if m.by is Turn.COP:
                cop = m.to
                cop_moves += 1
            else:
                robber = m.to
            captured = cop == robber
        if captured != (self.outcome == CAPTURED):
            return False
        return cop_moves == self.cop_moves


def default_move_cap(cop_start: Position, robber_start: Position, graph) -> int:
    """Cop-move budget large enough that reaching it indicates a bug."""
    if isinstance(cop_start, Vertex) and isinstance(robber_start, Vertex):
        m = max(cop_start.x, cop_start.y, robber_start.x, robber_start.y)
        return 4 * m + 16
    return 4 * graph.n + 16


def run_game(
    graph,
    cop_strategy: Strategy,
    robber_strategy: Strategy,
    cop_start: Position,
    robber_start: Position,
    convention: Convention = Convention.ROBBER_FIRST,
    move_cap: Optional[int] = None,
) -> Transcript:
    """Alternate moves per the convention until capture or the move cap.

    The cap counts cop moves.  Capture is positions coinciding after either
    side's move; a robber stepping onto the cop is recorded as captured, same
    as the solver's convention.  Illegal strategy output raises StrategyError.
    """
    for p, who in ((cop_start, "cop"), (robber_start, "robber")):
        if not graph.contains(p):
            raise ValueError(f"{who} start {p} is not in the graph")
    if move_cap is None:
        move_cap = default_move_cap(cop_start, robber_start, graph)
    if move_cap < 1:
        raise ValueError("move_cap must be >= 1")
    t = Transcript(
        convention=convention,
        cop_strategy=cop_strategy.name,
        robber_strategy=robber_strategy.name,
        cop_start=cop_start,
        robber_start=robber_start,
    )
    cop, robber = cop_start, robber_start
    cop_moves = 0
    turn = Turn.COP if convention is Convention.COP_FIRST else Turn.ROBBER
    if cop == robber:
        t.outcome, t.cop_moves = CAPTURED, 0
        return t
    while True:
        state = GameState(robber, cop, turn, cop_moves, convention)
        if turn is Turn.COP:
            if cop_moves >= move_cap:
                t.outcome, t.cop_moves = MOVE_CAP, cop_moves
                return t
            mv = cop_strategy.next_move(state, graph)
            if not graph.contains(mv) or (mv != cop and not graph.adjacent(cop, mv)):
                raise StrategyError(
                    f"cop strategy {cop_strategy.name} returned illegal move "
                    f"{cop} -> {mv} (robber at {robber})"
                )
            t.moves.append(Move(Turn.COP, cop, mv))
            cop = mv
            cop_moves += 1
            turn = Turn.ROBBER
        else:
            mv = robber_strategy.next_move(state, graph)
            if not graph.contains(mv) or (mv != robber and not graph.adjacent(robber, mv)):
                raise StrategyError(
                    f"robber strategy {robber_strategy.name} returned illegal move "
                    f"{robber} -> {mv} (cop at {cop})"
                )
            t.moves.append(Move(Turn.ROBBER, robber, mv))
            robber = mv
            turn = Turn.COP
        if cop == robber:
            t.outcome, t.cop_moves = CAPTURED, cop_moves
            return t
