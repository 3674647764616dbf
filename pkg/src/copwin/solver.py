"""Exact capture times on finite graphs.

Two independent routes compute the same table of robber-first capture values:

* ``solve_capture_times`` — backward induction over the product game
  (robber position, cop position, side to move), a counter-based attractor
  that runs in time linear in the product game's transitions.
* ``solve_capture_times_naive`` — literal stage-by-stage evaluation of the
  domination-style relations (stage 0 is equality; each next stage quantifies
  over closed neighborhoods), intended for small graphs as the oracle.

Values count cop moves; pairs the cop can never win are ``ROBBER_WIN``.
Also here: dominated-vertex search, dismantling orders, construction-order
checking, and the solved-table cache / CSV export.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO, Union

from .graphs import FiniteGraph, GraphOracle, Vertex


ROBBER_WIN = math.inf
CaptureValue = Union[int, float]  # a cop-move count, or ROBBER_WIN


def is_finite(value: CaptureValue) -> bool:
    return value != ROBBER_WIN


@dataclass
class CaptureTable:
    """Per-pair robber-first capture values for one graph.

    ``values[u][v]`` is the number of cop moves needed to capture a robber at
    ``u`` from cop start ``v`` with the robber moving first, or ``ROBBER_WIN``.
    ``stages`` is the stage at which the underlying relation reached its fixed
    point (equal to the largest finite value in the table).
    """

    graph: FiniteGraph
    values: list[list[CaptureValue]]
    stages: int

    @property
    def graph_hash(self) -> str:
        return self.graph.content_hash()

    def value(self, robber: int, cop: int) -> CaptureValue:
        return self.values[robber][cop]

    def per_cop_start(self) -> list[CaptureValue]:
        """Worst capture time from each cop start (max over robber starts)."""
        n = self.graph.n
        return [max(self.values[u][v] for u in range(n)) for v in range(n)]

    @property
    def best_capture_time(self) -> CaptureValue:
        """Capture time of the graph: best cop start against the worst robber."""
        return min(self.per_cop_start())

    @property
    def worst_capture_time(self) -> CaptureValue:
        """Maximum capture time over all starting positions."""
        return max(self.per_cop_start())

    @property
    def copwin(self) -> bool:
        return any(is_finite(v) for v in self.per_cop_start())

    def to_cache_dict(self) -> dict:
        flat = [-1 if not is_finite(x) else int(x) for row in self.values for x in row]
        eta_g = self.best_capture_time
        rho_g = self.worst_capture_time
        return {
            "graph_hash": self.graph_hash,
            "eta": flat,
            "eta_G": -1 if not is_finite(eta_g) else int(eta_g),
            "rho_G": -1 if not is_finite(rho_g) else int(rho_g),
            "copwin": self.copwin,
        }

    def write_cache(self, path: str) -> None:
        with open(path, "w") as f:
            json.dump(self.to_cache_dict(), f, separators=(",", ":"))

    @staticmethod
    def read_cache(path: str, graph: FiniteGraph) -> Optional["CaptureTable"]:
        """Load a cached table if it matches the graph's content hash."""
        try:
            with open(path) as f:
                doc = json.load(f)
        except (OSError, json.JSONDecodeError):
            return None
        if doc.get("graph_hash") != graph.content_hash():
            return None
        n = graph.n
        flat = doc.get("eta")
        if not isinstance(flat, list) or len(flat) != n * n:
            return None
        values: list[list[CaptureValue]] = [
            [ROBBER_WIN if x < 0 else x for x in flat[r * n : (r + 1) * n]] for r in range(n)
        ]
        stages = max((x for row in values for x in row if is_finite(x)), default=0)
        return CaptureTable(graph, values, int(stages))

    def write_csv(self, out: TextIO) -> None:
        """Matrix of values with vertex labels; -1 marks robber-win pairs."""
        w = csv.writer(out)
        g = self.graph
        w.writerow(["robber\\cop"] + [g.label_str(v) for v in range(g.n)])
        for u in range(g.n):
            w.writerow(
                [g.label_str(u)]
                + [(-1 if not is_finite(x) else int(x)) for x in self.values[u]]
            )


class SolveResult:
    """Capture table plus deterministic optimal policies (extracted lazily).

    ``cop_policy[u][v]`` is the cop's chosen reply (a vertex id in N[v]) when
    the robber sits at ``u`` and the cop at ``v`` with the cop to move;
    ``robber_policy[u][v]`` the robber's chosen move (in N[u]) when the robber
    is to move.  Ties break to the lexicographically smallest vertex.
    """

    def __init__(self, table: CaptureTable, cop_move_values: list[CaptureValue]):
        self.table = table
        self._value_c = cop_move_values  # flat (robber * n + cop), cop to move
        self._cop_policy: Optional[list[list[int]]] = None
        self._robber_policy: Optional[list[list[int]]] = None

    @property
    def graph(self) -> FiniteGraph:
        return self.table.graph

    @property
    def copwin(self) -> bool:
        return self.table.copwin

    @property
    def best_capture_time(self) -> CaptureValue:
        return self.table.best_capture_time

    @property
    def worst_capture_time(self) -> CaptureValue:
        return self.table.worst_capture_time

    def best_cop_start(self) -> int:
        """Lexicographically first cop start achieving the best capture time."""
        per = self.table.per_cop_start()
        best = min(per)
        return per.index(best)

    def worst_robber_start(self, cop: int) -> int:
        col = [self.table.values[u][cop] for u in range(self.graph.n)]
        worst = max(col)
        return col.index(worst)

    @property
    def cop_policy(self) -> list[list[int]]:
        if self._cop_policy is None:
            self._extract_policies()
        return self._cop_policy

    @property
    def robber_policy(self) -> list[list[int]]:
        if self._robber_policy is None:
            self._extract_policies()
        return self._robber_policy

    def _extract_policies(self) -> None:
        g = self.graph
        n = g.n
        closed = [g.closed_neighbors(i) for i in range(n)]
        vr = self.table.values
        vc = self._value_c
        cop_policy = [[0] * n for _ in range(n)]
        robber_policy = [[0] * n for _ in range(n)]
        for u in range(n):
            row = vr[u]
            un = u * n
            for v in range(n):
                if u == v:
                    cop_policy[u][v] = v
                    robber_policy[u][v] = u
                    continue
                # cop to move at (u, v): first y in N[v] achieving the min
                target = vc[un + v]
                best = None
                for y in closed[v]:
                    sub = row[y]
                    if sub == target - 1 or (target == ROBBER_WIN and sub == ROBBER_WIN):
                        best = y
                        break
                cop_policy[u][v] = best if best is not None else closed[v][0]
                # robber to move at (u, v): first x in N[u] achieving the max
                target = row[v]
                best = None
                for x in closed[u]:
                    if vc[x * n + v] == target:
                        best = x
                        break
                robber_policy[u][v] = best if best is not None else u
        self._cop_policy = cop_policy
        self._robber_policy = robber_policy


_NUMPY_THRESHOLD = 64  # below this, plain lists beat numpy call overhead


def solve_capture_times(g: FiniteGraph) -> SolveResult:
    """Backward induction on the product game, linear in its transitions.

    States are (robber, cop, side-to-move).  Cop-to-move states finalize at
    1 + the first finalized successor (a min); robber-to-move states finalize
    when their last successor finalizes (a max), tracked with
    remaining-successor counters.  States never finalized are robber wins.
    Coincident positions have value 0 for either side to move, so a robber
    stepping onto the cop counts as immediate capture.

    Large graphs batch each state's predecessor updates through numpy; the
    finalization values are identical to the sequential order (min/max
    semantics are order-free within a value level).
    """
    n = g.n
    if n < 1:
        raise ValueError("solve needs a graph with at least one vertex")
    if n >= _NUMPY_THRESHOLD:
        value_r, value_c = _attractor_numpy(g)
    else:
        value_r, value_c = _attractor_lists(g)
    UNSET = -1
    values: list[list[CaptureValue]] = [
        [ROBBER_WIN if value_r[u * n + v] == UNSET else int(value_r[u * n + v]) for v in range(n)]
        for u in range(n)
    ]
    stages = max((x for row in values for x in row if is_finite(x)), default=0)
    table = CaptureTable(g, values, int(stages))
    vc: list[CaptureValue] = [ROBBER_WIN if x == UNSET else int(x) for x in value_c]
    return SolveResult(table, vc)


def _attractor_lists(g: FiniteGraph) -> tuple[list[int], list[int]]:
    n = g.n
    closed = [g.closed_neighbors(i) for i in range(n)]
    size = n * n
    UNSET = -1
    value_r = [UNSET] * size  # robber to move
    value_c = [UNSET] * size  # cop to move
    counter = [0] * size
    for u in range(n):
        cu = len(closed[u])
        base = u * n
        for v in range(n):
            counter[base + v] = cu
    buckets: list[list[int]] = [[]]
    # encode work items as signed state ids: +idx robber-to-move, -idx-1 cop-to-move
    for v in range(n):
        idx = v * n + v
        value_r[idx] = 0
        value_c[idx] = 0
        buckets[0].append(idx)
        buckets[0].append(-idx - 1)
    w = 0
    while w < len(buckets):
        queue = buckets[w]
        i = 0
        while i < len(queue):
            item = queue[i]
            i += 1
            if item >= 0:
                # robber-to-move state (u, v) finalized at w: cop predecessors
                # are (u, c) for c in N[v] (cop could move c -> v).
                u, v = divmod(item, n)
                un = u * n
                wc = w + 1
                if wc >= len(buckets):
                    buckets.append([])
                tgt = buckets[wc]
                for c in closed[v]:
                    j = un + c
                    if value_c[j] == UNSET:
                        value_c[j] = wc
                        tgt.append(-j - 1)
            else:
                # cop-to-move state (x, v) finalized at w: robber predecessors
                # are (u, v) for u in N[x] (robber could move u -> x).
                idx = -item - 1
                x, v = divmod(idx, n)
                for u in closed[x]:
                    j = u * n + v
                    if value_r[j] == UNSET:
                        counter[j] -= 1
                        if counter[j] == 0:
                            value_r[j] = w
                            queue.append(j)
        w += 1
    return value_r, value_c


def _attractor_numpy(g: FiniteGraph) -> tuple["np.ndarray", "np.ndarray"]:
    import numpy as np

    n = g.n
    size = n * n
    UNSET = -1
    closed_scaled = [np.asarray(g.closed_neighbors(i), dtype=np.int64) * n for i in range(n)]
    closed_plain = [np.asarray(g.closed_neighbors(i), dtype=np.int64) for i in range(n)]
    value_r = np.full(size, UNSET, dtype=np.int64)
    value_c = np.full(size, UNSET, dtype=np.int64)
    counter = np.repeat(
        np.fromiter((len(g.closed_neighbors(i)) for i in range(n)), dtype=np.int64, count=n), n
    )
    diag = np.arange(n, dtype=np.int64) * (n + 1)
    counter[diag] = 1 << 60  # pre-finalized; never reaches zero
    value_r[diag] = 0
    value_c[diag] = 0
    # work items: (is_robber, flat ids); diagonal states seed level 0
    buckets: list[list[tuple[bool, "np.ndarray"]]] = [[(True, diag), (False, diag)]]
    w = 0
    while w < len(buckets):
        queue = buckets[w]
        i = 0
        while i < len(queue):
            is_robber, ids = queue[i]
            i += 1
            if is_robber:
                wc = w + 1
                if wc >= len(buckets):
                    buckets.append([])
                tgt = buckets[wc]
                for item in ids.tolist():
                    u, v = divmod(item, n)
                    cands = closed_plain[v] + u * n  # cop states (u, c), c in N[v]
                    newly = cands[value_c[cands] == UNSET]
                    if newly.size:
                        value_c[newly] = wc
                        tgt.append((False, newly))
            else:
                for item in ids.tolist():
                    x, v = divmod(item, n)
                    cands = closed_scaled[x] + v  # robber states (u, v), u in N[x]
                    counter[cands] -= 1
                    newly = cands[counter[cands] == 0]
                    if newly.size:
                        value_r[newly] = w
                        queue.append((True, newly))
        w += 1
    return value_r, value_c


def solve_capture_times_naive(g: FiniteGraph) -> CaptureTable:
    """Stage-by-stage relation computation; the independent oracle.

    Stage 0 relates equal vertices only.  A pair (u, v) enters stage t+1 when
    for every x in N[u] there exists y in N[v] already related to x.  Iterates
    to the fixed point with literal quantifier evaluation; the stage at which
    a pair first enters is its capture value.  Intended for small graphs.
    """
    if g.n < 1:
        raise ValueError("solve needs a graph with at least one vertex")
    n = g.n
    closed = [g.closed_neighbors(i) for i in range(n)]
    values: list[list[CaptureValue]] = [
        [0 if u == v else ROBBER_WIN for v in range(n)] for u in range(n)
    ]
    related = [[u == v for v in range(n)] for u in range(n)]
    stage = 0
    while True:
        added = []
        for u in range(n):
            for v in range(n):
                if related[u][v]:
                    continue
                ok = True
                for x in closed[u]:
                    if not any(related[x][y] for y in closed[v]):
                        ok = False
                        break
                if ok:
                    added.append((u, v))
        if not added:
            return CaptureTable(g, values, stage)
        stage += 1
        for u, v in added:
            related[u][v] = True
            values[u][v] = stage


def cop_first_time(table: CaptureTable, robber: int, cop: int) -> CaptureValue:
    """Capture value when the cop moves first, derived from the table.

    Zero on coincident positions; otherwise one cop move plus the best
    robber-first value over the cop's closed neighborhood.
    """
    if robber == cop:
        return 0
    best = min(table.values[robber][y] for y in table.graph.closed_neighbors(cop))
    return ROBBER_WIN if not is_finite(best) else 1 + best


def _dominators(closed: Sequence[frozenset[int]], x: int, candidates: Sequence[int]) -> Optional[int]:
    nx = closed[x]
    for y in candidates:
        if y != x and nx <= closed[y]:
            return y
    return None


def find_dominated_vertex(g: FiniteGraph) -> Optional[tuple[int, int]]:
    """Lexicographically first dominated vertex with its first dominator.

    A vertex x is dominated by y when N[x] is contained in N[y] (closed
    neighborhoods).  Returns (x, y) ids, or None if nothing is dominated.
    """
    closed = [frozenset(g.closed_neighbors(i)) for i in range(g.n)]
    order = range(g.n)  # ids are already in label order
    for x in order:
        y = _dominators(closed, x, order)
        if y is not None:
            return (x, y)
    return None


def dismantling_order(g: FiniteGraph) -> Optional[list[int]]:
    """Removal order obtained by repeatedly deleting the first dominated vertex.

    Returns the n-1 removed vertex ids (reverse construction order), or None
    when the graph is not dismantlable.  For finite graphs an order exists iff
    the solver reports the graph cop-win.
    """
    closed = {i: set(g.closed_neighbors(i)) for i in range(g.n)}
    removed: list[int] = []
    while len(closed) > 1:
        found = None
        for x in sorted(closed):
            nx = closed[x]
            for y in sorted(closed):
                if y != x and nx <= closed[y]:
                    found = x
                    break
            if found is not None:
                break
        if found is None:
            return None
        removed.append(found)
        del closed[found]
        for s in closed.values():
            s.discard(found)
    return removed


@dataclass
class ConstructionCheck:
    """Outcome of validating a construction order."""

    ok: bool
    failure_index: Optional[int] = None
    dominators: list[Optional[Vertex]] = field(default_factory=list)


def verify_construction_order(oracle: GraphOracle, order: Sequence[Vertex]) -> ConstructionCheck:
    """Check that each vertex is dominated by an earlier one when added.

    Validates within the induced subgraph on the prefix, per the oracle's
    adjacency.  Reports the actual dominator found for every position (the
    lexicographically first earlier vertex that works) and the first failing
    index, if any.  Raises on duplicates or vertices outside the oracle.
    """
    if not order:
        raise ValueError("order must be non-empty")
    if len(set(order)) != len(order):
        raise ValueError("order contains duplicate vertices")
    for v in order:
        if not oracle.contains(v):
            raise ValueError(f"{v} is not a vertex of the oracle graph")
    dominators: list[Optional[Vertex]] = [None]
    closed: dict[Vertex, set[Vertex]] = {order[0]: {order[0]}}
    for i in range(1, len(order)):
        v = order[i]
        closed[v] = {v}
        for u in list(closed):
            if u != v and oracle.adjacent(u, v):
                closed[u].add(v)
                closed[v].add(u)
        dom = None
        nv = closed[v]
        for u in sorted(order[:i]):
            if nv <= closed[u]:
                dom = u
                break
        if dom is None:
            return ConstructionCheck(False, i, dominators)
        dominators.append(dom)
    return ConstructionCheck(True, None, dominators)


def axis_diagonal_order(k: int) -> list[Vertex]:
    """Construction order for the triangular truncation of size k.

    Starts (1,0), (0,1), then for each diagonal sum d = 2..k adds the y-axis
    endpoint (0,d) followed by the slope -1 sweep (1,d-1), ..., (d,0).  Every
    vertex is dominated by an earlier one at the moment it is added, so the
    order passes verify_construction_order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    order = [Vertex(1, 0), Vertex(0, 1)]
    for d in range(2, k + 1):
        order.append(Vertex(0, d))
        order.extend(Vertex(x, d - x) for x in range(1, d + 1))
    return order
