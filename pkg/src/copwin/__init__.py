"""Cops-and-robbers engine on the quadrant graph and finite graphs.

Pieces: graph oracles and truncations (``graphs``), the exact capture-time
solver with its independent stage-iteration oracle (``solver``), executable
pursuit strategies and the game runner (``strategies``), the claim
verification suite (``claims``), a CLI (``cli``), and a live-play HTTP
service (``service``).
"""

from .graphs import (
    QUADRANT,
    Box,
    FiniteGraph,
    GraphFormatError,
    QuadrantGraph,
    Vertex,
    induced_subgraph,
    parse_graph,
    path_graph,
    quadrant_adjacent,
    random_connected_graph,
    serialize_graph,
    square_truncation,
    triangular_truncation,
)
from .solver import (
    ROBBER_WIN,
    CaptureTable,
    SolveResult,
    axis_diagonal_order,
    cop_first_time,
    dismantling_order,
    find_dominated_vertex,
    is_finite,
    solve_capture_times,
    solve_capture_times_naive,
    verify_construction_order,
)
from .strategies import (
    AxisPushCop,
    BoundedMinimaxRobber,
    Convention,
    GameState,
    RandomRobber,
    SidestepRobber,
    StayPutRobber,
    StrategyError,
    TableCop,
    TableRobber,
    Transcript,
    Turn,
    predicted_bound,
    run_game,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
