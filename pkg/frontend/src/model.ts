// View model and pure helpers: viewport math, the legal-move set (the only
// authority for clickability), and transcript replay. No DOM, no network.

import type { Pair, StateView, Transcript, Viewport } from "./api.js";

export const DEFAULT_VIEWPORT: Viewport = { x0: 0, y0: 0, x1: 20, y1: 20 };

export interface ViewModel {
  view: StateView;
  viewport: Viewport;
  /** cell keys "x,y" the server currently allows the human to click */
  legal: Set<string>;
  /** optimistic highlight while a move is in flight */
  pending: Pair | null;
  toast: string | null;
}

export function cellKey(x: number, y: number): string {
  return `${x},${y}`;
}

export function buildViewModel(
  view: StateView,
  viewport: Viewport,
  pending: Pair | null = null,
  toast: string | null = null,
): ViewModel {
  const legal = new Set(view.legal_moves.map(([x, y]) => cellKey(x, y)));
  return { view, viewport, legal, pending, toast };
}

export function clampViewport(vp: Viewport, cap: number): Viewport {
  const w = Math.min(vp.x1 - vp.x0, cap);
  const h = Math.min(vp.y1 - vp.y0, cap);
  const x0 = Math.max(0, Math.min(vp.x0, cap - w));
  const y0 = Math.max(0, Math.min(vp.y0, cap - h));
  return { x0, y0, x1: x0 + w, y1: y0 + h };
}

export function pannedViewport(vp: Viewport, dx: number, dy: number, cap: number): Viewport {
  return clampViewport(
    { x0: vp.x0 + dx, y0: vp.y0 + dy, x1: vp.x1 + dx, y1: vp.y1 + dy },
    cap,
  );
}

/** Quadrant-graph neighborhood regions of a vertex, for display shading only;
 * the server's legal-move list remains the authority for interaction. */
export interface Regions {
  upLeft: Viewport | null;
  downRight: Viewport | null;
  xAxis: boolean;
  yAxis: boolean;
}

export function neighborhoodRegions([x, y]: Pair, vp: Viewport): Regions {
  const upLeft =
    x > vp.x0 && y < vp.y1
      ? { x0: vp.x0, y0: Math.max(y + 1, vp.y0), x1: Math.min(x - 1, vp.x1), y1: vp.y1 }
      : null;
  const downRight =
    x < vp.x1 && y > vp.y0
      ? { x0: Math.max(x + 1, vp.x0), y0: vp.y0, x1: vp.x1, y1: Math.min(y - 1, vp.y1) }
      : null;
  return {
    upLeft: upLeft && upLeft.x0 <= upLeft.x1 && upLeft.y0 <= upLeft.y1 ? upLeft : null,
    downRight:
      downRight && downRight.x0 <= downRight.x1 && downRight.y0 <= downRight.y1
        ? downRight
        : null,
    xAxis: y === 0,
    yAxis: x === 0,
  };
}

export interface ReplayOutcome {
  cop: Pair;
  robber: Pair;
  copMoves: number;
  captured: boolean;
}

/** Walk a transcript from its starts; used to check the displayed final
 * state against the recorded history. */
export function replayTranscript(t: Transcript): ReplayOutcome {
  let cop = t.starts.cop;
  let robber = t.starts.robber;
  let copMoves = 0;
  for (const m of t.moves) {
    if (m.by === "cop") {
      cop = m.to;
      copMoves += 1;
    } else {
      robber = m.to;
    }
  }
  return {
    cop,
    robber,
    copMoves,
    captured: cop[0] === robber[0] && cop[1] === robber[1],
  };
}

export function samePair(a: Pair | null, b: Pair | null): boolean {
  return a !== null && b !== null && a[0] === b[0] && a[1] === b[1];
}
