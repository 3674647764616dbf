// End-to-end against the real service: a human robber plays out a full game
// by clicking cells; the capture banner must show the transcript's cop-move
// count and the displayed history must replay to the displayed final state.

import { describe, expect, it } from "vitest";

import { replayTranscript, samePair } from "../src/model.js";
import { cellAt, domClick, makeApp, until } from "./helpers.js";

const BASE = "http://127.0.0.1:8797";

// node's fetch, explicitly: happy-dom's window fetch does not reach sockets
const nodeFetch = (input: string, init?: RequestInit) => globalThis.fetch(input, init);

describe("full game over the real service", () => {
  it("plays to capture, renders the banner, and history replays", async () => {
    const { app, els } = makeApp(BASE, nodeFetch);
    await app.newSession({
      graph: "builtin:quadrant",
      role: "robber",
      strategy: "pushcop",
      convention: "robberfirst",
    });
    expect(app.currentState?.phase).toBe("choose_robber");
    expect(app.currentState?.positions.cop).toEqual([1, 0]);

    // choose the robber start by clicking the board
    domClick(cellAt(3, 2));
    await until(() => app.currentState?.phase === "play");
    expect(app.currentState?.predicted_bound).toBe(6); // max(3,2)+3, robber first

    // play the hinted (sidestep) move each turn until the game ends
    for (let round = 0; round < 20 && app.currentState?.status !== "Finished"; round++) {
      expect(app.currentState?.status).toBe("AwaitingHuman");
      const hint = await app.requestHint();
      expect(hint).not.toBeNull();
      const state = app.currentState!;
      const before = state.transcript?.moves.length ?? 0;
      domClick(cellAt(hint![0], hint![1]));
      await until(
        () =>
          (app.currentState?.transcript?.moves.length ?? 0) > before ||
          app.currentState?.status === "Finished",
      );
    }

    const final = app.currentState!;
    expect(final.status).toBe("Finished");
    expect(final.outcome).toBe("captured");
    expect(final.cop_moves).toBeLessThanOrEqual(6);
    expect(els.banner.textContent).toBe(`Captured after ${final.transcript!.cop_moves} cop moves`);

    // the displayed history reproduces the displayed final state
    const replayed = replayTranscript(final.transcript!);
    expect(replayed.captured).toBe(true);
    expect(replayed.copMoves).toBe(final.cop_moves);
    expect(samePair(replayed.cop, final.positions.cop)).toBe(true);
    expect(samePair(replayed.robber, final.positions.robber)).toBe(true);
    expect(app.historyConsistent()).toBe(true);
  }, 30000);

  it("illegal clicks never reach the real server", async () => {
    const sent: string[] = [];
    const spying = (input: string, init?: RequestInit) => {
      if (init?.method === "POST") sent.push(input);
      return globalThis.fetch(input, init);
    };
    const { app } = makeApp(BASE, spying);
    await app.newSession({
      graph: "builtin:quadrant",
      role: "robber",
      strategy: "pushcop",
      convention: "robberfirst",
    });
    domClick(cellAt(3, 2)); // start
    await until(() => app.currentState?.phase === "play");
    const before = sent.length;
    // (3,3) is not adjacent to (3,2) in the quadrant graph and not listed
    expect(app.currentState!.legal_moves.some(([x, y]) => x === 3 && y === 3)).toBe(false);
    domClick(cellAt(3, 3));
    await new Promise((r) => setTimeout(r, 50));
    expect(sent.length).toBe(before);
  }, 30000);

  it("panning refetches legal moves for the new window", async () => {
    const { app } = makeApp(BASE, nodeFetch);
    await app.newSession({
      graph: "builtin:quadrant",
      role: "robber",
      strategy: "pushcop",
      convention: "robberfirst",
    });
    domClick(cellAt(14, 11));
    await until(() => app.currentState?.phase === "play");
    const legalBefore = app.currentState!.legal_moves.length;
    await app.pan(8, 0);
    expect(app.currentViewport).toEqual({ x0: 8, y0: 0, x1: 28, y1: 20 });
    const legalAfter = app.currentState!.legal_moves.length;
    expect(legalAfter).not.toBe(legalBefore);
    expect(app.currentState!.moves_exist_outside_viewport).toBe(true);
  }, 30000);
});
