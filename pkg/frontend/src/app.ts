// Application wiring: one session per page, one in-flight move at a time,
// polling only while the machine owes a reply. Clicks are accepted only on
// cells the server listed as legal; everything else never reaches the
// network.

import { ApiError, GameClient, type Pair, type SessionSpec, type StateView, type Viewport } from "./api.js";
import { Board } from "./board.js";
import {
  DEFAULT_VIEWPORT,
  buildViewModel,
  cellKey,
  pannedViewport,
  replayTranscript,
  samePair,
} from "./model.js";

export const COORDINATE_CAP = 1_000_000;
const POLL_MS = 400;

export interface AppElements {
  board: HTMLElement;
  status: HTMLElement;
  bound: HTMLElement;
  counter: HTMLElement;
  history: HTMLElement;
  banner: HTMLElement;
  toast: HTMLElement;
  offViewport: HTMLElement;
}

export class App {
  private state: StateView | null = null;
  private sessionId: string | null = null;
  private viewport: Viewport = { ...DEFAULT_VIEWPORT };
  private pending: Pair | null = null;
  private inflight = false;
  private pollTimer: ReturnType<typeof setTimeout> | null = null;
  /** requests the app actually sent; tests assert on this */
  readonly sentMoves: Pair[] = [];
  private board: Board;

  constructor(
    private client: GameClient,
    private els: AppElements,
  ) {
    this.board = new Board(els.board, {
      onCellClick: (x, y) => void this.clickCell(x, y),
      onHover: (cell) => {
        this.board.setHover(cell);
        this.renderBoard();
      },
    });
  }

  get currentState(): StateView | null {
    return this.state;
  }

  get currentViewport(): Viewport {
    return this.viewport;
  }

  async newSession(spec: SessionSpec): Promise<void> {
    const { id } = await this.client.createSession(spec);
    this.sessionId = id;
    this.viewport = { ...DEFAULT_VIEWPORT };
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (!this.sessionId) return;
    this.apply(await this.client.getState(this.sessionId, this.viewport));
  }

  /** Click handler; resolves when any resulting round-trip settled. */
  async clickCell(x: number, y: number): Promise<void> {
    const view = this.state;
    if (!view || !this.sessionId) return;
    if (view.status !== "AwaitingHuman") return; // not our turn: ignore silently
    if (this.inflight) return; // one in-flight move per session
    if (!buildViewModel(view, this.viewport).legal.has(cellKey(x, y))) {
      return; // outside the server's legal set: no request
    }
    this.inflight = true;
    this.pending = [x, y];
    this.render();
    try {
      this.sentMoves.push([x, y]);
      const next = await this.client.postMove(this.sessionId, x, y);
      this.pending = null;
      this.apply(next);
    } catch (err) {
      this.pending = null;
      this.showToast(err instanceof ApiError ? `${err.code}: ${err.message}` : String(err));
      await this.refresh(); // revert to the server's view
    } finally {
      this.inflight = false;
    }
  }

  async pan(dx: number, dy: number): Promise<void> {
    this.viewport = pannedViewport(this.viewport, dx, dy, COORDINATE_CAP);
    await this.refresh();
  }

  async requestHint(): Promise<Pair | null> {
    if (!this.sessionId || this.state?.status !== "AwaitingHuman") return null;
    const h = await this.client.getHint(this.sessionId);
    return [h.x, h.y];
  }

  private apply(view: StateView): void {
    this.state = view;
    this.render();
    this.schedulePoll();
  }

  private schedulePoll(): void {
    if (this.pollTimer) {
      clearTimeout(this.pollTimer);
      this.pollTimer = null;
    }
    if (this.state?.status === "AwaitingMachine") {
      this.pollTimer = setTimeout(() => void this.refresh(), POLL_MS);
    }
  }

  private showToast(message: string): void {
    this.els.toast.textContent = message;
    this.els.toast.classList.add("visible");
    setTimeout(() => this.els.toast.classList.remove("visible"), 2500);
  }

  private renderBoard(): void {
    if (!this.state) return;
    this.board.render(buildViewModel(this.state, this.viewport, this.pending));
  }

  private render(): void {
    const view = this.state;
    if (!view) return;
    this.renderBoard();

    const phaseText: Record<string, string> = {
      choose_cop: "choose the cop's start",
      choose_robber: "choose the robber's start",
      play: view.turn ? `${view.turn} to move` : "",
      done: "game over",
    };
    this.els.status.textContent =
      view.status === "Finished"
        ? "finished"
        : `${view.status === "AwaitingHuman" ? "your turn" : "machine thinking"} — ${phaseText[view.phase] ?? ""}`;
    this.els.bound.textContent =
      view.predicted_bound === null ? "—" : `capture within ${view.predicted_bound} cop moves`;
    this.els.counter.textContent = `${view.cop_moves}`;
    this.els.offViewport.hidden = !view.moves_exist_outside_viewport;

    const history = view.transcript?.moves ?? [];
    this.els.history.replaceChildren(
      ...history.map((m, i) => {
        const li = document.createElement("li");
        li.textContent = `${i + 1}. ${m.by}: (${m.from[0]},${m.from[1]}) → (${m.to[0]},${m.to[1]})`;
        return li;
      }),
    );

    if (view.status === "Finished" && view.outcome === "captured") {
      this.els.banner.textContent = `Captured after ${view.transcript?.cop_moves ?? view.cop_moves} cop moves`;
      this.els.banner.classList.add("visible", "captured");
    } else if (view.status === "Finished") {
      this.els.banner.textContent = "Move cap reached";
      this.els.banner.classList.add("visible");
    } else {
      this.els.banner.textContent = "";
      this.els.banner.classList.remove("visible", "captured");
    }
  }

  /** History-vs-display consistency: replaying the shown transcript must
   * reproduce the shown positions and counter. */
  historyConsistent(): boolean {
    const view = this.state;
    if (!view?.transcript) return true;
    const replayed = replayTranscript(view.transcript);
    return (
      samePair(replayed.cop, view.positions.cop) &&
      samePair(replayed.robber, view.positions.robber) &&
      (view.status !== "Finished" || replayed.captured === (view.outcome === "captured"))
    );
  }
}
