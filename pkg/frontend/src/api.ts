// Typed client for the session service. Field names mirror the wire format
// exactly; this module is the only place that talks to the network.

export type Pair = [number, number];

export interface Viewport {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface TranscriptMove {
  by: "cop" | "robber";
  from: Pair;
  to: Pair;
}

export interface Transcript {
  convention: string;
  cop_strategy: string;
  robber_strategy: string;
  starts: { cop: Pair; robber: Pair };
  moves: TranscriptMove[];
  outcome: string;
  cop_moves: number;
}

export interface StateView {
  id: string;
  status: "AwaitingHuman" | "AwaitingMachine" | "Finished";
  phase: "choose_cop" | "choose_robber" | "play" | "done";
  convention: "copfirst" | "robberfirst";
  human_role: "cop" | "robber";
  machine_strategy: string;
  graph: string;
  positions: { cop: Pair | null; robber: Pair | null };
  turn: "cop" | "robber" | null;
  cop_moves: number;
  predicted_bound: number | null;
  legal_moves: Pair[];
  moves_exist_outside_viewport: boolean;
  last_machine_move: TranscriptMove | null;
  outcome: "captured" | "move_cap" | null;
  transcript: Transcript | null;
}

export interface SessionSpec {
  graph: string;
  role: "cop" | "robber";
  strategy: string;
  convention: "copfirst" | "robberfirst";
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class GameClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, body.code ?? "error", body.message ?? resp.statusText);
    }
    return body as T;
  }

  createSession(spec: SessionSpec): Promise<{ id: string; state: StateView }> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(spec),
    });
  }

  getState(id: string, vp: Viewport): Promise<StateView> {
    const q = `x0=${vp.x0}&y0=${vp.y0}&x1=${vp.x1}&y1=${vp.y1}`;
    return this.request(`/sessions/${id}/state?${q}`);
  }

  postMove(id: string, x: number, y: number): Promise<StateView> {
    return this.request(`/sessions/${id}/moves`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ x, y }),
    });
  }

  getHint(id: string): Promise<{ x: number; y: number }> {
    return this.request(`/sessions/${id}/hint`);
  }

  health(): Promise<{ status: string }> {
    return this.request("/healthz");
  }
}
