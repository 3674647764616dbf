// Entry point: bind the form and controls, start the app.

import { GameClient, type SessionSpec } from "./api.js";
import { App, type AppElements } from "./app.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "http://127.0.0.1:8642";

const els: AppElements = {
  board: byId("board"),
  status: byId("status"),
  bound: byId("bound"),
  counter: byId("counter"),
  history: byId("history"),
  banner: byId("banner"),
  toast: byId("toast"),
  offViewport: byId("off-viewport"),
};

const app = new App(new GameClient(apiBase), els);

byId<HTMLFormElement>("session-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const spec: SessionSpec = {
    graph: byId<HTMLSelectElement>("graph").value,
    role: byId<HTMLSelectElement>("role").value as SessionSpec["role"],
    strategy: byId<HTMLSelectElement>("strategy").value,
    convention: byId<HTMLSelectElement>("convention").value as SessionSpec["convention"],
  };
  void app.newSession(spec).catch((err) => {
    els.toast.textContent = String(err);
    els.toast.classList.add("visible");
  });
});

const PAN_STEP = 8;
byId("pan-left").addEventListener("click", () => void app.pan(-PAN_STEP, 0));
byId("pan-right").addEventListener("click", () => void app.pan(PAN_STEP, 0));
byId("pan-up").addEventListener("click", () => void app.pan(0, PAN_STEP));
byId("pan-down").addEventListener("click", () => void app.pan(0, -PAN_STEP));
byId("hint").addEventListener("click", () => {
  void app.requestHint().then((h) => {
    if (h) {
      els.toast.textContent = `hint: (${h[0]}, ${h[1]})`;
      els.toast.classList.add("visible");
      setTimeout(() => els.toast.classList.remove("visible"), 2000);
    }
  });
});

// role choice narrows the machine strategy list
const strategySelect = byId<HTMLSelectElement>("strategy");
const roleSelect = byId<HTMLSelectElement>("role");
function syncStrategies(): void {
  const machineIsCop = roleSelect.value === "robber";
  const options = machineIsCop
    ? ["pushcop", "tablecop"]
    : ["sidestep", "stay", "random", "minimax", "tablerobber"];
  strategySelect.replaceChildren(
    ...options.map((name) => {
      const o = document.createElement("option");
      o.value = name;
      o.textContent = name;
      return o;
    }),
  );
}
roleSelect.addEventListener("change", syncStrategies);
syncStrategies();

export { app };
