// Shared test scaffolding: the page skeleton and a DOM click helper.

import { App, type AppElements } from "../src/app.js";
import { GameClient, type FetchLike } from "../src/api.js";

export function mountPage(): AppElements {
  document.body.innerHTML = `
    <div id="status"></div>
    <div id="bound"></div>
    <div id="counter"></div>
    <div id="off-viewport" hidden></div>
    <ol id="history"></ol>
    <div id="banner" class="banner"></div>
    <div id="board"></div>
    <div id="toast" class="toast"></div>
  `;
  const grab = (id: string) => document.getElementById(id) as HTMLElement;
  return {
    board: grab("board"),
    status: grab("status"),
    bound: grab("bound"),
    counter: grab("counter"),
    history: grab("history"),
    banner: grab("banner"),
    toast: grab("toast"),
    offViewport: grab("off-viewport"),
  };
}

export function makeApp(baseUrl: string, fetchFn?: FetchLike): { app: App; els: AppElements } {
  const els = mountPage();
  const app = new App(new GameClient(baseUrl, fetchFn), els);
  return { app, els };
}

export function cellAt(x: number, y: number): SVGRectElement {
  const el = document.querySelector(`rect[data-x="${x}"][data-y="${y}"]`);
  if (!el) throw new Error(`no cell (${x}, ${y}) rendered`);
  return el as SVGRectElement;
}

export function domClick(el: Element): void {
  el.dispatchEvent(new Event("click", { bubbles: true }));
}

export async function until(cond: () => boolean, ms = 4000): Promise<void> {
  const start = Date.now();
  while (!cond()) {
    if (Date.now() - start > ms) throw new Error("condition not reached in time");
    await new Promise((r) => setTimeout(r, 15));
  }
}
