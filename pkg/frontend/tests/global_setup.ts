// Spawns the real session service for the end-to-end tests.

import { spawn, type ChildProcess } from "node:child_process";

export const E2E_PORT = 8797;
let server: ChildProcess | null = null;

export async function setup(): Promise<void> {
  server = spawn("python3", ["-m", "copwin.cli", "serve", "--port", String(E2E_PORT)], {
    cwd: new URL("../..", import.meta.url).pathname,
    stdio: "ignore",
  });
  const deadline = Date.now() + 15000;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`http://127.0.0.1:${E2E_PORT}/healthz`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("session service did not come up");
}

export async function teardown(): Promise<void> {
  server?.kill();
}
