/** Spawn a real kgforge gateway for end-to-end tests.
 *
 * The server runs `python3 -m kgforge.cli serve` in a fresh temp directory,
 * so it starts from an empty graph and persists session/graph files there.
 * Requires the Python package to be installed (pip install -e ..). */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface Gateway {
  baseUrl: string;
  stop(): Promise<void>;
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function waitReady(baseUrl: string, proc: ChildProcess, logs: string[]): Promise<void> {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    if (proc.exitCode !== null) {
      throw new Error(`gateway exited early (code ${proc.exitCode}):\n${logs.join("")}`);
    }
    try {
      const res = await fetch(`${baseUrl}/search?q=ready-probe`);
      if (res.ok) return;
    } catch {
      // not listening yet
    }
    await sleep(150);
  }
  throw new Error(`gateway not ready within 30s:\n${logs.join("")}`);
}

export async function startGateway(): Promise<Gateway> {
  const port = 21000 + Math.floor(Math.random() * 20000);
  const baseUrl = `http://127.0.0.1:${port}`;
  const cwd = mkdtempSync(join(tmpdir(), "kgforge-e2e-"));
  const logs: string[] = [];
  const proc = spawn(
    "python3",
    ["-m", "kgforge.cli", "serve", "--host", "127.0.0.1", "--port", String(port)],
    { cwd, stdio: ["ignore", "pipe", "pipe"] },
  );
  proc.stdout?.on("data", (chunk) => logs.push(String(chunk)));
  proc.stderr?.on("data", (chunk) => logs.push(String(chunk)));

  try {
    await waitReady(baseUrl, proc, logs);
  } catch (err) {
    proc.kill("SIGKILL");
    rmSync(cwd, { recursive: true, force: true });
    throw err;
  }

  return {
    baseUrl,
    stop: async () => {
      proc.kill("SIGTERM");
      const gone = new Promise<void>((resolve) => {
        proc.once("exit", () => resolve());
      });
      await Promise.race([gone, sleep(3000).then(() => proc.kill("SIGKILL"))]);
      rmSync(cwd, { recursive: true, force: true });
    },
  };
}
