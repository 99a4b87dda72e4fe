/** Boots the real API service over the bundled snapshot for the test run. */

import { spawn, type ChildProcess } from "node:child_process";
import type { GlobalSetupContext } from "vitest/node";

const HOST = "127.0.0.1";

async function waitUntilReady(base: string, child: ChildProcess): Promise<void> {
  const deadline = Date.now() + 90_000;
  let lastError = "";
  while (Date.now() < deadline) {
    if (child.exitCode !== null) {
      throw new Error(`service exited with code ${child.exitCode}: ${lastError}`);
    }
    try {
      const response = await fetch(`${base}/api/proposals`);
      if (response.ok) return;
      lastError = `HTTP ${response.status}`;
    } catch (err) {
      lastError = String(err);
    }
    await new Promise((resolve) => setTimeout(resolve, 400));
  }
  throw new Error(`service did not become ready: ${lastError}`);
}

export default async function setup({ provide }: GlobalSetupContext): Promise<() => void> {
  const port = 20000 + (process.pid % 20000);
  const base = `http://${HOST}:${port}`;
  const child = spawn(
    "python3",
    ["-m", "laip.cli", "serve", "--bind", HOST, "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  let stderr = "";
  child.stderr?.on("data", (chunk) => {
    stderr += String(chunk);
  });
  try {
    await waitUntilReady(base, child);
  } catch (err) {
    child.kill();
    throw new Error(`${String(err)}\nservice stderr:\n${stderr}`);
  }
  provide("apiBase", base);
  return () => {
    child.kill();
  };
}

declare module "vitest" {
  export interface ProvidedContext {
    apiBase: string;
  }
}
