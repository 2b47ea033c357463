/** Boots the decision service for the duration of the test run. */

import { spawn, type ChildProcess } from 'node:child_process';
import { SERVICE_PORT, SERVICE_URL } from './config.js';

let server: ChildProcess | undefined;

async function waitForHealthy(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${SERVICE_URL}/healthz`);
      if (response.ok) return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service did not become healthy on ${SERVICE_URL}: ${lastError}`);
}

export async function setup(): Promise<void> {
  server = spawn(
    'python3',
    ['-m', 'conerank.cli', 'serve', '--port', String(SERVICE_PORT), '--host', '127.0.0.1'],
    { stdio: 'inherit' },
  );
  server.on('exit', (code) => {
    if (code !== null && code !== 0) {
      console.error(`service exited early with code ${code}`);
    }
  });
  await waitForHealthy(60_000);
}

export async function teardown(): Promise<void> {
  if (server && !server.killed) {
    server.kill('SIGTERM');
  }
}
