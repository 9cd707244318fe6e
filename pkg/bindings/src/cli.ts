import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { InputError, ResourceLimitError } from "./types.js";

const MAX_BUFFER = 64 * 1024 * 1024;

/**
 * The command used to reach the CLI. Defaults to `relhom` on PATH; override
 * with the RELHOM_CLI environment variable (split on whitespace, so
 * "python3 -m relhom.cli" works).
 */
export function cliCommand(): string[] {
  const raw = process.env.RELHOM_CLI ?? "relhom";
  const parts = raw.split(/\s+/).filter(Boolean);
  if (parts.length === 0) throw new InputError("RELHOM_CLI is set but empty");
  return parts;
}

export function runCli(args: string[]): string {
  const [cmd, ...prefix] = cliCommand();
  const res = spawnSync(cmd, [...prefix, ...args], {
    encoding: "utf8",
    maxBuffer: MAX_BUFFER,
  });
  if (res.error) {
    throw new Error(
      `failed to launch ${cmd}: ${res.error.message} (install the relhom package or set RELHOM_CLI)`
    );
  }
  const stderr = (res.stderr ?? "").trim();
  if (res.status === 2) throw new InputError(stderr);
  if (res.status === 3) throw new ResourceLimitError(stderr);
  if (res.status !== 0) {
    throw new Error(`${cmd} ${args[0]} exited with ${res.status}: ${stderr}`);
  }
  return res.stdout;
}

export function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "relhom-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}
