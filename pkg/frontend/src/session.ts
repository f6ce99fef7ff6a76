/** Client session driving one simulator episode over stdio newline JSON. */

import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { createInterface, type Interface } from "node:readline";
import { errorFromWire, ProtocolError, type WireError } from "./errors.js";

export type Phase = "strategy" | "execution";

export interface PhaseStartEvent {
  event: "phase_start";
  phase: Phase;
  day: number;
}

export interface EpisodeEndEvent {
  event: "episode_end";
  reason: string;
  days: number;
}

export type SimEvent = PhaseStartEvent | EpisodeEndEvent;

interface WireResponse {
  id: number | null;
  ok: boolean;
  result?: unknown;
  error?: WireError;
}

export interface SessionOptions {
  /** Command used to start the simulator; defaults to python3. */
  pythonCommand?: string;
  /** Built-in configuration name (easy | middle | hard). */
  preset?: string;
  /** Path to a JSON config file (alternative to preset). */
  configPath?: string;
  seed?: number;
  maxDays?: number;
  /** Trajectory output path passed through to the simulator. */
  trajectoryOut?: string;
  /** Extra environment variables for the child process. */
  env?: Record<string, string>;
}

interface PendingCall {
  resolve: (value: unknown) => void;
  reject: (error: Error) => void;
}

interface EventWaiter {
  resolve: (event: SimEvent) => void;
  reject: (error: Error) => void;
}

/**
 * One live episode. Construct with {@link Session.start}, issue tool calls
 * with {@link Session.call}, and consume phase/episode events with
 * {@link Session.nextEvent}.
 */
export class Session {
  private readonly child: ChildProcessWithoutNullStreams;
  private readonly reader: Interface;
  private readonly pending = new Map<number, PendingCall>();
  private readonly eventQueue: SimEvent[] = [];
  private readonly eventWaiters: EventWaiter[] = [];
  private nextId = 1;
  private closed = false;
  private exitPromise: Promise<number | null>;

  private constructor(child: ChildProcessWithoutNullStreams) {
    this.child = child;
    this.reader = createInterface({ input: child.stdout });
    this.reader.on("line", (line) => this.onLine(line));
    this.exitPromise = new Promise((resolve) => {
      child.on("close", (code) => {
        this.closed = true;
        const err = new ProtocolError("protocol_error", "simulator process exited");
        for (const pending of this.pending.values()) pending.reject(err);
        this.pending.clear();
        for (const waiter of this.eventWaiters.splice(0)) waiter.reject(err);
        resolve(code);
      });
    });
  }

  static start(options: SessionOptions = {}): Session {
    const args = ["-m", "retailsim", "serve"];
    if (options.configPath !== undefined) args.push("--config", options.configPath);
    if (options.preset !== undefined) args.push("--preset", options.preset);
    if (options.seed !== undefined) args.push("--seed", String(options.seed));
    if (options.maxDays !== undefined) args.push("--max-days", String(options.maxDays));
    if (options.trajectoryOut !== undefined) args.push("--out", options.trajectoryOut);
    const child = spawn(options.pythonCommand ?? "python3", args, {
      stdio: ["pipe", "pipe", "pipe"],
      env: { ...process.env, ...options.env },
    });
    return new Session(child);
  }

  private onLine(line: string): void {
    const trimmed = line.trim();
    if (!trimmed) return;
    let message: Record<string, unknown>;
    try {
      message = JSON.parse(trimmed) as Record<string, unknown>;
    } catch {
      return; // not part of the protocol; ignore
    }
    if (typeof message["event"] === "string") {
      const event = message as unknown as SimEvent;
      const waiter = this.eventWaiters.shift();
      if (waiter) waiter.resolve(event);
      else this.eventQueue.push(event);
      return;
    }
    const response = message as unknown as WireResponse;
    if (response.id === null) return; // server flagged a malformed request line
    const pending = this.pending.get(response.id);
    if (!pending) return;
    this.pending.delete(response.id);
    if (response.ok) pending.resolve(response.result);
    else pending.reject(errorFromWire(response.error as WireError));
  }

  /** Issue one tool call; resolves with the result or rejects with a typed error. */
  call<T = unknown>(tool: string, args: Record<string, unknown> = {}): Promise<T> {
    if (this.closed) {
      return Promise.reject(new ProtocolError("protocol_error", "session is closed"));
    }
    const id = this.nextId++;
    const promise = new Promise<T>((resolve, reject) => {
      this.pending.set(id, { resolve: resolve as (v: unknown) => void, reject });
    });
    this.child.stdin.write(JSON.stringify({ id, tool, arguments: args }) + "\n");
    return promise;
  }

  /** Next phase_start/episode_end event, in arrival order. */
  nextEvent(): Promise<SimEvent> {
    const queued = this.eventQueue.shift();
    if (queued) return Promise.resolve(queued);
    if (this.closed) {
      return Promise.reject(new ProtocolError("protocol_error", "session is closed"));
    }
    return new Promise((resolve, reject) => {
      this.eventWaiters.push({ resolve, reject });
    });
  }

  /** Write a raw line to the simulator (for protocol-level testing). */
  sendRaw(line: string): void {
    this.child.stdin.write(line + "\n");
  }

  /** Close stdin and wait for the simulator to exit; returns its exit code. */
  async close(): Promise<number | null> {
    if (!this.child.stdin.destroyed) this.child.stdin.end();
    return this.exitPromise;
  }
}

export interface ScriptedDay {
  strategy: Array<{ tool: string; arguments?: Record<string, unknown> }>;
  execution: Array<{ tool: string; arguments?: Record<string, unknown> }>;
}

/**
 * Drive a full episode from a fixed per-day script, mirroring the
 * simulator's native scripted agent: any phase the script leaves open is
 * closed explicitly. Resolves with the episode_end event.
 */
export async function runScriptedEpisode(
  session: Session,
  script: ScriptedDay[],
): Promise<EpisodeEndEvent> {
  for (let day = 0; ; day++) {
    let event = await session.nextEvent();
    if (event.event === "episode_end") return event;
    // strategy phase
    const calls = script[day] ?? { strategy: [], execution: [] };
    let finished = false;
    for (const call of calls.strategy) {
      await session.call(call.tool, call.arguments ?? {});
      if (call.tool === "finish_strategy_phase") finished = true;
    }
    if (!finished) await session.call("finish_strategy_phase");
    event = await session.nextEvent();
    if (event.event !== "phase_start" || event.phase !== "execution") {
      throw new ProtocolError("protocol_error", "expected execution phase_start");
    }
    let ended = false;
    for (const call of calls.execution) {
      await session.call(call.tool, call.arguments ?? {});
      if (call.tool === "end_today") ended = true;
    }
    if (!ended) await session.call("end_today");
  }
}
