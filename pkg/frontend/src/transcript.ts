/**
 * Transcript state machine: folds StreamEvents and query results into the
 * rendered conversation. Pure data in, data out — no DOM, no fetch, and no
 * domain math: every number shown comes verbatim from backend payloads.
 */

import { renderMarkdown } from "./markdown.js";
import type {
  QueryResult,
  StreamEvent,
  ToolCallPayload,
  ToolResultPayload,
} from "./types.js";

export type TurnStatus = "streaming" | "done" | "error" | "interrupted";

export interface ToolStep {
  kind: "tool";
  module: string | null;
  call: ToolCallPayload;
  result: ToolResultPayload | null;
}

export interface ModuleStep {
  kind: "module";
  module: string;
}

export interface IterationStep {
  kind: "iteration";
  module: string | null;
  number: number;
}

export type Step = ToolStep | ModuleStep | IterationStep;

export interface Turn {
  user: string;
  streamText: string;
  answer: string | null;
  answerHtml: string | null;
  steps: Step[];
  status: TurnStatus;
  stats: QueryResult | null;
  notes: string[];
  /** results that arrived before their tool_call; paired on arrival */
  pendingResults: ToolResultPayload[];
}

export function newTurn(user: string): Turn {
  return {
    user,
    streamText: "",
    answer: null,
    answerHtml: null,
    steps: [],
    status: "streaming",
    stats: null,
    notes: [],
    pendingResults: [],
  };
}

export function lastOpenTurn(turns: Turn[]): Turn | null {
  const last = turns[turns.length - 1];
  return last && last.status === "streaming" ? last : null;
}

export function applyEvent(turns: Turn[], event: StreamEvent): void {
  const turn = lastOpenTurn(turns);
  if (!turn) return; // nothing in flight: stale or foreign event

  switch (event.kind) {
    case "module_start":
      if (event.module) turn.steps.push({ kind: "module", module: event.module });
      return;
    case "iteration":
      turn.steps.push({
        kind: "iteration",
        module: event.module,
        number: Number(event.payload),
      });
      return;
    case "token_delta":
      turn.streamText += String(event.payload ?? "");
      return;
    case "tool_call": {
      const call = event.payload as ToolCallPayload;
      const step: ToolStep = { kind: "tool", module: event.module, call, result: null };
      const buffered = turn.pendingResults.findIndex((r) => r.call_id === call.call_id);
      if (buffered >= 0) {
        step.result = turn.pendingResults[buffered] ?? null;
        turn.pendingResults.splice(buffered, 1);
      }
      turn.steps.push(step);
      return;
    }
    case "tool_result": {
      const result = event.payload as ToolResultPayload;
      const step = turn.steps.find(
        (s): s is ToolStep => s.kind === "tool" && s.call.call_id === result.call_id && !s.result,
      );
      if (step) {
        step.result = result;
      } else {
        // out-of-order safeguard: hold it until the call shows up
        turn.pendingResults.push(result);
      }
      return;
    }
    case "final":
      closeTurn(turns, event.payload as QueryResult);
      return;
    case "error":
      failTurn(turns, String(event.payload ?? "unknown error"));
      return;
  }
}

export function closeTurn(turns: Turn[], result: QueryResult): void {
  const turn = lastOpenTurn(turns);
  if (!turn) return; // already closed (stream and HTTP response both report)
  turn.answer = result.answer;
  turn.answerHtml = renderMarkdown(result.answer);
  turn.stats = result;
  turn.status = "done";
}

export function failTurn(turns: Turn[], message: string): void {
  const turn = lastOpenTurn(turns);
  if (!turn) return;
  turn.status = "error";
  turn.notes.push(message);
}

export function markInterrupted(turns: Turn[]): void {
  const turn = lastOpenTurn(turns);
  if (!turn) return;
  turn.status = "interrupted";
  turn.notes.push("stream dropped; reconnecting");
}

export function toolSteps(turn: Turn): ToolStep[] {
  return turn.steps.filter((s): s is ToolStep => s.kind === "tool");
}
