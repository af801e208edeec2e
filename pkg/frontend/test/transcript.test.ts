import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { renderTranscript, renderTurn } from "../src/render.js";
import {
  Turn,
  applyEvent,
  failTurn,
  markInterrupted,
  newTurn,
  toolSteps,
} from "../src/transcript.js";
import type { StreamEvent } from "../src/types.js";
import type { UiSessionState } from "../src/controller.js";

const here = dirname(fileURLToPath(import.meta.url));
const fixture = JSON.parse(
  readFileSync(join(here, "..", "fixtures", "stream-events.json"), "utf-8"),
) as { user_message: string; events: StreamEvent[] };

function playFixture(): Turn[] {
  const turns = [newTurn(fixture.user_message)];
  for (const event of fixture.events) applyEvent(turns, event);
  return turns;
}

function stateWith(turns: Turn[]): UiSessionState {
  return {
    connection: "connected",
    platformUrl: "local:bench",
    method: "tool_chain",
    agents: [],
    turns,
    busy: false,
    authPrompt: null,
    streamUp: true,
  };
}

describe("stream fixture playback", () => {
  it("has the recorded twelve events", () => {
    expect(fixture.events).toHaveLength(12);
  });

  it("groups steps under the turn in arrival order", () => {
    const [turn] = playFixture();
    expect(turn).toBeDefined();
    const kinds = turn!.steps.map((s) => (s.kind === "module" ? `module:${s.module}` : s.kind));
    expect(kinds).toEqual([
      "iteration",
      "module:Generator",
      "tool",
      "tool",
      "module:Evaluator",
    ]);
  });

  it("pairs an early tool_result with its later tool_call by call id", () => {
    const [turn] = playFixture();
    const tools = toolSteps(turn!);
    expect(tools).toHaveLength(2);
    const byId = Object.fromEntries(tools.map((s) => [s.call.call_id, s]));
    expect(byId["c1"]?.result?.payload).toBe(22.5);
    expect(byId["c2"]?.result?.payload).toBe(23.0); // arrived before its call
    expect(turn!.pendingResults).toHaveLength(0);
  });

  it("accumulates token deltas into the streamed text", () => {
    const turns = [newTurn(fixture.user_message)];
    for (const event of fixture.events.slice(0, -1)) applyEvent(turns, event);
    expect(turns[0]!.streamText).toBe(
      "| Room | Temperature |\n| --- | --- |\n| Kitchen | 22.5 |\n| Lounge | 23.0 |",
    );
    expect(turns[0]!.status).toBe("streaming");
  });

  it("closes the turn on final and renders the Markdown table", () => {
    const [turn] = playFixture();
    expect(turn!.status).toBe("done");
    expect(turn!.answerHtml).toContain("<table>");
    expect(turn!.answerHtml).toContain("<td>Kitchen</td>");

    const html = renderTurn(turn!);
    expect(html).toContain("<table>");
    expect(html).toContain("5 steps");
  });

  it("shows backend numbers verbatim, computing nothing", () => {
    const [turn] = playFixture();
    expect(turn!.stats?.llm_calls).toBe(2);
    expect(turn!.stats?.prompt_tokens).toBe(58);
    expect(turn!.stats?.completion_tokens).toBe(16);
    const html = renderTurn(turn!);
    expect(html).toContain("2 LLM calls");
    expect(html).toContain("74 tokens"); // 58 + 16, straight from the payload sums
    expect(html).toContain("13 ms"); // 12.5 rounded, not recomputed
  });
});

describe("transcript edge handling", () => {
  it("error events mark the turn and keep later events out", () => {
    const turns = [newTurn("boom?")];
    applyEvent(turns, { kind: "module_start", module: "Assistant", payload: null });
    applyEvent(turns, { kind: "error", module: null, payload: "EndpointError: 500" });
    expect(turns[0]!.status).toBe("error");
    expect(turns[0]!.notes).toContain("EndpointError: 500");
    applyEvent(turns, { kind: "token_delta", module: null, payload: "late" });
    expect(turns[0]!.streamText).toBe("");
  });

  it("renders an error banner", () => {
    const turns = [newTurn("x")];
    failTurn(turns, "strategy failed");
    expect(renderTurn(turns[0]!)).toContain("error-banner");
  });

  it("a dropped channel marks the open turn interrupted", () => {
    const turns = [newTurn("still waiting")];
    markInterrupted(turns);
    expect(turns[0]!.status).toBe("interrupted");
    expect(renderTurn(turns[0]!)).toContain("interrupted-banner");
  });

  it("interruption does not touch settled turns", () => {
    const turns = playFixture();
    markInterrupted(turns);
    expect(turns[0]!.status).toBe("done");
  });

  it("empty transcript offers example prompts", () => {
    const html = renderTranscript(stateWith([]));
    expect(html).toContain("example");
    expect(html).toContain("What is the temperature in the kitchen?");
  });
});
