/** HTML-string views over the controller state (pure; DOM glue lives in main.ts). */

import type { UiSessionState } from "./controller.js";
import type { Step, Turn } from "./transcript.js";

// empty-state suggestions, taken from the bundled benchmark prompts
export const EXAMPLE_PROMPTS = [
  "What is the temperature in the kitchen?",
  "Find the copper wire item and add 50 spools to stock.",
  "Create a playlist called Morning Mix.",
  "Which rooms are the warmest and the coldest?",
];

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function renderStep(step: Step): string {
  if (step.kind === "module") {
    return `<span class="chip module-chip">${esc(step.module)}</span>`;
  }
  if (step.kind === "iteration") {
    return `<span class="chip iteration-chip">iteration ${step.number}</span>`;
  }
  const status = step.result?.status ?? "pending";
  const result = step.result ? esc(JSON.stringify(step.result.payload)) : "…";
  const moduleTag = step.module ? `<span class="chip-module">${esc(step.module)}</span>` : "";
  return (
    `<div class="chip tool-chip status-${status}">${moduleTag}` +
    `<code>${esc(step.call.tool_name)}</code>` +
    `<span class="args">${esc(JSON.stringify(step.call.arguments))}</span>` +
    `<span class="result">${result}</span></div>`
  );
}

function renderStats(turn: Turn): string {
  const stats = turn.stats;
  if (!stats) return "";
  const tokens = stats.prompt_tokens + stats.completion_tokens;
  return (
    `<div class="stats">${stats.llm_calls} LLM calls · ${stats.iterations} iterations · ` +
    `${tokens} tokens · ${Math.round(stats.total_elapsed_ms)} ms</div>`
  );
}

export function renderTurn(turn: Turn): string {
  const steps = turn.steps.length
    ? `<details class="steps"><summary>${turn.steps.length} steps</summary>` +
      `<div class="step-list">${turn.steps.map(renderStep).join("")}</div></details>`
    : "";
  const body =
    turn.status === "done"
      ? `<div class="answer markdown">${turn.answerHtml ?? ""}</div>`
      : turn.status === "streaming"
        ? `<div class="answer streaming">${esc(turn.streamText)}<span class="cursor">▌</span></div>`
        : `<div class="answer ${turn.status}">${esc(turn.streamText || "")}</div>`;
  const notes = turn.notes.map((n) => `<div class="note">${esc(n)}</div>`).join("");
  const banner =
    turn.status === "error"
      ? `<div class="banner error-banner">request failed</div>`
      : turn.status === "interrupted"
        ? `<div class="banner interrupted-banner">interrupted</div>`
        : "";
  return (
    `<article class="turn status-${turn.status}">` +
    `<div class="user-message">${esc(turn.user)}</div>` +
    steps +
    body +
    banner +
    notes +
    renderStats(turn) +
    `</article>`
  );
}

export function renderTranscript(state: UiSessionState): string {
  if (!state.turns.length) {
    const examples = EXAMPLE_PROMPTS.map(
      (p) => `<button class="example" data-prompt="${esc(p)}">${esc(p)}</button>`,
    ).join("");
    return `<div class="empty-state"><p>Ask something, for example:</p>${examples}</div>`;
  }
  return state.turns.map(renderTurn).join("\n");
}

export function renderAgentsPanel(state: UiSessionState): string {
  if (!state.agents.length) {
    return `<div class="agents-empty">not connected</div>`;
  }
  const byContainer = new Map<string, typeof state.agents>();
  for (const info of state.agents) {
    const list = byContainer.get(info.container_id) ?? [];
    list.push(info);
    byContainer.set(info.container_id, list);
  }
  const sections = [...byContainer.entries()].map(([containerId, agents]) => {
    const items = agents
      .map(
        (info) =>
          `<details class="agent"><summary>${esc(info.agent.agent_id)}` +
          `<span class="count">${info.agent.actions.length}</span></summary>` +
          `<p>${esc(info.agent.description)}</p><ul>` +
          info.agent.actions
            .map((a) => `<li><code>${esc(a.name)}</code> ${esc(a.description)}</li>`)
            .join("") +
          `</ul></details>`,
      )
      .join("");
    const lock = agents[0]?.requires_login ? " 🔒" : "";
    return `<section class="container"><h3>${esc(containerId)}${lock}</h3>${items}</section>`;
  });
  return sections.join("");
}

export function renderAuthModal(state: UiSessionState): string {
  const prompt = state.authPrompt;
  if (!prompt) return "";
  const error = prompt.error ? `<div class="auth-error">${esc(prompt.error)}</div>` : "";
  return (
    `<div class="modal-backdrop"><div class="modal">` +
    `<h3>Sign in to ${esc(prompt.containerId)}</h3>` +
    `<p>This service requires a login before the request can continue.</p>` +
    error +
    `<input id="auth-user" placeholder="username" autocomplete="username">` +
    `<input id="auth-pass" type="password" placeholder="password" autocomplete="current-password">` +
    `<div class="modal-actions">` +
    `<button id="auth-cancel">Cancel</button>` +
    `<button id="auth-submit" class="primary">Sign in &amp; retry</button>` +
    `</div></div></div>`
  );
}
