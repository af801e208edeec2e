/**
 * Container-login flow against a live test backend: a query hits a guarded
 * container, the credentials prompt appears, a successful login resumes the
 * pending request, and later requests skip the modal.
 */

import { createServer, type IncomingMessage, type Server, type ServerResponse } from "node:http";
import type { AddressInfo } from "node:net";

import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { BackendApi } from "../src/api.js";
import { ChatController, type StreamTransport } from "../src/controller.js";
import { renderAuthModal } from "../src/render.js";
import type { StreamEvent } from "../src/types.js";

class FakeTransport implements StreamTransport {
  private handlers: { onEvent(event: StreamEvent): void; onDrop(): void } | null = null;

  open(_sessionId: string, handlers: { onEvent(event: StreamEvent): void; onDrop(): void }) {
    this.handlers = handlers;
    return () => {
      this.handlers = null;
    };
  }

  push(event: StreamEvent): void {
    this.handlers?.onEvent(event);
  }
}

const VAULT_AGENT = {
  container_id: "vault",
  requires_login: true,
  agent: {
    agent_id: "vault-agent",
    description: "Guarded number store.",
    actions: [{ name: "get_value", description: "Read the guarded number." }],
  },
};

function queryResult(answer: string) {
  return {
    answer,
    request_id: "r1",
    iterations: 1,
    llm_calls: 2,
    prompt_tokens: 20,
    completion_tokens: 8,
    total_elapsed_ms: 3.5,
    per_module: { Assistant: { calls: 2, prompt_tokens: 20, completion_tokens: 8, elapsed_ms: 2.0 } },
  };
}

interface TestBackend {
  server: Server;
  url: string;
  transport: FakeTransport;
  queriesServed: string[];
  close(): Promise<void>;
}

async function startTestBackend(): Promise<TestBackend> {
  const transport = new FakeTransport();
  const state = { loggedIn: false };
  const queriesServed: string[] = [];

  function pushToolEvents(status: "ok" | "auth_required", payload: unknown): void {
    transport.push({
      kind: "tool_call",
      module: "Assistant",
      payload: { call_id: "c1", tool_name: "vault-agent--get_value", arguments: {} },
    });
    transport.push({
      kind: "tool_result",
      module: "Assistant",
      payload: { call_id: "c1", status, payload, elapsed_ms: 0.4 },
    });
  }

  const server = createServer((request: IncomingMessage, response: ServerResponse) => {
    const chunks: Buffer[] = [];
    request.on("data", (chunk) => chunks.push(chunk));
    request.on("end", () => {
      const body = chunks.length ? JSON.parse(Buffer.concat(chunks).toString()) : {};
      const reply = (status: number, doc: unknown) => {
        response.writeHead(status, { "Content-Type": "application/json" });
        response.end(JSON.stringify(doc));
      };
      const url = request.url ?? "";

      if (request.method === "POST" && url === "/sessions") {
        return reply(200, { session_id: "test-session" });
      }
      if (url === "/sessions/test-session/connect") {
        return reply(200, { ok: true });
      }
      if (url === "/sessions/test-session/actions") {
        return reply(200, { agents: [VAULT_AGENT] });
      }
      if (url === "/sessions/test-session/query") {
        queriesServed.push(body.message);
        if (!state.loggedIn) {
          pushToolEvents("auth_required", "container 'vault' requires a login");
          const result = queryResult("Please sign in to the vault container first.");
          transport.push({ kind: "final", module: null, payload: result });
          return reply(200, result);
        }
        pushToolEvents("ok", 41);
        const result = queryResult("The guarded number is 41.");
        transport.push({ kind: "final", module: null, payload: result });
        return reply(200, result);
      }
      if (url === "/sessions/test-session/containers/vault/login") {
        if (body.credentials?.password === "pw") {
          state.loggedIn = true;
          return reply(200, { ok: true });
        }
        return reply(403, { detail: "container rejected the credentials" });
      }
      return reply(404, { detail: `unhandled ${request.method} ${url}` });
    });
  });

  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const { port } = server.address() as AddressInfo;
  return {
    server,
    url: `http://127.0.0.1:${port}`,
    transport,
    queriesServed,
    close: () => new Promise((resolve) => server.close(() => resolve())),
  };
}

describe("container login flow", () => {
  let backend: TestBackend;
  let controller: ChatController;

  beforeEach(async () => {
    backend = await startTestBackend();
    controller = new ChatController(new BackendApi(backend.url), backend.transport);
    await controller.init();
    await controller.connect("local:bench", "admin", "admin");
  });

  afterEach(async () => {
    await backend.close();
  });

  it("auth_required opens the modal, login resumes the pending request", async () => {
    await controller.send("What is the vault value?");

    const prompt = controller.state.authPrompt;
    expect(prompt).not.toBeNull();
    expect(prompt!.containerId).toBe("vault");
    expect(prompt!.pendingMessage).toBe("What is the vault value?");
    expect(renderAuthModal(controller.state)).toContain("Sign in to vault");

    const ok = await controller.submitContainerLogin({ username: "ana", password: "pw" });
    expect(ok).toBe(true);
    expect(controller.state.authPrompt).toBeNull();

    // the pending request was re-sent and answered
    expect(backend.queriesServed).toEqual(["What is the vault value?", "What is the vault value?"]);
    const resumed = controller.state.turns.at(-1)!;
    expect(resumed.answer).toBe("The guarded number is 41.");
    expect(resumed.status).toBe("done");
  });

  it("failed login keeps the modal open with a diagnostic", async () => {
    await controller.send("What is the vault value?");
    const ok = await controller.submitContainerLogin({ username: "ana", password: "wrong" });
    expect(ok).toBe(false);
    expect(controller.state.authPrompt).not.toBeNull();
    expect(controller.state.authPrompt!.error).toContain("rejected");
    expect(renderAuthModal(controller.state)).toContain("rejected");
  });

  it("cancel ends the turn with an auth-declined note", async () => {
    await controller.send("What is the vault value?");
    controller.cancelContainerLogin();
    expect(controller.state.authPrompt).toBeNull();
    const turn = controller.state.turns.at(-1)!;
    expect(turn.notes.some((n) => n.includes("declined"))).toBe(true);
    expect(backend.queriesServed).toHaveLength(1); // nothing was retried
  });

  it("after a login, later queries run without the modal", async () => {
    await controller.send("What is the vault value?");
    await controller.submitContainerLogin({ username: "ana", password: "pw" });
    await controller.send("And once more?");
    expect(controller.state.authPrompt).toBeNull();
    expect(controller.state.turns.at(-1)!.answer).toBe("The guarded number is 41.");
  });

  it("steps carry the auth_required result with module attribution", async () => {
    await controller.send("What is the vault value?");
    const turn = controller.state.turns[0]!;
    const tool = turn.steps.find((s) => s.kind === "tool");
    expect(tool && tool.kind === "tool" && tool.result?.status).toBe("auth_required");
    expect(tool && tool.kind === "tool" && tool.module).toBe("Assistant");
  });
});
