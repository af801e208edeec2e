/**
 * Session controller: wires the HTTP client, the stream transport, and the
 * transcript together, including the container-login flow (a query that
 * hits a guarded container pauses on a credentials prompt and resumes
 * after a successful login).
 */

import { ApiError, BackendApi } from "./api.js";
import {
  Turn,
  applyEvent,
  closeTurn,
  failTurn,
  markInterrupted,
  newTurn,
  toolSteps,
} from "./transcript.js";
import type { AgentInfo, Method, StreamEvent } from "./types.js";

export interface StreamTransport {
  /** Open the session stream; returns a close function. */
  open(
    sessionId: string,
    handlers: { onEvent(event: StreamEvent): void; onDrop(): void },
  ): () => void;
}

/** Transport for environments without a stream (tests, degraded mode). */
export const nullTransport: StreamTransport = {
  open: () => () => undefined,
};

export interface AuthPrompt {
  containerId: string;
  pendingMessage: string;
  error: string | null;
}

export interface UiSessionState {
  connection: "disconnected" | "connected";
  platformUrl: string;
  method: Method;
  agents: AgentInfo[];
  turns: Turn[];
  busy: boolean;
  authPrompt: AuthPrompt | null;
  streamUp: boolean;
}

export class ChatController {
  readonly state: UiSessionState = {
    connection: "disconnected",
    platformUrl: "",
    method: "simple_tools",
    agents: [],
    turns: [],
    busy: false,
    authPrompt: null,
    streamUp: false,
  };

  private sessionId = "";
  private closeStream: () => void = () => undefined;

  constructor(
    private readonly api: BackendApi,
    private readonly transport: StreamTransport = nullTransport,
    private readonly onChange: () => void = () => undefined,
  ) {}

  private changed(): void {
    this.onChange();
  }

  async init(): Promise<void> {
    this.sessionId = await this.api.createSession();
    this.openStream();
  }

  private openStream(): void {
    this.closeStream();
    this.closeStream = this.transport.open(this.sessionId, {
      onEvent: (event) => {
        applyEvent(this.state.turns, event);
        this.changed();
      },
      onDrop: () => {
        this.state.streamUp = false;
        markInterrupted(this.state.turns);
        this.changed();
        this.openStream(); // reconnect; the dropped turn stays marked
      },
    });
    this.state.streamUp = true;
  }

  async connect(platformUrl: string, username: string, password: string): Promise<void> {
    await this.api.connect(this.sessionId, platformUrl, username, password);
    this.state.connection = "connected";
    this.state.platformUrl = platformUrl;
    await this.refreshAgents();
    this.changed();
  }

  async refreshAgents(): Promise<void> {
    this.state.agents = await this.api.actions(this.sessionId);
    this.changed();
  }

  async setMethod(method: Method): Promise<void> {
    await this.api.configure(this.sessionId, method);
    this.state.method = method; // affects only subsequent turns
    this.changed();
  }

  /** Send a message; resolves when the turn has settled (done or error). */
  async send(message: string): Promise<void> {
    if (this.state.busy || !message.trim()) return;
    this.state.busy = true;
    this.state.turns.push(newTurn(message));
    this.changed();
    try {
      const result = await this.api.query(this.sessionId, message);
      closeTurn(this.state.turns, result); // idempotent with the final event
      this.detectAuthRequirement(message);
    } catch (err) {
      const detail = err instanceof ApiError ? err.detail : String(err);
      failTurn(this.state.turns, detail);
    } finally {
      this.state.busy = false; // input re-enabled even after errors
      this.changed();
    }
  }

  /** A result with auth_required means some container wants a login. */
  private detectAuthRequirement(message: string): void {
    const turn = this.state.turns[this.state.turns.length - 1];
    if (!turn) return;
    const guarded = toolSteps(turn).find((step) => step.result?.status === "auth_required");
    if (!guarded) return;
    const agentId = guarded.call.tool_name.split("--")[0] ?? "";
    const agent = this.state.agents.find((a) => a.agent.agent_id === agentId);
    if (!agent) return;
    turn.notes.push(`container ${agent.container_id} requires a login`);
    this.state.authPrompt = {
      containerId: agent.container_id,
      pendingMessage: message,
      error: null,
    };
    this.changed();
  }

  /** Modal submit: log into the container, then resume the pending request. */
  async submitContainerLogin(credentials: Record<string, unknown>): Promise<boolean> {
    const prompt = this.state.authPrompt;
    if (!prompt) return false;
    try {
      await this.api.containerLogin(this.sessionId, prompt.containerId, credentials);
    } catch (err) {
      prompt.error = err instanceof ApiError ? err.detail : String(err);
      this.changed();
      return false; // modal stays open with the diagnostic
    }
    this.state.authPrompt = null;
    this.changed();
    await this.send(prompt.pendingMessage); // the original request resumes
    return true;
  }

  cancelContainerLogin(): void {
    const prompt = this.state.authPrompt;
    if (!prompt) return;
    const turn = this.state.turns[this.state.turns.length - 1];
    turn?.notes.push("container login declined; request not retried");
    this.state.authPrompt = null;
    this.changed();
  }
}
