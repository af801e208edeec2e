/** Thin fetch client for the backend routes; no domain logic lives here. */

import type { AgentInfo, Method, QueryResult } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(detail);
  }
}

type FetchLike = typeof fetch;

export class BackendApi {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const doc = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new ApiError(response.status, String(doc.detail ?? response.statusText));
    }
    return doc as T;
  }

  async createSession(): Promise<string> {
    const doc = await this.request<{ session_id: string }>("POST", "/sessions");
    return doc.session_id;
  }

  connect(sessionId: string, platformUrl: string, username: string, password: string) {
    return this.request<{ ok: boolean }>("POST", `/sessions/${sessionId}/connect`, {
      platform_url: platformUrl,
      username,
      password,
    });
  }

  configure(sessionId: string, method: Method) {
    return this.request<{ ok: boolean }>("POST", `/sessions/${sessionId}/configure`, { method });
  }

  query(sessionId: string, message: string): Promise<QueryResult> {
    return this.request<QueryResult>("POST", `/sessions/${sessionId}/query`, { message });
  }

  async actions(sessionId: string): Promise<AgentInfo[]> {
    const doc = await this.request<{ agents: AgentInfo[] }>(
      "GET",
      `/sessions/${sessionId}/actions`,
    );
    return doc.agents;
  }

  containerLogin(sessionId: string, containerId: string, credentials: Record<string, unknown>) {
    return this.request<{ ok: boolean }>(
      "POST",
      `/sessions/${sessionId}/containers/${containerId}/login`,
      { credentials },
    );
  }
}
