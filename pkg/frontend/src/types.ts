/** Wire types mirroring the backend's JSON shapes (docs/protocol.md). */

export type EventKind =
  | "module_start"
  | "token_delta"
  | "tool_call"
  | "tool_result"
  | "iteration"
  | "final"
  | "error";

export interface StreamEvent {
  kind: EventKind;
  module: string | null;
  payload: unknown;
}

export interface ToolCallPayload {
  call_id: string;
  tool_name: string;
  arguments: Record<string, unknown>;
}

export interface ToolResultPayload {
  call_id: string;
  status: "ok" | "action_error" | "not_found" | "auth_required";
  payload: unknown;
  elapsed_ms: number;
}

export interface ModuleStats {
  calls: number;
  prompt_tokens: number;
  completion_tokens: number;
  elapsed_ms: number;
}

export interface QueryResult {
  answer: string;
  request_id: string;
  iterations: number;
  llm_calls: number;
  prompt_tokens: number;
  completion_tokens: number;
  total_elapsed_ms: number;
  per_module: Record<string, ModuleStats>;
}

export interface ActionInfo {
  name: string;
  description: string;
}

export interface AgentInfo {
  container_id: string;
  requires_login: boolean;
  agent: {
    agent_id: string;
    description: string;
    actions: ActionInfo[];
  };
}

export type Method = "simple" | "simple_tools" | "tool_chain" | "orchestration";
