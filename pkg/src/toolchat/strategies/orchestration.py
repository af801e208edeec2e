"""Divide-and-conquer method: an Orchestrator fans subtasks out to one
Planner/Worker/Evaluator trio per platform agent.

The Orchestrator sees agent descriptions and action names only — no
parameter details — which keeps its input small and puts the weight on
good agent and action naming. Trios run concurrently; a guided-choice
Overall Evaluator decides between finishing and reiterating, and an
Iteration Advisor (which may decline) prepares any second attempt.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from ..events import EventKind, StreamEvent
from ..llm import ChatMessage, extract_json_document, system, user
from ..platform import AgentInfo
from .common import (
    CONTINUE_MARKER,
    FINISHED_MARKER,
    REITERATE_MARKER,
    StrategyContext,
    ends_with_marker,
    load_prompt,
    render_result,
    strip_marker,
)
from .config import (
    AGENT_EVALUATOR,
    ITERATION_ADVISOR,
    ORCHESTRATOR,
    OUTPUT_GENERATOR,
    OVERALL_EVALUATOR,
    PLANNER,
    WORKER,
)
from .record import StrategyRunRecord


class TrioStatus(str, Enum):
    IDLE = "idle"
    ACTIVE = "active"
    FINISHED = "finished"


@dataclass
class LlmModule:
    """One specifically-prompted LLM role; trios carry three of these."""

    name: str
    agent_id: str | None = None


@dataclass
class AgentTrio:
    agent: AgentInfo
    planner: LlmModule
    worker: LlmModule
    evaluator: LlmModule
    status: TrioStatus = TrioStatus.IDLE
    verdict: str | None = None

    @property
    def agent_id(self) -> str:
        return self.agent.agent.agent_id


@dataclass
class Subtask:
    agent_id: str
    task: str


@dataclass
class OrchestrationEngine:
    """Holds the dynamically instantiated modules for one platform snapshot."""

    ctx: StrategyContext
    trios: dict[str, AgentTrio] = field(default_factory=dict)
    singles: list[LlmModule] = field(default_factory=list)
    issues: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        for info in self.ctx.agents:
            agent_id = info.agent.agent_id
            self.trios[agent_id] = AgentTrio(
                agent=info,
                planner=LlmModule(PLANNER, agent_id),
                worker=LlmModule(WORKER, agent_id),
                evaluator=LlmModule(AGENT_EVALUATOR, agent_id),
            )
        self.singles = [
            LlmModule(ORCHESTRATOR),
            LlmModule(OVERALL_EVALUATOR),
            LlmModule(ITERATION_ADVISOR),
            LlmModule(OUTPUT_GENERATOR),
        ]

    @property
    def modules(self) -> list[LlmModule]:
        out: list[LlmModule] = []
        for trio in self.trios.values():
            out.extend((trio.planner, trio.worker, trio.evaluator))
        out.extend(self.singles)
        return out

    # -- orchestrator ---------------------------------------------------------

    def agent_overview(self) -> str:
        lines = []
        for info in self.ctx.agents:
            actions = ", ".join(a.name for a in info.agent.actions)
            lines.append(f"- {info.agent.agent_id}: {info.agent.description} (actions: {actions})")
        return "\n".join(lines)

    def orchestrate(
        self, history: list[ChatMessage], user_message: str, advice: str | None
    ) -> list[Subtask]:
        prompt = load_prompt("orchestration", "orchestrator").replace(
            "{agents}", self.agent_overview()
        )
        content = user_message
        if advice:
            content += f"\n\nAdvice from the previous attempt:\n{advice}"
        messages = [system(prompt), *history, user(content)]
        response = self.ctx.complete(ORCHESTRATOR, messages)
        parsed = self._parse_subtasks(response.content)
        if parsed is None:
            retry = messages + [
                response.message,
                user("Reply with ONLY the JSON array of subtasks, nothing else."),
            ]
            response = self.ctx.complete(ORCHESTRATOR, retry)
            parsed = self._parse_subtasks(response.content)
        if parsed is None:
            self.issues.append("orchestrator output stayed unparsable; no subtasks derived")
            return []
        return self._route(parsed)

    def _parse_subtasks(self, content: str) -> list[dict[str, Any]] | None:
        doc = extract_json_document(content)
        if isinstance(doc, dict):
            doc = [doc]
        if not isinstance(doc, list):
            return None
        entries = [entry for entry in doc if isinstance(entry, dict)]
        if len(entries) != len(doc):
            return None
        return entries

    def _route(self, entries: list[dict[str, Any]]) -> list[Subtask]:
        # one subtask per agent: a trio is a single state machine, so tasks
        # addressed to the same agent merge instead of racing it
        merged: dict[str, Subtask] = {}
        for entry in entries:
            task = str(entry.get("task") or entry.get("subtask") or "").strip()
            agent_id = str(entry.get("agent_id") or "").strip()
            if not task:
                continue
            if not agent_id:
                agent_id = self._closest_agent(task)
                self.issues.append(f"subtask without agent routed to {agent_id!r} by description overlap")
            if agent_id not in self.trios:
                self.issues.append(f"subtask addressed to unknown agent {agent_id!r}; skipped")
                continue
            if agent_id in merged:
                merged[agent_id].task += f"; additionally: {task}"
            else:
                merged[agent_id] = Subtask(agent_id=agent_id, task=task)
        return list(merged.values())

    def _closest_agent(self, task: str) -> str:
        task_words = set(task.lower().split())

        def overlap(info: AgentInfo) -> int:
            words = set(info.agent.description.lower().split())
            words.add(info.agent.agent_id.lower())
            return len(task_words & words)

        best = max(self.ctx.agents, key=overlap)
        return best.agent.agent_id

    # -- trios ------------------------------------------------------------------

    def run_trio(self, trio: AgentTrio, task: str) -> str:
        ctx = self.ctx
        trio.status = TrioStatus.ACTIVE
        agent = trio.agent.agent
        planner_prompt = (
            load_prompt("orchestration", "planner")
            .replace("{agent_id}", agent.agent_id)
            .replace("{agent_description}", agent.description)
            .replace(
                "{actions}",
                "\n".join(f"- {a.name}: {a.description}" for a in agent.actions),
            )
        )
        worker_prompt = load_prompt("orchestration", "worker").replace("{agent_id}", agent.agent_id)
        evaluator_prompt = load_prompt("orchestration", "agent_evaluator").replace(
            "{agent_id}", agent.agent_id
        )
        agent_tools = ctx.tools_for_agent(agent.agent_id)

        gathered: list[str] = []
        summary = ""
        for _ in range(ctx.config.trio_max_rounds):
            context_block = "\n".join(gathered) if gathered else "(none yet)"
            plan = ctx.complete(
                PLANNER,
                [system(planner_prompt), user(f"Subtask: {task}\n\nResults so far:\n{context_block}")],
            )
            worked = ctx.complete(
                WORKER,
                [system(worker_prompt), user(f"Subtask: {task}\n\nPlan:\n{plan.content}")],
                tools=agent_tools,
            )
            calls = worked.message.tool_calls
            if not calls:
                # nothing left to call: the worker's text closes the subtask
                trio.verdict = worked.content
                trio.status = TrioStatus.FINISHED
                return worked.content
            results = ctx.execute_calls_parallel(calls, WORKER)
            for call, result in zip(calls, results):
                gathered.append(
                    f"{call.tool_name}({json.dumps(call.arguments)}) -> {render_result(result)}"
                )
            verdict = ctx.complete(
                AGENT_EVALUATOR,
                [
                    system(evaluator_prompt),
                    user(f"Subtask: {task}\n\nResults:\n" + "\n".join(gathered)),
                ],
            )
            summary = strip_marker(
                strip_marker(verdict.content, FINISHED_MARKER), CONTINUE_MARKER
            )
            if ends_with_marker(verdict.content, FINISHED_MARKER):
                trio.verdict = summary
                trio.status = TrioStatus.FINISHED
                return summary
        trio.verdict = summary
        trio.status = TrioStatus.FINISHED
        return summary + " [subtask round limit reached]"

    def run_trios(self, subtasks: list[Subtask]) -> list[str]:
        if not subtasks:
            return []
        if len(subtasks) == 1:
            only = subtasks[0]
            return [f"{only.agent_id}: {self.run_trio(self.trios[only.agent_id], only.task)}"]
        with ThreadPoolExecutor(max_workers=len(subtasks)) as pool:
            futures = [
                pool.submit(self.run_trio, self.trios[sub.agent_id], sub.task) for sub in subtasks
            ]
            return [
                f"{sub.agent_id}: {future.result()}" for sub, future in zip(subtasks, futures)
            ]


def run_orchestration(
    ctx: StrategyContext, history: list[ChatMessage], user_message: str
) -> StrategyRunRecord:
    engine = OrchestrationEngine(ctx)
    advice: str | None = None
    trio_reports: list[str] = []

    attempt = 0
    while True:
        attempt += 1
        ctx.emit_iteration(attempt, ORCHESTRATOR)
        subtasks = engine.orchestrate(history, user_message, advice)
        for trio in engine.trios.values():
            trio.status = TrioStatus.IDLE
            trio.verdict = None
        trio_reports = engine.run_trios(subtasks)

        report_block = "\n".join(trio_reports) if trio_reports else "(no agent was involved)"
        decision = ctx.complete(
            OVERALL_EVALUATOR,
            [
                system(load_prompt("orchestration", "overall_evaluator")),
                user(f"Request: {user_message}\n\nAgent results:\n{report_block}"),
            ],
            guided_choice=[REITERATE_MARKER, FINISHED_MARKER],
        )
        if decision.content == FINISHED_MARKER:
            break
        if attempt > ctx.config.orchestration_max_reiterations:
            engine.issues.append("reiteration bound reached; continuing with partial results")
            break

        advisory = ctx.complete(
            ITERATION_ADVISOR,
            [
                system(load_prompt("orchestration", "iteration_advisor")),
                user(
                    f"Request: {user_message}\n\nAgent results:\n{report_block}\n\n"
                    + ("Known issues:\n" + "\n".join(engine.issues) if engine.issues else "")
                ),
            ],
        )
        # the advisor's own accept/decline token comes last in its output
        if not ends_with_marker(advisory.content, REITERATE_MARKER):
            break
        advice = strip_marker(advisory.content, REITERATE_MARKER)

    issue_block = "\n".join(engine.issues) if engine.issues else ""
    final_input = f"Request: {user_message}\n\nGathered information:\n" + (
        "\n".join(trio_reports) if trio_reports else "(none; answer from general knowledge)"
    )
    if issue_block:
        final_input += f"\n\nNotes:\n{issue_block}"

    def forward_delta(text: str) -> None:
        ctx.emit(StreamEvent(kind=EventKind.TOKEN_DELTA, module=OUTPUT_GENERATOR, payload=text))

    output = ctx.complete(
        OUTPUT_GENERATOR,
        [system(load_prompt("orchestration", "output_generator")), user(final_input)],
        on_delta=forward_delta,
    )
    return ctx.recorder.finish(output.content)
