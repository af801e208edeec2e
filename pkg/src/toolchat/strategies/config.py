"""Method selection and per-module endpoint wiring."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel

from ..actions import DEFAULT_TOOL_LIMIT


class Method(str, Enum):
    SIMPLE = "simple"
    SIMPLE_TOOLS = "simple_tools"
    TOOL_CHAIN = "tool_chain"
    ORCHESTRATION = "orchestration"


# module names as they appear in records and profile maps
ASSISTANT = "Assistant"
GENERATOR = "Generator"
EVALUATOR = "Evaluator"
ORCHESTRATOR = "Orchestrator"
PLANNER = "Planner"
WORKER = "Worker"
AGENT_EVALUATOR = "AgentEvaluator"
OVERALL_EVALUATOR = "OverallEvaluator"
ITERATION_ADVISOR = "IterationAdvisor"
OUTPUT_GENERATOR = "OutputGenerator"

METHOD_MODULES: dict[Method, tuple[str, ...]] = {
    Method.SIMPLE: (ASSISTANT,),
    Method.SIMPLE_TOOLS: (ASSISTANT,),
    Method.TOOL_CHAIN: (GENERATOR, EVALUATOR),
    Method.ORCHESTRATION: (
        ORCHESTRATOR,
        PLANNER,
        WORKER,
        AGENT_EVALUATOR,
        OVERALL_EVALUATOR,
        ITERATION_ADVISOR,
        OUTPUT_GENERATOR,
    ),
}

# loop ceilings when the config leaves max_iterations unset; the simple
# method has no semantic limit, only a safety ceiling
DEFAULT_MAX_ITERATIONS: dict[Method, int] = {
    Method.SIMPLE: 50,
    Method.SIMPLE_TOOLS: 10,
    Method.TOOL_CHAIN: 5,
    Method.ORCHESTRATION: 5,
}


class UnknownMethod(Exception):
    pass


class MissingEndpointProfile(Exception):
    def __init__(self, module: str):
        super().__init__(f"no endpoint profile configured for module {module!r}")
        self.module = module


class MethodConfig(BaseModel):
    model_config = {"frozen": True}

    method: Method
    # module name -> endpoint profile name; "default" covers the rest
    endpoint_profiles: dict[str, str] = {}
    max_iterations: int | None = None
    tool_limit: int = DEFAULT_TOOL_LIMIT
    trio_max_rounds: int = 3
    orchestration_max_reiterations: int = 2

    def profile_for(self, module: str) -> str:
        name = self.endpoint_profiles.get(module) or self.endpoint_profiles.get("default")
        if name is None:
            raise MissingEndpointProfile(module)
        return name

    def validate_profiles(self) -> None:
        """Every module the method uses must resolve to a profile."""
        for module in METHOD_MODULES[self.method]:
            self.profile_for(module)

    @property
    def iteration_cap(self) -> int:
        return self.max_iterations or DEFAULT_MAX_ITERATIONS[self.method]
