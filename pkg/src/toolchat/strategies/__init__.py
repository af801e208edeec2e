"""The four prompting methods and their run records."""

from .common import StrategyContext, load_prompt
from .config import (
    AGENT_EVALUATOR,
    ASSISTANT,
    EVALUATOR,
    GENERATOR,
    ITERATION_ADVISOR,
    METHOD_MODULES,
    ORCHESTRATOR,
    OUTPUT_GENERATOR,
    OVERALL_EVALUATOR,
    PLANNER,
    WORKER,
    Method,
    MethodConfig,
    MissingEndpointProfile,
    UnknownMethod,
)
from .orchestration import AgentTrio, LlmModule, OrchestrationEngine, TrioStatus
from .record import LlmCallRecord, ModuleStats, RunRecorder, StrategyRunRecord, ToolLogEntry
from .runner import run_method
from .simple import run_simple
from .simple_tools import run_simple_tools
from .tool_chain import run_tool_chain

__all__ = [
    "AGENT_EVALUATOR",
    "ASSISTANT",
    "AgentTrio",
    "EVALUATOR",
    "GENERATOR",
    "ITERATION_ADVISOR",
    "LlmCallRecord",
    "LlmModule",
    "METHOD_MODULES",
    "Method",
    "MethodConfig",
    "MissingEndpointProfile",
    "ModuleStats",
    "ORCHESTRATOR",
    "OUTPUT_GENERATOR",
    "OVERALL_EVALUATOR",
    "OrchestrationEngine",
    "PLANNER",
    "RunRecorder",
    "StrategyContext",
    "StrategyRunRecord",
    "ToolLogEntry",
    "TrioStatus",
    "UnknownMethod",
    "WORKER",
    "load_prompt",
    "run_method",
    "run_orchestration",
    "run_simple",
    "run_simple_tools",
    "run_tool_chain",
]
