"""Runtime platform: container registry, auth, unified action invocation."""

from .client import HttpPlatformClient, LocalPlatformClient, PlatformClient
from .core import (
    ActionError,
    AgentInfo,
    AuthError,
    ContainerAuthFailed,
    ContainerNotFound,
    ContainerRegistration,
    DuplicateContainer,
    InvalidCredentials,
    InvocationLogEntry,
    InvocationResult,
    InvocationStatus,
    PlatformToken,
    RuntimePlatform,
)
from .service import RemoteContainerHandler, create_container_app, create_platform_app

__all__ = [
    "ActionError",
    "AgentInfo",
    "AuthError",
    "ContainerAuthFailed",
    "ContainerNotFound",
    "ContainerRegistration",
    "DuplicateContainer",
    "HttpPlatformClient",
    "InvalidCredentials",
    "InvocationLogEntry",
    "InvocationResult",
    "InvocationStatus",
    "LocalPlatformClient",
    "PlatformClient",
    "PlatformToken",
    "RemoteContainerHandler",
    "RuntimePlatform",
    "create_container_app",
    "create_platform_app",
]
