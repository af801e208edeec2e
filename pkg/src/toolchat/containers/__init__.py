"""Simulated benchmark containers and their seed manifest."""

from .manifest import (
    DEFAULT_MANIFEST_PATH,
    ManifestError,
    generate_manifest,
    install_benchmark_containers,
    load_manifest,
    write_manifest,
)
from .runtime import (
    AmbiguousMatch,
    ContainerBuilder,
    NoMatch,
    SimAction,
    SimAgent,
    SimContainer,
    lookup_by_fragment,
    p_array,
    p_boolean,
    p_integer,
    p_number,
    p_object,
    p_string,
)

__all__ = [
    "AmbiguousMatch",
    "ContainerBuilder",
    "DEFAULT_MANIFEST_PATH",
    "ManifestError",
    "NoMatch",
    "SimAction",
    "SimAgent",
    "SimContainer",
    "generate_manifest",
    "install_benchmark_containers",
    "load_manifest",
    "lookup_by_fragment",
    "p_array",
    "p_boolean",
    "p_integer",
    "p_number",
    "p_object",
    "p_string",
    "write_manifest",
]
