"""Parameter schemas, conformance checks, and argument casting."""

from __future__ import annotations

import math
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, model_validator


class ParameterKind(str, Enum):
    STRING = "string"
    INTEGER = "integer"
    NUMBER = "number"
    BOOLEAN = "boolean"
    ARRAY = "array"
    OBJECT = "object"


class ParameterSchema(BaseModel):
    """Type description for one action parameter (or a nested value).

    ``array`` schemas carry an ``item_schema``; ``object`` schemas carry a
    ``fields`` map (possibly empty). Nesting is finite by construction.
    """

    model_config = {"frozen": True}

    kind: ParameterKind
    required: bool = True
    item_schema: Optional["ParameterSchema"] = None
    fields: Optional[dict[str, "ParameterSchema"]] = None
    description: str | None = None

    @model_validator(mode="after")
    def _check_structure(self) -> "ParameterSchema":
        if self.kind == ParameterKind.ARRAY and self.item_schema is None:
            raise ValueError("array schema needs an item_schema")
        if self.kind == ParameterKind.OBJECT and self.fields is None:
            raise ValueError("object schema needs a fields map (may be empty)")
        if self.kind not in (ParameterKind.ARRAY,) and self.item_schema is not None:
            raise ValueError(f"item_schema only valid for arrays, not {self.kind.value}")
        if self.kind not in (ParameterKind.OBJECT,) and self.fields is not None:
            raise ValueError(f"fields only valid for objects, not {self.kind.value}")
        return self

    def to_json_schema(self) -> dict[str, Any]:
        """Render as a plain JSON-Schema-style dict (the LLM-facing shape)."""
        out: dict[str, Any] = {"type": self.kind.value}
        if self.description:
            out["description"] = self.description
        if self.kind == ParameterKind.ARRAY:
            out["items"] = self.item_schema.to_json_schema()
        if self.kind == ParameterKind.OBJECT:
            out["properties"] = {
                name: sub.to_json_schema() for name, sub in self.fields.items()
            }
            out["required"] = [n for n, s in self.fields.items() if s.required]
        return out

    @classmethod
    def from_json_schema(cls, doc: dict[str, Any], required: bool = True) -> "ParameterSchema":
        kind = ParameterKind(doc["type"])
        if kind == ParameterKind.ARRAY:
            return cls(
                kind=kind,
                required=required,
                item_schema=cls.from_json_schema(doc["items"]),
                description=doc.get("description"),
            )
        if kind == ParameterKind.OBJECT:
            req = set(doc.get("required", []))
            fields = {
                name: cls.from_json_schema(sub, required=name in req)
                for name, sub in doc.get("properties", {}).items()
            }
            return cls(kind=kind, required=required, fields=fields, description=doc.get("description"))
        return cls(kind=kind, required=required, description=doc.get("description"))


def object_schema(fields: dict[str, ParameterSchema], description: str | None = None) -> ParameterSchema:
    return ParameterSchema(kind=ParameterKind.OBJECT, fields=fields, description=description)


class ValidationFailure(Exception):
    """Base for argument validation errors; ``message`` is LLM-feedback text."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class MissingRequiredParameter(ValidationFailure):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Missing required parameter '{name}'")


class UnknownParameter(ValidationFailure):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown parameter '{name}'")


class UncastableValue(ValidationFailure):
    def __init__(self, name: str, expected_kind: ParameterKind, actual: Any):
        self.name = name
        self.expected_kind = expected_kind
        self.actual = actual
        super().__init__(
            f"Parameter '{name}' expected {expected_kind.value}, got {actual!r}"
        )


def conforms(value: Any, schema: ParameterSchema) -> bool:
    """Strict structural conformance. Integers count as numbers (JSON rules);

    booleans never count as integers or numbers.
    """
    kind = schema.kind
    if kind == ParameterKind.STRING:
        return isinstance(value, str)
    if kind == ParameterKind.BOOLEAN:
        return isinstance(value, bool)
    if kind == ParameterKind.INTEGER:
        return isinstance(value, int) and not isinstance(value, bool)
    if kind == ParameterKind.NUMBER:
        if isinstance(value, bool):
            return False
        if isinstance(value, int):
            return True
        return isinstance(value, float) and math.isfinite(value)
    if kind == ParameterKind.ARRAY:
        return isinstance(value, list) and all(conforms(v, schema.item_schema) for v in value)
    if kind == ParameterKind.OBJECT:
        if not isinstance(value, dict):
            return False
        for name in value:
            if name not in schema.fields:
                return False
        for name, sub in schema.fields.items():
            if name in value:
                if not conforms(value[name], sub):
                    return False
            elif sub.required:
                return False
        return True
    raise AssertionError(f"unhandled kind {kind}")


def cast_value(value: Any, schema: ParameterSchema, name: str) -> Any:
    """Return ``value`` adjusted to conform to ``schema``.

    Conforming values pass through unchanged. Allowed casts: decimal string
    to integer/number, "true"/"false" to boolean, and number to integer when
    the fractional part is exactly zero. Anything else raises.
    """
    kind = schema.kind
    if kind == ParameterKind.ARRAY:
        if not isinstance(value, list):
            raise UncastableValue(name, kind, value)
        return [cast_value(v, schema.item_schema, f"{name}[{i}]") for i, v in enumerate(value)]
    if kind == ParameterKind.OBJECT:
        if not isinstance(value, dict):
            raise UncastableValue(name, kind, value)
        return _cast_object(value, schema, prefix=f"{name}.")
    if conforms(value, schema):
        return value
    if kind == ParameterKind.INTEGER:
        if isinstance(value, str):
            try:
                return int(value)
            except ValueError:
                raise UncastableValue(name, kind, value) from None
        if isinstance(value, float) and math.isfinite(value) and value == int(value):
            return int(value)
    elif kind == ParameterKind.NUMBER:
        if isinstance(value, str):
            try:
                parsed = float(value)
            except ValueError:
                raise UncastableValue(name, kind, value) from None
            if math.isfinite(parsed):
                return parsed
    elif kind == ParameterKind.BOOLEAN:
        if value == "true":
            return True
        if value == "false":
            return False
    raise UncastableValue(name, kind, value)


def _cast_object(arguments: dict[str, Any], schema: ParameterSchema, prefix: str = "") -> dict[str, Any]:
    for name in arguments:
        if name not in schema.fields:
            raise UnknownParameter(f"{prefix}{name}")
    out: dict[str, Any] = {}
    for name, sub in schema.fields.items():
        if name in arguments:
            out[name] = cast_value(arguments[name], sub, f"{prefix}{name}")
        elif sub.required:
            raise MissingRequiredParameter(f"{prefix}{name}")
    return out


def validate_and_cast(arguments: dict[str, Any], schema: ParameterSchema) -> dict[str, Any]:
    """Check ``arguments`` against an object schema, applying simple casts.

    Missing optional parameters are permitted; unknown parameters are
    rejected so the caller (usually an LLM) can self-correct.
    """
    if schema.kind != ParameterKind.OBJECT:
        raise ValueError("validate_and_cast needs an object schema")
    if not isinstance(arguments, dict):
        raise UncastableValue("<arguments>", ParameterKind.OBJECT, arguments)
    return _cast_object(arguments, schema)
