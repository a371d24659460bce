"""
Ingestion of map specifications.

A map is given either as a line `DOMAIN CODOMAIN q r` (e.g. `K K 4 1`), as a
JSON object with those four fields, or as a JSON array of such objects.
"""
from __future__ import annotations

import logging
from typing import Iterable, List, Literal, Optional

from pydantic import BaseModel, TypeAdapter, ValidationError, field_validator, model_validator

from core.bundle import FiberMapClass
from core.errors import SpecParseError

logger = logging.getLogger(__name__)

SPEC_FIELDS = ("domain", "codomain", "q", "r")


class MapSpec(BaseModel):
    domain: Literal["T", "K"]
    codomain: Literal["T", "K"]
    q: int
    r: int

    @field_validator("domain", "codomain", mode="before")
    @classmethod
    def _upper(cls, value):
        return value.strip().upper() if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_class(self) -> "MapSpec":
        if self.domain != self.codomain and self.q != 0:
            raise ValueError(f"maps {self.domain} -> {self.codomain} have q = 0, got q = {self.q}")
        if self.codomain == "K":
            if abs(self.r) > 1:
                logger.warning("r=%s reduced mod 2 to %s for a Klein bottle target", self.r, self.r % 2)
            self.r = self.r % 2
        return self

    def to_class(self) -> FiberMapClass:
        return FiberMapClass(self.domain, self.codomain, self.q, self.r)

    @classmethod
    def from_class(cls, map_class: FiberMapClass) -> "MapSpec":
        return cls(
            domain=map_class.domain.value,
            codomain=map_class.codomain.value,
            q=map_class.q,
            r=map_class.r,
        )

    def __str__(self) -> str:
        return f"{self.domain} {self.codomain} {self.q} {self.r}"


_SPEC_LIST = TypeAdapter(List[MapSpec])


def _raise_from_validation(exc: ValidationError, line: Optional[int] = None) -> None:
    error = exc.errors()[0]
    loc = [str(part) for part in error.get("loc", ()) if not isinstance(part, int)]
    raise SpecParseError(error.get("msg", "invalid map spec"), line=line, field=".".join(loc) or None) from exc


def parse_spec_line(text: str, line: Optional[int] = None) -> MapSpec:
    stripped = text.strip()
    try:
        if stripped.startswith("{"):
            return MapSpec.model_validate_json(stripped)
        tokens = stripped.split()
        if len(tokens) != len(SPEC_FIELDS):
            raise SpecParseError(
                f"expected 'DOMAIN CODOMAIN q r', got {len(tokens)} field(s)", line=line
            )
        values = dict(zip(SPEC_FIELDS, tokens))
        for name in ("q", "r"):
            try:
                values[name] = int(values[name])
            except ValueError:
                raise SpecParseError(f"{values[name]!r} is not an integer", line=line, field=name)
        return MapSpec(**values)
    except ValidationError as exc:
        _raise_from_validation(exc, line)


def parse_specs(text_or_lines) -> List[MapSpec]:
    """Parse a whole document: a JSON array, or one spec per line."""
    text = text_or_lines if isinstance(text_or_lines, str) else "\n".join(text_or_lines)
    if text.strip().startswith("["):
        try:
            return _SPEC_LIST.validate_json(text)
        except ValidationError as exc:
            _raise_from_validation(exc)

    specs = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            specs.append(parse_spec_line(content, number))
    return specs


def parse_spec_arguments(arguments: Iterable[str]) -> List[MapSpec]:
    """Specs given one per command-line argument."""
    return [parse_spec_line(argument, number) for number, argument in enumerate(arguments, start=1)]
