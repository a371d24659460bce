"""
Exception hierarchy for the coincidence calculator.

Everything raised on bad input derives from ``FibredError`` (a ``ValueError``)
so callers at the edge (CLI, HTTP) can map it in one place.
"""
from __future__ import annotations

from typing import Optional


class FibredError(ValueError):
    """Base class for calculator errors."""


class BundleMismatchError(FibredError):
    """Two map classes (or a map and a point) live over different bundles."""


class ContractViolationError(FibredError):
    """An evaluator is not fibre-preserving, or its winding cannot be certified."""


class OmegaInconsistencyError(FibredError):
    """An Omega class whose components cannot come from any pair of maps."""


class NonGenericAngleError(FibredError):
    """The angle chosen for section counting meets a coincidence root on the seam."""


class SpecParseError(FibredError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class GridTooLargeError(FibredError):
    def __init__(self, cells: int, limit: int, suggestion: str):
        self.cells = cells
        self.limit = limit
        self.suggestion = suggestion
        super().__init__(
            f"Refusing to tabulate {cells} cells (limit {limit}). Try {suggestion}."
        )


class DiagramTooLargeError(FibredError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(
            f"Refusing to draw a coincidence diagram with max(|q|, |r|) = {size} (limit {limit})"
        )


class OracleDisagreementError(RuntimeError):
    """Independent computations of the same invariant disagree. This is a defect."""
