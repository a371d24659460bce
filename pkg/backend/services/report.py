"""
Assembly of invariant reports for one pair of maps.

A Report echoes the pair, carries the closed-form invariants, the omega
components and a summary of the minimal coincidence diagram, and records the
outcome of every oracle cross-check that applies to the pair.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field

from config import settings
from core.bundle import MapPair, section_class
from core.errors import BundleMismatchError, DiagramTooLargeError, OracleDisagreementError
from core.geometry import HorizontalCircle, diagram, minimal_representative_diagram
from core.nielsen import full_report
from core.omega import TRIVIAL, omega_class
from core.reidemeister import is_finite
from services.specs import MapSpec
from services.verification import pair_checks

logger = logging.getLogger(__name__)

CardinalityWire = Union[int, Literal["inf"]]


class InvariantSummary(BaseModel):
    reidemeister: CardinalityWire
    nielsen: int
    nielsen_sharp: int
    mcc: int
    loose: bool


class OmegaSummary(BaseModel):
    group: List[str]
    # None stands for the zero summand
    components: List[Optional[int]]
    rendering: str


class DiagramSummary(BaseModel):
    circle_count: int
    wraps: List[int]
    root_cycles: List[List[int]] = Field(default_factory=list)
    vertical_fibres: List[str] = Field(default_factory=list)
    degenerate: bool = False


class OracleFlags(BaseModel):
    checks: Dict[str, Optional[bool]]
    # set when the pair is too large to cross-check
    skipped: Optional[str] = None

    @property
    def all_agree(self) -> bool:
        return all(outcome is not False for outcome in self.checks.values())

    @property
    def failures(self) -> List[str]:
        return [name for name, outcome in self.checks.items() if outcome is False]


class Report(BaseModel):
    f1: MapSpec
    f2: MapSpec
    root_invariant: bool = False
    q: int
    r: int
    invariants: InvariantSummary
    omega: OmegaSummary
    diagram: Optional[DiagramSummary] = None
    oracle: OracleFlags

    def pair(self) -> MapPair:
        return MapPair(self.f1.to_class(), self.f2.to_class())


def pair_from_specs(f1: MapSpec, f2: Optional[MapSpec], root: bool) -> MapPair:
    first = f1.to_class()
    if root:
        if f2 is not None:
            raise ValueError("The root invariant pairs a single map with s_{+1}; got two maps")
        second = section_class(first.domain, first.codomain)
    elif f2 is None:
        raise ValueError("Two maps are required unless the root invariant is requested")
    else:
        second = f2.to_class()
    if first.combo != second.combo:
        raise BundleMismatchError(
            f"Maps {f1} and {f2} do not share domain and codomain"
        )
    return MapPair(first, second)


def pair_size(pair: MapPair) -> int:
    return max(abs(pair.q), abs(pair.r))


def _oracle_limit(limit: Optional[int]) -> int:
    return settings.ORACLE_QMAX if limit is None else limit


def summarize_diagram(pair: MapPair, raw: bool = False, limit: Optional[int] = None) -> DiagramSummary:
    """
    Circles of the minimal representative, or of the standard form when raw.
    `degenerate` always refers to the standard form.
    """
    limit = _oracle_limit(limit)
    if pair_size(pair) > limit:
        raise DiagramTooLargeError(pair_size(pair), limit)
    standard = diagram(pair)
    shown = standard if raw else minimal_representative_diagram(pair)
    return DiagramSummary(
        circle_count=len(shown.circles),
        wraps=shown.wraps,
        root_cycles=[list(c.root_cycle) for c in shown.circles if isinstance(c, HorizontalCircle)],
        vertical_fibres=[str(fibre.base_coordinate) for fibre in shown.vertical_fibres],
        degenerate=standard.degenerate,
    )


def build_report(
    f1: MapSpec,
    f2: Optional[MapSpec] = None,
    root: bool = False,
    window: int = settings.DEFAULT_WINDOW,
    oracle_limit: Optional[int] = None,
) -> Report:
    """
    Above the oracle limit only the closed forms are reported: the diagram and
    the cross-checks grow linearly in |q| and |r|.
    """
    pair = pair_from_specs(f1, f2, root)
    invariants = full_report(pair)
    omega = omega_class(pair)
    limit = _oracle_limit(oracle_limit)
    if pair_size(pair) <= limit:
        summary = summarize_diagram(pair, limit=limit)
        oracle = OracleFlags(checks=pair_checks(pair, window))
    else:
        logger.info("%s: skipping diagram and cross-checks above size %d", pair, limit)
        summary = None
        oracle = OracleFlags(checks={}, skipped=f"max(|q|, |r|) = {pair_size(pair)} is above {limit}")

    report = Report(
        f1=MapSpec.from_class(pair.f1),
        f2=MapSpec.from_class(pair.f2),
        root_invariant=root,
        q=pair.q,
        r=pair.r,
        invariants=InvariantSummary(
            reidemeister=invariants.reidemeister if is_finite(invariants.reidemeister) else "inf",
            nielsen=invariants.nielsen,
            nielsen_sharp=invariants.nielsen_sharp,
            mcc=invariants.mcc,
            loose=invariants.loose,
        ),
        omega=OmegaSummary(
            group=[summand.value for summand in omega.group.summands],
            components=[None if c is TRIVIAL else c for c in omega.components],
            rendering=str(omega),
        ),
        diagram=summary,
        oracle=oracle,
    )
    if not report.oracle.all_agree:
        logger.error("%s: oracle disagreement in %s", pair, ", ".join(report.oracle.failures))
    return report


def require_agreement(report: Report) -> Report:
    if not report.oracle.all_agree:
        raise OracleDisagreementError(
            f"{report.pair()}: cross-checks failed: {', '.join(report.oracle.failures)}"
        )
    return report


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def render_diagram(summary: DiagramSummary, indent: str = "  ") -> List[str]:
    lines = [f"{indent}diagram: {summary.circle_count} circle(s), wraps {summary.wraps}"]
    if summary.degenerate:
        lines.append(f"{indent}  standard representatives coincide everywhere")
    for cycle in summary.root_cycles:
        lines.append(f"{indent}  horizontal circle through roots {' -> '.join(map(str, cycle))}")
    if summary.vertical_fibres:
        lines.append(f"{indent}  vertical fibres over t = {', '.join(summary.vertical_fibres)}")
    return lines


def render_report(report: Report) -> str:
    """Human-readable block for one report."""
    label = "root invariant of" if report.root_invariant else "pair"
    lines = [
        f"{label}: f1 = {report.f1}, f2 = {report.f2}",
        f"  differences: q = {report.q}, r = {report.r}",
        "  "
        + ", ".join(
            f"{name} = {_format_value(value)}"
            for name, value in (
                ("#R", report.invariants.reidemeister),
                ("N", report.invariants.nielsen),
                ("N#", report.invariants.nielsen_sharp),
                ("MCC", report.invariants.mcc),
                ("loose", report.invariants.loose),
            )
        ),
        f"  omega in {' + '.join(report.omega.group)}: {report.omega.rendering}",
    ]
    if report.diagram is not None:
        lines.extend(render_diagram(report.diagram))
    applicable = {k: v for k, v in report.oracle.checks.items() if v is not None}
    if report.oracle.skipped:
        lines.append(f"  diagram and oracle skipped: {report.oracle.skipped}")
    elif report.oracle.all_agree:
        lines.append(f"  oracle: {len(applicable)} checks agree")
    else:
        lines.append(f"  oracle: FAILED {', '.join(report.oracle.failures)}")
    return "\n".join(lines)
