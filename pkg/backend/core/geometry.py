"""
Coincidence diagrams of standard-form representatives.

For a pair in standard form the coincidence locus is a union of circles:
"horizontal" circles made of fibre roots carried around the base (q != 0), or
whole fibres (q = 0). Roots are solved from the offset between the two
standard maps, checked against both maps, and labelled by an integer that is
constant along each root curve. The gluing of the domain then permutes the
labels, and the cycles of that permutation are the coincidence circles.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from core.bundle import MapPair, Rational, standard_map
from core.errors import NonGenericAngleError, OracleDisagreementError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HorizontalCircle:
    base_wrap: int
    root_cycle: Tuple[int, ...]

    def __post_init__(self):
        if self.base_wrap < 1 or self.base_wrap != len(self.root_cycle):
            raise ValueError(f"base_wrap {self.base_wrap} does not match root cycle {self.root_cycle}")

    @property
    def kind(self) -> str:
        return "horizontal"


@dataclass(frozen=True)
class VerticalFibre:
    base_coordinate: Fraction

    @property
    def kind(self) -> str:
        return "vertical"


CoincidenceCircle = Union[HorizontalCircle, VerticalFibre]


@dataclass(frozen=True)
class CoincidenceDiagram:
    pair: MapPair
    circles: Tuple[CoincidenceCircle, ...] = ()
    # the standard representatives coincide identically (q = 0, r = 0)
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "circles", tuple(self.circles))
        if self.degenerate and self.circles:
            raise ValueError("A degenerate diagram carries no circles")
        horizontal = self.horizontal_circles
        vertical = self.vertical_fibres
        if horizontal and self.pair.q == 0:
            raise ValueError("Horizontal circles need isolated roots (q != 0)")
        if vertical and self.pair.q != 0:
            raise ValueError("Whole-fibre coincidences only occur for q = 0")
        if self.pair.q != 0 and not self.degenerate:
            labels = sorted(k for circle in horizontal for k in circle.root_cycle)
            if labels != list(range(abs(self.pair.q))):
                raise ValueError(f"Root cycles {horizontal} do not partition Z/{abs(self.pair.q)}")
        coordinates = [fibre.base_coordinate for fibre in vertical]
        if len(set(coordinates)) != len(coordinates):
            raise ValueError("Vertical fibres must sit over distinct base points")

    @property
    def horizontal_circles(self) -> List[HorizontalCircle]:
        return [c for c in self.circles if isinstance(c, HorizontalCircle)]

    @property
    def vertical_fibres(self) -> List[VerticalFibre]:
        return [c for c in self.circles if isinstance(c, VerticalFibre)]

    @property
    def wraps(self) -> List[int]:
        return sorted(c.base_wrap for c in self.horizontal_circles)


def _require_isolated_roots(pair: MapPair) -> int:
    if pair.q == 0:
        raise ValueError(f"{pair}: coincidence roots are not isolated when q = 0")
    return abs(pair.q)


def _root_label(pair: MapPair, t: Rational, theta: Fraction) -> int:
    """Integer label of a root; constant along each root curve."""
    modulus = abs(pair.q)
    if pair.codomain.is_klein:
        value = modulus * theta - Fraction(pair.r, 2)
    else:
        value = pair.q * theta + pair.r * Fraction(t)
    if value.denominator != 1:
        raise OracleDisagreementError(f"{pair}: {theta} at t={t} is not a coincidence root")
    return int(value) % modulus


@lru_cache(maxsize=8192)
def _fibre_roots(pair: MapPair, t: Fraction) -> Tuple[Tuple[int, Fraction], ...]:
    modulus = _require_isolated_roots(pair)
    f1, f2 = standard_map(pair.f1), standard_map(pair.f2)
    # the difference of fibre angles is offset + q*theta (mod 1)
    offset = f1.fibre_angle(t, 0) - f2.fibre_angle(t, 0)
    roots: Dict[int, Fraction] = {}
    for k in range(modulus):
        theta = ((k - offset) / pair.q) % 1
        if f1.fibre_angle(t, theta) != f2.fibre_angle(t, theta):
            raise OracleDisagreementError(f"{pair}: {theta} over t={t} is not a coincidence")
        roots[_root_label(pair, t, theta)] = theta
    if sorted(roots) != list(range(modulus)):
        raise OracleDisagreementError(f"{pair}: expected {modulus} roots over t={t}, found {sorted(roots)}")
    return tuple(sorted(roots.items()))


def _solve_fibre(pair: MapPair, t: Rational) -> Dict[int, Fraction]:
    """Coincidences of the standard maps in the fibre over t (raw chart), by label."""
    return dict(_fibre_roots(pair, Fraction(t)))


def coincidence_roots(pair: MapPair, t: Rational) -> List[Fraction]:
    """Fibre angles of the coincidence points over t, ordered by root label."""
    roots = _solve_fibre(pair, Fraction(t) % 1)
    return [roots[k] for k in range(abs(pair.q))]


def gluing_permutation(pair: MapPair) -> Tuple[int, ...]:
    """sigma(k): label at t=0 of the root that arrives at the seam with label k."""
    modulus = _require_isolated_roots(pair)
    arriving = _solve_fibre(pair, 1)
    start = {theta: k for k, theta in _solve_fibre(pair, 0).items()}
    permutation = []
    for k in range(modulus):
        glued = pair.domain.glue(arriving[k])
        if glued not in start:
            raise OracleDisagreementError(f"{pair}: root {arriving[k]} glues onto a non-root")
        permutation.append(start[glued])
    if sorted(permutation) != list(range(modulus)):
        raise OracleDisagreementError(f"{pair}: gluing does not permute the roots")
    return tuple(permutation)


def permutation_cycles(permutation: Sequence[int]) -> List[Tuple[int, ...]]:
    """Cycles, each starting at its least element, sorted by that element."""
    seen = set()
    cycles = []
    for start in range(len(permutation)):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        k = permutation[start]
        while k != start:
            cycle.append(k)
            seen.add(k)
            k = permutation[k]
        cycles.append(tuple(cycle))
    return cycles


def _vertical_fibres(pair: MapPair) -> List[VerticalFibre]:
    """Base points whose whole fibre is coincident (q = 0, T target)."""
    f1, f2 = standard_map(pair.f1), standard_map(pair.f2)
    count = abs(pair.r)
    return [
        VerticalFibre(Fraction(j, count))
        for j in range(count)
        if f1.fibre_angle(Fraction(j, count), 0) == f2.fibre_angle(Fraction(j, count), 0)
    ]


@lru_cache(maxsize=8192)
def diagram(pair: MapPair) -> CoincidenceDiagram:
    if pair.q != 0:
        circles = [
            HorizontalCircle(base_wrap=len(cycle), root_cycle=cycle)
            for cycle in permutation_cycles(gluing_permutation(pair))
        ]
        return CoincidenceDiagram(pair, tuple(circles))
    if pair.r == 0:
        return CoincidenceDiagram(pair, degenerate=True)
    if pair.codomain.is_klein:
        # antipodal constant sections never meet
        return CoincidenceDiagram(pair)
    return CoincidenceDiagram(pair, tuple(_vertical_fibres(pair)))


def minimal_representative_diagram(pair: MapPair) -> CoincidenceDiagram:
    """
    Diagram of a representative with MCC_B coincidence components.

    Identical standard maps into T are separated by a constant fibrewise
    rotation. Into K, s_{+1} pushed off itself by a bump away from t=0 still
    meets itself in one fibre, the one over t=0.
    """
    standard = diagram(pair)
    if not standard.degenerate:
        return standard
    if pair.codomain.is_klein:
        return CoincidenceDiagram(pair, (VerticalFibre(Fraction(0)),))
    return CoincidenceDiagram(pair)


def fibre_intersection_count(d: CoincidenceDiagram) -> int:
    if d.degenerate:
        raise ValueError("Intersection counts are undefined for a degenerate diagram")
    return sum(circle.base_wrap for circle in d.horizontal_circles)


def section_intersection_count(d: CoincidenceDiagram, generic_angle: Rational) -> int:
    """Points where the coincidence circles cross the level theta = generic_angle."""
    if d.degenerate:
        raise ValueError("Intersection counts are undefined for a degenerate diagram")
    pair = d.pair
    if pair.codomain.is_klein:
        raise ValueError("Into K the circles do not cross a section transversally; use root_phase_residue")

    alpha = Fraction(generic_angle) % 1
    count = len(d.vertical_fibres)
    if not d.horizontal_circles:
        return count

    if alpha in _solve_fibre(pair, 0).values():
        raise NonGenericAngleError(
            f"Angle {alpha} meets a coincidence root on the seam of {pair}; choose another angle"
        )
    if pair.r == 0:
        return count

    labelled = {k for circle in d.horizontal_circles for k in circle.root_cycle}
    for j in range(abs(pair.r)):
        # r*t = j - q*alpha (mod 1)
        t = ((j - pair.q * alpha) / pair.r) % 1
        if _root_label(pair, t, alpha) not in labelled:
            raise OracleDisagreementError(f"{pair}: crossing at t={t} lies on no circle")
        count += 1
    return count


def root_phase_residue(pair: MapPair) -> int:
    """r of a pair into K, read from where the roots sit in the fibre over t=0."""
    if not pair.codomain.is_klein:
        raise ValueError("Root phase only determines r for Klein bottle targets")
    modulus = _require_isolated_roots(pair)
    phase = min(coincidence_roots(pair, 0)) * 2 * modulus
    if phase not in (0, 1):
        raise OracleDisagreementError(f"{pair}: unexpected root phase {phase}")
    return int(phase)


def generic_section_angle(pair: MapPair) -> Fraction:
    """An angle just above 1/2 (the level of s_{-1}) that avoids the roots on the seam."""
    roots = set(_solve_fibre(pair, 0).values()) if pair.q != 0 else set()
    candidate: Optional[Fraction] = None
    for step in range(abs(pair.q) + 2):
        candidate = Fraction(1, 2) + Fraction(1, 2 * (abs(pair.q) + step + 2))
        if candidate not in roots:
            return candidate
        logger.debug("%s: angle %s meets a root, resampling", pair, candidate)
    raise NonGenericAngleError(f"No generic angle found near 1/2 for {pair}")
