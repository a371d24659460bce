"""
Nielsen numbers and minimal coincidence counts over S^1.

For circle bundles over the circle MCC_B = N_B = N_B^#, and all three equal
the Reidemeister number whenever that is finite.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional

from core.bundle import MapPair
from core.errors import OracleDisagreementError
from core.geometry import CoincidenceCircle, minimal_representative_diagram
from core.reidemeister import (
    Cardinality,
    involution_conjugator,
    is_finite,
    orbit_enumerate,
    reidemeister_count,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvariantReport:
    reidemeister: Cardinality
    nielsen: int
    nielsen_sharp: int
    mcc: int
    loose: bool

    def __post_init__(self):
        problems = []
        if not 0 <= self.nielsen <= self.nielsen_sharp <= self.mcc:
            problems.append("0 <= N <= N# <= MCC fails")
        if is_finite(self.reidemeister) and self.mcc > self.reidemeister:
            problems.append("MCC exceeds the Reidemeister number")
        if self.loose != (self.mcc == 0):
            problems.append("looseness disagrees with MCC")
        if not self.nielsen == self.nielsen_sharp == self.mcc:
            problems.append("N, N# and MCC differ")
        if problems:
            raise OracleDisagreementError(f"Inconsistent invariants {self!r}: {'; '.join(problems)}")


@dataclass(frozen=True)
class NielsenClass:
    # None when the roots are not isolated (q = 0)
    reidemeister_representative: Optional[int]
    circle: CoincidenceCircle
    essential: bool = True


def nielsen_number(pair: MapPair) -> int:
    q, r = abs(pair.q), abs(pair.r)
    if not pair.codomain.is_klein:
        return gcd(q, r)
    if q == 0:
        return 0 if r != 0 else 1
    if q % 2 == 0 and r == 1:
        return q // 2
    return q // 2 + 1


def mcc(pair: MapPair) -> int:
    return nielsen_number(pair)


def nielsen_sharp(pair: MapPair) -> int:
    return nielsen_number(pair)


def is_loose(pair: MapPair) -> bool:
    if pair.codomain.is_klein:
        return pair.q == 0 and pair.r != 0
    return (pair.q, pair.r) == (0, 0)


def full_report(pair: MapPair) -> InvariantReport:
    return InvariantReport(
        reidemeister=reidemeister_count(pair),
        nielsen=nielsen_number(pair),
        nielsen_sharp=nielsen_sharp(pair),
        mcc=mcc(pair),
        loose=is_loose(pair),
    )


def nielsen_classes(pair: MapPair, window: int = 1) -> List[NielsenClass]:
    """
    The essential Nielsen classes, one per circle of a minimal representative.

    When the Reidemeister set is finite every circle is tagged with the orbit
    its roots belong to; root index k on a Klein domain corresponds to the
    element k + r of pi_1(F_N).
    """
    diagram = minimal_representative_diagram(pair)
    if pair.q == 0:
        return [NielsenClass(reidemeister_representative=None, circle=circle) for circle in diagram.circles]

    reidemeister = orbit_enumerate(pair, window)
    to_element = involution_conjugator(pair.r) if pair.domain.is_klein else None
    classes = []
    for circle in diagram.circles:
        elements = [to_element.apply(k) if to_element else k for k in circle.root_cycle]
        orbits = {reidemeister.orbit_of(element) for element in elements}
        if len(orbits) != 1:
            raise OracleDisagreementError(
                f"Circle {circle} of {pair} meets {len(orbits)} Reidemeister classes"
            )
        representative = reidemeister.representatives[orbits.pop()]
        classes.append(NielsenClass(reidemeister_representative=representative, circle=circle))

    if len({c.reidemeister_representative for c in classes}) != len(classes):
        raise OracleDisagreementError(f"Two coincidence circles of {pair} share a Reidemeister class")
    logger.debug("%s: %d essential Nielsen classes", pair, len(classes))
    return classes
