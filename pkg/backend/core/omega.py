"""
The normal bordism invariant omega_B(f1, f2) in Omega_1(M; phi).

For circle bundles over the circle the group splits into three summands:
fibre intersections, intersections with s_{-1}, and a Z_2 counting the
invariantly framed circles. Components are kept exactly as integers, with
the first summand absent for mixed (M, N).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

from core.bundle import BundleSpace, FiberMapClass, MapPair, identity_class, section_class
from core.errors import BundleMismatchError, OmegaInconsistencyError
from core.nielsen import nielsen_number

logger = logging.getLogger(__name__)


class Summand(str, Enum):
    Z = "Z"
    Z2 = "Z2"
    ZERO = "0"

    def contains(self, value) -> bool:
        if self is Summand.ZERO:
            return value is TRIVIAL
        if value is TRIVIAL or isinstance(value, bool) or not isinstance(value, int):
            return False
        return self is Summand.Z or value in (0, 1)


class _Trivial:
    """The only element of the zero summand."""

    def __repr__(self) -> str:
        return "TRIVIAL"

    def __str__(self) -> str:
        return "0"

    def __reduce__(self):
        return "TRIVIAL"


TRIVIAL = _Trivial()
Component = Union[int, _Trivial]

_GROUPS = {
    (BundleSpace.TORUS, BundleSpace.TORUS): (Summand.Z, Summand.Z, Summand.Z2),
    (BundleSpace.KLEIN, BundleSpace.KLEIN): (Summand.Z, Summand.Z2, Summand.Z2),
    (BundleSpace.KLEIN, BundleSpace.TORUS): (Summand.ZERO, Summand.Z, Summand.Z2),
    (BundleSpace.TORUS, BundleSpace.KLEIN): (Summand.ZERO, Summand.Z2, Summand.Z2),
}


@dataclass(frozen=True)
class OmegaGroupDescriptor:
    combo: Tuple[BundleSpace, BundleSpace]
    summands: Tuple[Summand, Summand, Summand]

    def __str__(self) -> str:
        return " + ".join(s.value for s in self.summands)


@dataclass(frozen=True)
class OmegaClass:
    group: OmegaGroupDescriptor
    c1: Component
    c2: int
    c3: int

    def __post_init__(self):
        for summand, value in zip(self.group.summands, self.components):
            if not summand.contains(value):
                raise OmegaInconsistencyError(f"{value!r} is not an element of {summand.value}")

    @property
    def components(self) -> Tuple[Component, int, int]:
        return self.c1, self.c2, self.c3

    @property
    def is_zero(self) -> bool:
        return self.c1 in (0, TRIVIAL) and self.c2 == 0 and self.c3 == 0

    def __str__(self) -> str:
        return f"({self.c1}, {self.c2}, {self.c3})"


@dataclass(frozen=True)
class DoldIndexComponents:
    first: int
    second: int


def omega_group(domain: BundleSpace, codomain: BundleSpace) -> OmegaGroupDescriptor:
    combo = (BundleSpace.parse(domain), BundleSpace.parse(codomain))
    return OmegaGroupDescriptor(combo=combo, summands=_GROUPS[combo])


def _second_component(combo, q: int, r: int) -> int:
    domain, codomain = combo
    if not codomain.is_klein:
        return r
    # s_{+1} and s_{-1} each meet themselves once in K
    if domain.is_klein:
        return (r + 1 + q) % 2
    return (r + 1) % 2


def omega_class(pair: MapPair) -> OmegaClass:
    group = omega_group(pair.domain, pair.codomain)
    c1 = pair.q if group.summands[0] is Summand.Z else TRIVIAL
    return OmegaClass(
        group=group,
        c1=c1,
        c2=_second_component(pair.combo, pair.q, pair.r),
        c3=nielsen_number(pair) % 2,
    )


def root_invariant(f: FiberMapClass) -> OmegaClass:
    """The fibred degree omega_B(f, s_{+1} o p)."""
    return omega_class(MapPair(f, section_class(f.domain, f.codomain)))


def recover_pair_invariants(omega: OmegaClass) -> Tuple[int, int]:
    domain, codomain = omega.group.combo
    q = omega.c1 if omega.group.summands[0] is Summand.Z else 0
    if not codomain.is_klein:
        r = omega.c2
    elif domain.is_klein:
        r = (omega.c2 + 1 + q) % 2
    else:
        r = (omega.c2 + 1) % 2

    expected = nielsen_number(MapPair.from_differences(domain, codomain, q, r)) % 2
    if omega.c3 != expected:
        raise OmegaInconsistencyError(
            f"Third component {omega.c3} of {omega} contradicts (q, r) = ({q}, {r}), "
            f"which forces {expected}"
        )
    return q, r


def hurewicz_truncation(omega: OmegaClass) -> Tuple[Component, int]:
    return omega.c1, omega.c2


def dold_index_components(f: FiberMapClass) -> DoldIndexComponents:
    """
    The two computable components of the fixed point index of a self-map:
    1 - q(f), and the parity of N_B(id, f).
    """
    if f.domain is not f.codomain:
        raise BundleMismatchError(f"{f} is not a self-map")
    identity = identity_class(f.domain)
    pair = MapPair(identity, f)
    return DoldIndexComponents(first=pair.q, second=nielsen_number(pair) % 2)