"""
Reidemeister sets over the base.

pi_1(M) acts on pi_1(F_N) = Z through affine maps k -> sign*k + offset. The
Reidemeister set over S^1 is the orbit set of that action; this module builds
the generators, enumerates orbits by breadth-first search and evaluates the
closed-form counts they must agree with.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple, Union

from core.bundle import MapPair

logger = logging.getLogger(__name__)


class Infinite:
    """Cardinality of an infinite Reidemeister set."""

    _instance: Optional["Infinite"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (Infinite, ())


INFINITE = Infinite()
Cardinality = Union[int, Infinite]


def is_finite(cardinality: Cardinality) -> bool:
    return not isinstance(cardinality, Infinite)


@dataclass(frozen=True)
class AffineGenerator:
    """k -> sign*k + offset on Z."""

    sign: int
    offset: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    def apply(self, k: int) -> int:
        return self.sign * k + self.offset

    def apply_mod(self, k: int, modulus: int) -> int:
        return self.apply(k) % modulus

    def compose(self, other: "AffineGenerator") -> "AffineGenerator":
        """self after other."""
        return AffineGenerator(self.sign * other.sign, self.sign * other.offset + self.offset)

    def inverse(self) -> "AffineGenerator":
        return AffineGenerator(self.sign, -self.sign * self.offset)

    @property
    def is_identity(self) -> bool:
        return self.sign == 1 and self.offset == 0

    def __str__(self) -> str:
        head = "k" if self.sign == 1 else "-k"
        if self.offset == 0:
            return f"k -> {head}"
        return f"k -> {head} {'+' if self.offset > 0 else '-'} {abs(self.offset)}"


IDENTITY = AffineGenerator(1, 0)


@dataclass(frozen=True)
class ReidemeisterSet:
    cardinality: Cardinality
    representatives: Tuple[int, ...] = ()
    orbit_map: Dict[int, int] = field(default_factory=dict)
    # orbits meeting [-window, window]; only filled for infinite sets
    window_orbits: Tuple[Tuple[int, ...], ...] = ()
    modulus: Optional[int] = None

    def __post_init__(self):
        if is_finite(self.cardinality) and self.cardinality != len(self.representatives):
            raise ValueError("Finite Reidemeister set must list one representative per orbit")

    @property
    def is_finite(self) -> bool:
        return is_finite(self.cardinality)

    def orbit_of(self, k: int) -> int:
        if not self.is_finite:
            raise ValueError("Orbit indices are only defined for finite Reidemeister sets")
        return self.orbit_map[k % self.modulus]


@dataclass(frozen=True)
class InvolutionReport:
    q: int
    fixed_count: int
    fixed_points: Tuple[int, ...]


def action_generators(pair: MapPair) -> List[AffineGenerator]:
    """Generators a_M, b_M of pi_1(M) acting on pi_1(F_N) = Z."""
    fibre_generator = AffineGenerator(1, -pair.q)
    if pair.codomain.is_klein:
        return [fibre_generator, AffineGenerator(-1, pair.r)]
    return [fibre_generator, AffineGenerator(1, -pair.r)]


def _orbit_modulus(pair: MapPair) -> Optional[int]:
    """A modulus the acting subgroup contains, or None if the orbit set is infinite."""
    if pair.q != 0:
        return abs(pair.q)
    if not pair.codomain.is_klein and pair.r != 0:
        return abs(pair.r)
    return None


def _closure(start: int, generators: Iterable[AffineGenerator], step) -> List[int]:
    seen = {start}
    queue = deque([start])
    orbit = [start]
    while queue:
        k = queue.popleft()
        for generator in generators:
            for image in (step(generator, k), step(generator.inverse(), k)):
                if image not in seen:
                    seen.add(image)
                    orbit.append(image)
                    queue.append(image)
    return sorted(orbit)


def orbit_enumerate(pair: MapPair, window: int) -> ReidemeisterSet:
    generators = action_generators(pair)
    modulus = _orbit_modulus(pair)

    if modulus is not None:
        orbit_map: Dict[int, int] = {}
        representatives: List[int] = []
        for k in range(modulus):
            if k in orbit_map:
                continue
            orbit = _closure(k, generators, lambda g, x: g.apply_mod(x, modulus))
            index = len(representatives)
            representatives.append(orbit[0])
            for element in orbit:
                orbit_map[element] = index
        return ReidemeisterSet(
            cardinality=len(representatives),
            representatives=tuple(representatives),
            orbit_map=orbit_map,
            modulus=modulus,
        )

    if window < 1:
        raise ValueError(f"window must be >= 1 when q = 0, got {window}")
    # q = 0: the only nontrivial generator is a reflection (K target) or the identity
    # (T target with r = 0), so every orbit in Z has at most two elements.
    seen: Dict[int, Tuple[int, ...]] = {}
    orbits: List[Tuple[int, ...]] = []
    for k in range(-window, window + 1):
        if k in seen:
            continue
        orbit = tuple(_closure(k, generators, lambda g, x: g.apply(x)))
        if len(orbit) > 2:
            raise AssertionError(f"Orbit {orbit} of {pair} exceeds the structural bound 2")
        orbits.append(orbit)
        for element in orbit:
            seen[element] = orbit
    logger.debug("%s: %d orbits meet the window [-%d, %d]", pair, len(orbits), window, window)
    return ReidemeisterSet(cardinality=INFINITE, window_orbits=tuple(orbits))


def involution_fixed_points(q: int, r1: int, r2: int) -> InvolutionReport:
    """Fixed points of k -> (r1 - r2) - k on Z/|q|."""
    if q == 0:
        raise ValueError("The involution is only defined on Z/q for q != 0")
    modulus = abs(q)
    target = (r1 - r2) % modulus
    fixed = tuple(k for k in range(modulus) if (2 * k) % modulus == target)
    return InvolutionReport(q=q, fixed_count=len(fixed), fixed_points=fixed)


def reidemeister_count(pair: MapPair) -> Cardinality:
    q, r = abs(pair.q), abs(pair.r)
    if not pair.codomain.is_klein:
        return gcd(q, r) if (q, r) != (0, 0) else INFINITE
    if not pair.domain.is_klein or q == 0:
        return INFINITE
    if q % 2 == 0 and r == 1:
        return q // 2
    return q // 2 + 1


def reidemeister_equivalent(pair: MapPair, m: int, n: int) -> bool:
    """Whether m, n in pi_1(F_N) = Z lie in the same Reidemeister class over S^1."""
    q, r = pair.q, pair.r
    if pair.codomain.is_klein:
        if q == 0:
            return m == n or m + n == r
        return (m - n) % q == 0 or (m + n - r) % q == 0
    step = gcd(abs(q), abs(r))
    if step == 0:
        return m == n
    return (m - n) % step == 0


def geometric_involution(q: int, r: int) -> AffineGenerator:
    """k -> -k - r: how the Klein gluing permutes coincidence roots."""
    if q == 0:
        raise ValueError("Roots are only isolated for q != 0")
    return AffineGenerator(-1, -r)


def involution_conjugator(r: int) -> AffineGenerator:
    """Translation carrying the geometric involution onto k -> r - k."""
    return AffineGenerator(1, r)
