"""
Circle bundles over the circle: the torus T and the Klein bottle K.

Both are I x S^1 with the end fibres glued, by the identity on T and by
complex conjugation on K. A point is stored as exact rational coordinates
(t, theta), where theta is the fibre angle in turns (z = exp(2 pi i theta)).

Maps over the base are classified up to homotopy by two integers: the fibre
degree q and the winding r of the image of the section s_{+1}. For a Klein
bottle target r is only defined mod 2 and is stored as 0 or 1.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import floor
from typing import Callable, List, Protocol, Tuple, Union

from core.errors import BundleMismatchError, ContractViolationError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

# Winding certification: refine n -> 2n + 1 until three resolutions in a row agree.
_INITIAL_SAMPLES = 8
_AGREEING_RESOLUTIONS = 3
_MAX_SAMPLES = 1 << 16
_MAX_CERTIFIED_STEP = Fraction(1, 4)


class BundleSpace(str, Enum):
    TORUS = "T"
    KLEIN = "K"

    @classmethod
    def parse(cls, value: Union[str, "BundleSpace"]) -> "BundleSpace":
        if isinstance(value, BundleSpace):
            return value
        text = str(value).strip().upper()
        aliases = {"T": cls.TORUS, "TORUS": cls.TORUS, "K": cls.KLEIN, "KLEIN": cls.KLEIN}
        if text not in aliases:
            raise ValueError(f"Unknown bundle space {value!r}; expected 'T' or 'K'")
        return aliases[text]

    @property
    def is_klein(self) -> bool:
        return self is BundleSpace.KLEIN

    def glue(self, theta: Rational) -> Fraction:
        """Fibre angle over t=0 of the point written (1, theta)."""
        angle = Fraction(theta)
        if self.is_klein:
            angle = -angle
        return angle % 1

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BundlePoint:
    """A point of T or K in canonical form: 0 <= t < 1, 0 <= theta < 1."""

    space: BundleSpace
    t: Fraction
    theta: Fraction

    def __post_init__(self):
        space = BundleSpace.parse(self.space)
        t = Fraction(self.t)
        theta = Fraction(self.theta) % 1
        crossings = floor(t)
        t -= crossings
        # every crossing of the seam applies the gluing once
        if space.is_klein and crossings % 2:
            theta = space.glue(theta)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "theta", theta)


Evaluator = Callable[[BundlePoint], BundlePoint]


def section(space: BundleSpace, epsilon: int) -> Callable[[Rational], BundlePoint]:
    """The constant-angle section s_epsilon: angle 0 for +1, angle 1/2 for -1."""
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon!r}")
    space = BundleSpace.parse(space)
    level = Fraction(0) if epsilon == 1 else Fraction(1, 2)

    def evaluate(t: Rational) -> BundlePoint:
        return BundlePoint(space, t, level)

    return evaluate


@dataclass(frozen=True)
class FiberMapClass:
    """Homotopy class over S^1 of a fibre-preserving map M -> N."""

    domain: BundleSpace
    codomain: BundleSpace
    q: int
    r: int

    def __post_init__(self):
        domain = BundleSpace.parse(self.domain)
        codomain = BundleSpace.parse(self.codomain)
        if domain is not codomain and self.q != 0:
            raise ValueError(
                f"A map {domain} -> {codomain} has fibre degree 0; got q={self.q}"
            )
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "r", int(self.r) % 2 if codomain.is_klein else int(self.r))

    @property
    def combo(self) -> Tuple[BundleSpace, BundleSpace]:
        return self.domain, self.codomain

    def __str__(self) -> str:
        return f"({self.domain},{self.codomain},q={self.q},r={self.r})"


def identity_class(space: BundleSpace) -> FiberMapClass:
    space = BundleSpace.parse(space)
    return FiberMapClass(space, space, 1, 0)


def section_class(domain: BundleSpace, codomain: BundleSpace, epsilon: int = 1) -> FiberMapClass:
    """Class of s_epsilon composed with the projection of the domain."""
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon!r}")
    codomain = BundleSpace.parse(codomain)
    r = 1 if epsilon == -1 and codomain.is_klein else 0
    return FiberMapClass(domain, codomain, 0, r)


@dataclass(frozen=True)
class MapPair:
    """Two maps M -> N over S^1 together with their differences q and r."""

    f1: FiberMapClass
    f2: FiberMapClass
    q: int = field(init=False)
    r: int = field(init=False)

    def __post_init__(self):
        if self.f1.combo != self.f2.combo:
            raise BundleMismatchError(
                f"Pair members disagree: {self.f1.domain}->{self.f1.codomain} "
                f"vs {self.f2.domain}->{self.f2.codomain}"
            )
        r = self.f1.r - self.f2.r
        if self.codomain.is_klein:
            r %= 2
        object.__setattr__(self, "q", self.f1.q - self.f2.q)
        object.__setattr__(self, "r", r)

    @classmethod
    def from_differences(cls, domain, codomain, q: int, r: int) -> "MapPair":
        """The pair (f, s_{+1} o p) whose differences are (q, r)."""
        return cls(FiberMapClass(domain, codomain, q, r), section_class(domain, codomain))

    @property
    def domain(self) -> BundleSpace:
        return self.f1.domain

    @property
    def codomain(self) -> BundleSpace:
        return self.f1.codomain

    @property
    def combo(self) -> Tuple[BundleSpace, BundleSpace]:
        return self.f1.combo

    @property
    def invariants(self) -> Tuple[int, int]:
        return self.q, self.r

    def swapped(self) -> "MapPair":
        return MapPair(self.f2, self.f1)

    def __str__(self) -> str:
        return f"{self.domain}{self.codomain}(q={self.q}, r={self.r})"


@dataclass(frozen=True)
class StandardMap:
    """
    The standard representative of a class:
    [t, theta] -> [t, r*t + q*theta] into T, [t, r/2 + q*theta] into K.
    """

    map_class: FiberMapClass

    @property
    def domain(self) -> BundleSpace:
        return self.map_class.domain

    @property
    def codomain(self) -> BundleSpace:
        return self.map_class.codomain

    def fibre_angle(self, t: Rational, theta: Rational) -> Fraction:
        q, r = self.map_class.q, self.map_class.r
        if self.codomain.is_klein:
            return (Fraction(r, 2) + q * Fraction(theta)) % 1
        return (r * Fraction(t) + q * Fraction(theta)) % 1

    def at(self, t: Rational, theta: Rational) -> BundlePoint:
        """Evaluate on the raw representative (t, theta), t in [0, 1]."""
        return BundlePoint(self.codomain, t, self.fibre_angle(t, theta))

    def __call__(self, point: BundlePoint) -> BundlePoint:
        if point.space is not self.domain:
            raise BundleMismatchError(f"Point of {point.space} passed to a map on {self.domain}")
        return self.at(point.t, point.theta)


def standard_map(map_class: FiberMapClass) -> StandardMap:
    return StandardMap(map_class)


@dataclass(frozen=True)
class FibrewiseProduct:
    """Pointwise complex multiplication of two evaluators into the same bundle."""

    left: Evaluator
    right: Evaluator
    invert_right: bool = False

    def __call__(self, point: BundlePoint) -> BundlePoint:
        a = self.left(point)
        b = self.right(point)
        if a.space is not b.space or a.t != b.t:
            raise ContractViolationError("Factors of a fibrewise product must agree over the base")
        angle = a.theta - b.theta if self.invert_right else a.theta + b.theta
        return BundlePoint(a.space, a.t, angle)


def _wrapped_step(start: Fraction, end: Fraction) -> Fraction:
    step = (end - start) % 1
    if step > Fraction(1, 2):
        step -= 1
    return step


def _certified_lift(sample: Callable[[int], List[Fraction]], what: str) -> Tuple[Fraction, Fraction]:
    """
    Lift a sampled closed path of angles. Returns (start, lifted end).

    The sample count goes n -> 2n + 1, so consecutive counts are coprime. A
    winding w read as w' at several counts forces w - w' to be a multiple of
    their lcm, so the lift is accepted only when _AGREEING_RESOLUTIONS
    consecutive counts give the same end with every step under a quarter turn.
    """
    samples = _INITIAL_SAMPLES
    agreeing: List[Fraction] = []
    while samples <= _MAX_SAMPLES:
        angles = sample(samples)
        steps = [_wrapped_step(a, b) for a, b in zip(angles, angles[1:])]
        end = angles[0] + sum(steps, Fraction(0))
        if max(abs(step) for step in steps) >= _MAX_CERTIFIED_STEP:
            agreeing = []
        elif agreeing and agreeing[-1] != end:
            agreeing = [end]
        else:
            agreeing.append(end)
        if len(agreeing) == _AGREEING_RESOLUTIONS:
            return angles[0], end
        samples = 2 * samples + 1
    raise ContractViolationError(f"Could not certify the winding of {what} with {_MAX_SAMPLES} samples")


def _checked_image(evaluator: Evaluator, point: BundlePoint, codomain: BundleSpace) -> BundlePoint:
    image = evaluator(point)
    if image.space is not codomain or image.t != point.t:
        raise ContractViolationError(
            f"Evaluator is not fibre-preserving at t={point.t}, theta={point.theta}"
        )
    return image


def extract_invariants(evaluator: Evaluator, domain: BundleSpace, codomain: BundleSpace) -> Tuple[int, int]:
    """
    Read (q, r) off an exactly evaluable map over S^1.

    q is the winding of the fibre over t=0. r is the winding of the image of
    s_{+1}; into K it is the parity of phi(0) + phi(1) for a continuous lift
    phi of that image, which is 0 near s_{+1} and 1 near s_{-1}.
    """
    domain = BundleSpace.parse(domain)
    codomain = BundleSpace.parse(codomain)

    def fibre_samples(n: int) -> List[Fraction]:
        angles = [
            _checked_image(evaluator, BundlePoint(domain, 0, Fraction(j, n)), codomain).theta
            for j in range(n)
        ]
        return angles + [angles[0]]

    def section_samples(n: int) -> List[Fraction]:
        angles = [
            _checked_image(evaluator, BundlePoint(domain, Fraction(j, n), 0), codomain).theta
            for j in range(n)
        ]
        # the endpoint t=1 is the same point as t=0, written in the glued chart
        return angles + [codomain.glue(angles[0])]

    start, end = _certified_lift(fibre_samples, "the fibre loop")
    q = end - start
    if q.denominator != 1:
        raise ContractViolationError("Fibre loop does not close up")

    start, end = _certified_lift(section_samples, "the image of s_{+1}")
    if codomain.is_klein:
        parity = start + end
        if parity.denominator != 1:
            raise ContractViolationError("Image of s_{+1} is not a section of the Klein bottle")
        r = int(parity) % 2
    else:
        winding = end - start
        if winding.denominator != 1:
            raise ContractViolationError("Image of s_{+1} does not close up")
        r = int(winding)
    logger.debug("Extracted invariants q=%s r=%s (%s -> %s)", q, r, domain, codomain)
    return int(q), r


def _require_same_bundles(f: FiberMapClass, g: FiberMapClass) -> None:
    if f.combo != g.combo:
        raise BundleMismatchError(f"Classes {f} and {g} are not maps between the same bundles")


def fibrewise_multiply(f: FiberMapClass, g: FiberMapClass) -> FiberMapClass:
    _require_same_bundles(f, g)
    return FiberMapClass(f.domain, f.codomain, f.q + g.q, f.r + g.r)


def fibrewise_inverse(f: FiberMapClass) -> FiberMapClass:
    return FiberMapClass(f.domain, f.codomain, -f.q, -f.r)


def reduce_pair(pair: MapPair) -> Tuple[FiberMapClass, FiberMapClass]:
    """(f1 * f2^-1, s_{+1} o p): same coincidence locus as the original pair."""
    reduced = fibrewise_multiply(pair.f1, fibrewise_inverse(pair.f2))
    return reduced, section_class(pair.domain, pair.codomain)


def antipodal(f: FiberMapClass) -> FiberMapClass:
    """Fibrewise multiplication by -1."""
    return fibrewise_multiply(f, section_class(f.domain, f.codomain, -1))


def homotopic_over_base(f: FiberMapClass, g: FiberMapClass) -> bool:
    _require_same_bundles(f, g)
    return f.q == g.q and f.r == g.r
