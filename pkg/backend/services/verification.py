"""
Cross-validation of the closed forms against orbit enumeration and geometry.

Every grid pair goes through the same battery of checks; a check returns
True, False, or None when it does not apply to the pair. Grid-wide checks
(injectivity of the root invariant, fixed point index components) run once.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from math import gcd
from typing import Callable, Dict, Iterator, List, Optional

from core.bundle import (
    BundleSpace,
    FiberMapClass,
    FibrewiseProduct,
    MapPair,
    antipodal,
    extract_invariants,
    homotopic_over_base,
    identity_class,
    standard_map,
)
from core.errors import FibredError, OracleDisagreementError
from core.geometry import (
    fibre_intersection_count,
    generic_section_angle,
    minimal_representative_diagram,
    root_phase_residue,
    section_intersection_count,
)
from core.nielsen import is_loose, mcc, nielsen_classes, nielsen_number, nielsen_sharp
from core.omega import (
    DoldIndexComponents,
    dold_index_components,
    hurewicz_truncation,
    omega_class,
    recover_pair_invariants,
    root_invariant,
)
from core.reidemeister import (
    involution_fixed_points,
    is_finite,
    orbit_enumerate,
    reidemeister_count,
    reidemeister_equivalent,
)

logger = logging.getLogger(__name__)

NielsenFormula = Callable[[MapPair], int]
CheckResults = Dict[str, Optional[bool]]

# Largest |q| or |r| of either map whose winding numbers are re-extracted by sampling
EXTRACTION_BOUND = 20

COMBOS = [
    (BundleSpace.TORUS, BundleSpace.TORUS),
    (BundleSpace.KLEIN, BundleSpace.KLEIN),
    (BundleSpace.KLEIN, BundleSpace.TORUS),
    (BundleSpace.TORUS, BundleSpace.KLEIN),
]


def combo_values(domain: BundleSpace, codomain: BundleSpace, qmax: int, rmax: int):
    q_values = range(-qmax, qmax + 1) if domain is codomain else range(0, 1)
    r_values = range(0, 2) if codomain.is_klein else range(-rmax, rmax + 1)
    return q_values, r_values


def grid_pairs(qmax: int, rmax: int) -> Iterator[MapPair]:
    for domain, codomain in COMBOS:
        q_values, r_values = combo_values(domain, codomain, qmax, rmax)
        for q in q_values:
            for r in r_values:
                yield MapPair.from_differences(domain, codomain, q, r)


def faulty_nielsen_number(pair: MapPair) -> int:
    """Nielsen formula that forgets the even-q, odd-r case into K. Used to exercise the oracle."""
    if pair.codomain.is_klein and pair.q != 0:
        return abs(pair.q) // 2 + 1
    return nielsen_number(pair)


def _same_cardinality(a, b) -> bool:
    if is_finite(a) != is_finite(b):
        return False
    return not is_finite(a) or a == b


def _shifted(pair: MapPair) -> MapPair:
    """A different pair with the same differences (q, r)."""
    dq = 3 if pair.domain is pair.codomain else 0
    f1 = FiberMapClass(pair.domain, pair.codomain, pair.f1.q + dq, pair.f1.r + 2)
    f2 = FiberMapClass(pair.domain, pair.codomain, pair.f2.q + dq, pair.f2.r + 2)
    return MapPair(f1, f2)


def _reidemeister_classes_agree(pair: MapPair, orbits) -> bool:
    if orbits.is_finite:
        for k in range(orbits.modulus):
            representative = orbits.representatives[orbits.orbit_of(k)]
            if not reidemeister_equivalent(pair, k, representative):
                return False
        reps = orbits.representatives
        return not any(
            reidemeister_equivalent(pair, a, b) for i, a in enumerate(reps) for b in reps[i + 1:]
        )
    return all(
        reidemeister_equivalent(pair, orbit[0], element)
        for orbit in orbits.window_orbits
        for element in orbit
    )


def _extraction_roundtrip(pair: MapPair) -> Optional[bool]:
    classes = (pair.f1, pair.f2)
    if max(max(abs(f.q), abs(f.r)) for f in classes) > EXTRACTION_BOUND:
        return None
    product = FibrewiseProduct(standard_map(pair.f1), standard_map(pair.f2), invert_right=True)
    try:
        return extract_invariants(product, pair.domain, pair.codomain) == pair.invariants
    except FibredError:
        return False


def _intersection_counts(pair: MapPair, minimal) -> Optional[bool]:
    if pair.codomain.is_klein:
        return root_phase_residue(pair) == pair.r if pair.q != 0 else None
    if minimal.degenerate or (pair.q, pair.r) == (0, 0):
        return None
    angle = generic_section_angle(pair)
    return (
        fibre_intersection_count(minimal) == abs(pair.q)
        and section_intersection_count(minimal, angle) == abs(pair.r)
    )


def pair_checks(pair: MapPair, window: int, nielsen: NielsenFormula = nielsen_number) -> CheckResults:
    results: CheckResults = {}

    reidemeister = reidemeister_count(pair)
    orbits = orbit_enumerate(pair, window)
    n = nielsen(pair)
    results["orbit_count"] = _same_cardinality(orbits.cardinality, reidemeister)
    results["reidemeister_classes"] = _reidemeister_classes_agree(pair, orbits)
    results["extract_roundtrip"] = _extraction_roundtrip(pair)

    klein_self = pair.domain.is_klein and pair.codomain.is_klein and pair.q != 0
    if klein_self:
        fixed = involution_fixed_points(pair.q, pair.f1.r, pair.f2.r).fixed_count
        results["involution_identity"] = 2 * reidemeister == abs(pair.q) + fixed
    else:
        results["involution_identity"] = None

    results["nielsen_equalities"] = n == nielsen_sharp(pair) == mcc(pair)
    results["nielsen_is_reidemeister"] = n == reidemeister if is_finite(reidemeister) else None
    results["inequality_chain"] = 0 <= n <= nielsen_sharp(pair) <= mcc(pair) and (
        not is_finite(reidemeister) or mcc(pair) <= reidemeister
    )

    if pair.codomain.is_klein:
        expected_loose = homotopic_over_base(antipodal(pair.f1), pair.f2)
    else:
        expected_loose = homotopic_over_base(pair.f1, pair.f2)
    results["looseness"] = is_loose(pair) == expected_loose == (n == 0)

    minimal = minimal_representative_diagram(pair)
    results["geometric_count"] = len(minimal.circles) == n
    wraps = minimal.wraps
    results["wrap_sum"] = sum(wraps) == abs(pair.q) if pair.q != 0 else None
    if klein_self:
        results["klein_wraps"] = set(wraps) <= {1, 2} and wraps.count(1) == fixed
    else:
        results["klein_wraps"] = None
    if pair.codomain is BundleSpace.TORUS and pair.domain is BundleSpace.TORUS and pair.q != 0:
        step = abs(pair.q) // gcd(abs(pair.q), abs(pair.r))
        results["torus_wraps"] = all(w == step for w in wraps)
    else:
        results["torus_wraps"] = None

    try:
        results["nielsen_classes"] = len(nielsen_classes(pair, window)) == n
    except OracleDisagreementError:
        results["nielsen_classes"] = False

    try:
        results["intersection_counts"] = _intersection_counts(pair, minimal)
    except FibredError:
        results["intersection_counts"] = False

    omega = omega_class(pair)
    try:
        results["omega_roundtrip"] = recover_pair_invariants(omega) == pair.invariants
    except FibredError:
        results["omega_roundtrip"] = False
    results["omega_vanishing"] = omega.is_zero == is_loose(pair)
    results["omega_c3"] = omega.c3 == n % 2

    results["symmetry"] = n == nielsen(pair.swapped())
    shifted = _shifted(pair)
    results["homotopy_invariance"] = (
        _same_cardinality(reidemeister_count(shifted), reidemeister)
        and nielsen(shifted) == n
        and omega_class(shifted) == omega
    )
    return results


@dataclass
class CheckTally:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)

    def record(self, outcome: Optional[bool], subject: str) -> None:
        if outcome is None:
            self.skipped += 1
        elif outcome:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(subject)


@dataclass
class VerificationSummary:
    tallies: Dict[str, CheckTally] = field(default_factory=dict)
    pairs: int = 0

    def record(self, name: str, outcome: Optional[bool], subject: str) -> None:
        self.tallies.setdefault(name, CheckTally(name)).record(outcome, subject)

    @property
    def failed(self) -> int:
        return sum(t.failed for t in self.tallies.values())

    @property
    def ok(self) -> bool:
        return self.failed == 0


def root_invariant_checks(qmax: int, rmax: int) -> CheckResults:
    """The fibred degree and its first two components separate homotopy classes."""
    results: CheckResults = {}
    injective = True
    truncation_injective = True
    for domain, codomain in COMBOS:
        seen = defaultdict(set)
        seen_truncated = defaultdict(set)
        q_values, r_values = combo_values(domain, codomain, qmax, rmax)
        for q in q_values:
            for r in r_values:
                f = FiberMapClass(domain, codomain, q, r)
                omega = root_invariant(f)
                seen[omega.components].add((q, r))
                seen_truncated[hurewicz_truncation(omega)].add((q, r))
        injective &= all(len(classes) == 1 for classes in seen.values())
        truncation_injective &= all(len(classes) == 1 for classes in seen_truncated.values())
    results["root_invariant_injective"] = injective
    results["hurewicz_truncation_injective"] = truncation_injective
    return results


def dold_checks(qmax: int, rmax: int, nielsen: NielsenFormula = nielsen_number) -> CheckResults:
    coherent = True
    for space in (BundleSpace.TORUS, BundleSpace.KLEIN):
        identity = identity_class(space)
        _, r_values = combo_values(space, space, qmax, rmax)
        for q in range(-qmax, qmax + 1):
            for r in r_values:
                f = FiberMapClass(space, space, q, r)
                components = dold_index_components(f)
                pair = MapPair(identity, f)
                geometric_parity = len(minimal_representative_diagram(pair).circles) % 2
                coherent &= (
                    components.second == nielsen(pair) % 2 == geometric_parity
                    and abs(components.first) == abs(1 - q)
                )
    # the identity of T is homotopic over S^1 to a fixed point free rotation
    coherent &= dold_index_components(identity_class(BundleSpace.TORUS)) == DoldIndexComponents(0, 0)
    return {"dold_coherence": coherent}


def run_verification(
    qmax: int,
    rmax: int,
    window: int,
    workers: int = 1,
    nielsen: NielsenFormula = nielsen_number,
) -> VerificationSummary:
    if qmax < 0 or rmax < 0:
        raise ValueError("Grid bounds must be non-negative")
    if window < 1:
        # every grid contains q = 0 pairs, whose Reidemeister sets are scanned in a window
        raise ValueError(f"window must be >= 1 when q = 0 pairs are present, got {window}")

    pairs = list(grid_pairs(qmax, rmax))
    check = partial(pair_checks, window=window, nielsen=nielsen)
    summary = VerificationSummary(pairs=len(pairs))
    logger.info("Verifying %d pairs (|q| <= %d, |r| <= %d, window %d)", len(pairs), qmax, rmax, window)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(check, pairs, chunksize=64))
    else:
        outcomes = [check(pair) for pair in pairs]

    for pair, results in zip(pairs, outcomes):
        for name, outcome in results.items():
            summary.record(name, outcome, str(pair))

    for name, outcome in root_invariant_checks(qmax, rmax).items():
        summary.record(name, outcome, "grid")
    for name, outcome in dold_checks(qmax, rmax, nielsen).items():
        summary.record(name, outcome, "self-maps")

    if not summary.ok:
        logger.error("Verification found %d failing checks", summary.failed)
    return summary
