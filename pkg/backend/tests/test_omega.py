import pickle

import pytest

from core.bundle import BundleSpace, FiberMapClass, MapPair, identity_class
from core.errors import BundleMismatchError, OmegaInconsistencyError
from core.geometry import minimal_representative_diagram
from core.nielsen import is_loose, nielsen_number
from core.omega import (
    TRIVIAL,
    DoldIndexComponents,
    OmegaClass,
    Summand,
    dold_index_components,
    hurewicz_truncation,
    omega_class,
    omega_group,
    recover_pair_invariants,
    root_invariant,
)
from services.verification import COMBOS, combo_values, grid_pairs


@pytest.mark.parametrize(
    "domain, codomain, rendering",
    [("T", "T", "Z + Z + Z2"), ("K", "K", "Z + Z2 + Z2"), ("K", "T", "0 + Z + Z2"), ("T", "K", "0 + Z2 + Z2")],
)
def test_group_descriptors(domain, codomain, rendering):
    assert str(omega_group(domain, codomain)) == rendering


@pytest.mark.parametrize(
    "spec, components",
    [
        (("K", "K", 3, 1), (3, 1, 0)),
        (("K", "K", 4, 1), (4, 0, 0)),
        (("K", "K", 0, 1), (0, 0, 0)),
        (("T", "T", 2, 3), (2, 3, 1)),
        (("T", "T", 0, 0), (0, 0, 0)),
        (("K", "T", 0, -4), (TRIVIAL, -4, 0)),
        (("T", "K", 0, 0), (TRIVIAL, 1, 1)),
        (("T", "K", 0, 1), (TRIVIAL, 0, 0)),
    ],
)
def test_component_table(make_pair, spec, components):
    assert omega_class(make_pair(*spec)).components == components


def test_root_invariant_of_identity():
    assert root_invariant(identity_class("K")).components == (1, 0, 1)
    assert root_invariant(identity_class("T")).components == (1, 0, 1)


def test_root_invariant_of_torus_map():
    assert str(root_invariant(FiberMapClass("T", "T", 2, 3))) == "(2, 3, 1)"


def test_components_must_lie_in_their_summands():
    group = omega_group("K", "K")
    with pytest.raises(OmegaInconsistencyError):
        OmegaClass(group, 1, 2, 0)
    with pytest.raises(OmegaInconsistencyError):
        OmegaClass(omega_group("T", "K"), 1, 0, 0)


def test_recover_rejects_wrong_third_component():
    with pytest.raises(OmegaInconsistencyError):
        recover_pair_invariants(OmegaClass(omega_group("T", "T"), 2, 3, 0))


def test_table_roundtrip_and_vanishing(grid_bounds):
    qmax, rmax = grid_bounds
    for pair in grid_pairs(qmax, rmax):
        omega = omega_class(pair)
        assert recover_pair_invariants(omega) == pair.invariants
        assert omega.is_zero == is_loose(pair)
        assert omega.c3 == nielsen_number(pair) % 2


def test_second_component_corrections(make_pair):
    for q in range(-6, 7):
        for r in (0, 1):
            assert omega_class(make_pair("K", "K", q, r)).c2 == (r + 1 + q) % 2
    for r in (0, 1):
        assert omega_class(make_pair("T", "K", 0, r)).c2 == (r + 1) % 2


def test_root_invariant_is_injective(grid_bounds):
    qmax, rmax = grid_bounds
    for domain, codomain in COMBOS:
        q_values, r_values = combo_values(domain, codomain, qmax, rmax)
        seen = {}
        truncated = {}
        for q in q_values:
            for r in r_values:
                omega = root_invariant(FiberMapClass(domain, codomain, q, r))
                assert seen.setdefault(omega.components, (q, r)) == (q, r)
                assert truncated.setdefault(hurewicz_truncation(omega), (q, r)) == (q, r)


def test_dold_components_examples():
    assert dold_index_components(identity_class("T")) == DoldIndexComponents(0, 0)
    assert dold_index_components(FiberMapClass("K", "K", 3, 1)) == DoldIndexComponents(-2, 1)
    with pytest.raises(BundleMismatchError):
        dold_index_components(FiberMapClass("T", "K", 0, 0))


@pytest.mark.parametrize("space", [BundleSpace.TORUS, BundleSpace.KLEIN])
def test_dold_coherence(space, grid_bounds):
    qmax, rmax = grid_bounds
    _, r_values = combo_values(space, space, qmax, rmax)
    identity = identity_class(space)
    for q in range(-qmax, qmax + 1):
        for r in r_values:
            f = FiberMapClass(space, space, q, r)
            components = dold_index_components(f)
            assert components.second == nielsen_number(MapPair(identity, f)) % 2
            assert abs(components.first) == abs(1 - q)
            if abs(q) <= 12 and abs(r) <= 12:
                circles = minimal_representative_diagram(MapPair(identity, f)).circles
                assert components.second == len(circles) % 2


def test_summand_membership():
    assert Summand.Z2.contains(1)
    assert not Summand.Z2.contains(2)
    assert not Summand.Z.contains(True)
    assert Summand.ZERO.contains(TRIVIAL)


def test_trivial_component_survives_pickling():
    assert pickle.loads(pickle.dumps(TRIVIAL)) is TRIVIAL
