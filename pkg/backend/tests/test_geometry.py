from fractions import Fraction
from math import gcd

import pytest

from core.errors import NonGenericAngleError
from core.geometry import (
    CoincidenceDiagram,
    HorizontalCircle,
    VerticalFibre,
    coincidence_roots,
    diagram,
    fibre_intersection_count,
    generic_section_angle,
    gluing_permutation,
    minimal_representative_diagram,
    permutation_cycles,
    root_phase_residue,
    section_intersection_count,
)
from core.nielsen import nielsen_number
from core.reidemeister import involution_fixed_points
from services.verification import grid_pairs


def test_klein_roots(make_pair):
    assert coincidence_roots(make_pair("K", "K", 2, 1), 0) == [Fraction(1, 4), Fraction(3, 4)]


def test_torus_roots_follow_the_base(make_pair):
    assert coincidence_roots(make_pair("T", "T", 2, 1), Fraction(1, 2)) == [Fraction(3, 4), Fraction(1, 4)]


def test_roots_need_nonzero_q(make_pair):
    with pytest.raises(ValueError):
        coincidence_roots(make_pair("T", "T", 0, 3), 0)


@pytest.mark.parametrize(
    "spec, permutation",
    [
        (("T", "T", 4, 1), (3, 0, 1, 2)),
        (("T", "T", 4, 0), (0, 1, 2, 3)),
        (("K", "K", 4, 1), (3, 2, 1, 0)),
        (("K", "K", 4, 0), (0, 3, 2, 1)),
        (("K", "K", 3, 1), (2, 1, 0)),
    ],
)
def test_gluing_permutation(make_pair, spec, permutation):
    assert gluing_permutation(make_pair(*spec)) == permutation


def test_permutation_cycles_start_at_least_element():
    assert permutation_cycles((2, 0, 1, 4, 3, 5)) == [(0, 2, 1), (3, 4), (5,)]


@pytest.mark.parametrize(
    "spec, wraps",
    [
        (("K", "K", 4, 1), [2, 2]),
        (("K", "K", 4, 0), [1, 1, 2]),
        (("K", "K", -5, 1), [1, 2, 2]),
        (("T", "T", 6, 4), [3, 3]),
        (("T", "T", -3, 0), [1, 1, 1]),
    ],
)
def test_wraps(make_pair, spec, wraps):
    assert diagram(make_pair(*spec)).wraps == wraps


def test_vertical_fibres_for_torus_target(make_pair):
    d = diagram(make_pair("K", "T", 0, 3))
    assert [fibre.base_coordinate for fibre in d.vertical_fibres] == [0, Fraction(1, 3), Fraction(2, 3)]
    assert d.wraps == []


def test_degenerate_and_minimal_diagrams(make_pair):
    torus = make_pair("T", "T", 0, 0)
    klein = make_pair("K", "K", 0, 0)
    assert diagram(torus).degenerate and diagram(klein).degenerate
    assert minimal_representative_diagram(torus).circles == ()
    assert minimal_representative_diagram(klein).circles == (VerticalFibre(Fraction(0)),)
    assert diagram(make_pair("T", "K", 0, 1)).circles == ()
    assert not diagram(make_pair("T", "K", 0, 1)).degenerate


def test_diagram_validation(make_pair):
    with pytest.raises(ValueError):
        HorizontalCircle(base_wrap=2, root_cycle=(0,))
    with pytest.raises(ValueError):
        CoincidenceDiagram(make_pair("T", "T", 0, 2), (HorizontalCircle(1, (0,)),))
    with pytest.raises(ValueError):
        CoincidenceDiagram(make_pair("T", "T", 2, 0), (HorizontalCircle(1, (0,)),))


def test_geometric_oracle_over_grid(geometry_bounds):
    qmax, rmax = geometry_bounds
    for pair in grid_pairs(qmax, rmax):
        minimal = minimal_representative_diagram(pair)
        assert len(minimal.circles) == nielsen_number(pair)
        if pair.q == 0:
            continue
        assert sum(minimal.wraps) == abs(pair.q)
        if pair.codomain.is_klein:
            fixed = involution_fixed_points(pair.q, pair.f1.r, pair.f2.r).fixed_count
            assert set(minimal.wraps) <= {1, 2}
            assert minimal.wraps.count(1) == fixed
        else:
            step = abs(pair.q) // gcd(abs(pair.q), abs(pair.r))
            assert set(minimal.wraps) == {step}


def test_intersection_counts(make_pair):
    pair = make_pair("T", "T", 2, 3)
    d = diagram(pair)
    angle = generic_section_angle(pair)
    assert angle == Fraction(5, 8)
    assert fibre_intersection_count(d) == 2
    assert section_intersection_count(d, angle) == 3


def test_seam_root_angle_is_rejected(make_pair):
    pair = make_pair("T", "T", 2, 3)
    with pytest.raises(NonGenericAngleError):
        section_intersection_count(diagram(pair), Fraction(1, 2))


def test_section_count_needs_torus_target(make_pair):
    with pytest.raises(ValueError):
        section_intersection_count(diagram(make_pair("K", "K", 3, 1)), Fraction(5, 8))


def test_degenerate_diagram_has_no_counts(make_pair):
    with pytest.raises(ValueError):
        fibre_intersection_count(diagram(make_pair("T", "T", 0, 0)))


def test_geometric_omega_components(geometry_bounds):
    qmax, rmax = geometry_bounds
    for pair in grid_pairs(qmax, rmax):
        if pair.codomain.is_klein:
            if pair.q != 0:
                assert root_phase_residue(pair) == pair.r
            continue
        d = minimal_representative_diagram(pair)
        if (pair.q, pair.r) == (0, 0):
            continue
        assert fibre_intersection_count(d) == abs(pair.q)
        assert section_intersection_count(d, generic_section_angle(pair)) == abs(pair.r)


def test_root_phase_needs_klein_target(make_pair):
    with pytest.raises(ValueError):
        root_phase_residue(make_pair("T", "T", 3, 1))


def test_vertical_fibres_count_once_each(make_pair):
    pair = make_pair("K", "T", 0, 3)
    d = diagram(pair)
    assert fibre_intersection_count(d) == 0
    assert section_intersection_count(d, generic_section_angle(pair)) == 3


def test_torus_section_count_example(make_pair):
    pair = make_pair("T", "T", 6, 4)
    d = diagram(pair)
    assert fibre_intersection_count(d) == 6
    assert section_intersection_count(d, generic_section_angle(pair)) == 4


def test_klein_roots_are_independent_of_the_base(make_pair):
    pair = make_pair("K", "K", 5, 0)
    expected = [Fraction(k, 5) for k in range(5)]
    assert coincidence_roots(pair, 0) == coincidence_roots(pair, Fraction(2, 3)) == expected
