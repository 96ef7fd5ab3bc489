from __future__ import annotations


import pytest

from orbith.orbit import (
    ComplexStructure,
    HermitianStructure,
    InvariantMetric,
    all_orbits,
    brute_force_complex_structures,
    canonical_kahler_metric,
    count_positive_systems_containing,
    enumerate_complex_structures,
    is_kaehler,
    kahler_pairs,
    make_orbit,
    validate_complex_structure,
    validate_hermitian,
    validate_metric,
    weyl_subgroup_order,
)
from orbith.rootsys import build_root_system, is_closed


def test_a2_orbits():
    R = build_root_system("A2")
    orbits = all_orbits(R)
    assert [o.label for o in orbits] == [[], [1], [2], [1, 2]]
    assert [o.dim for o in orbits] == [6, 4, 4, 0]
    assert enumerate_complex_structures(orbits[-1]) == []


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A1xA1", "A3"])
def test_enumeration_matches_brute_force(name):
    R = build_root_system(name)
    for orbit in all_orbits(R):
        found = enumerate_complex_structures(orbit)
        assert found == brute_force_complex_structures(orbit)
        for J in found:
            assert validate_complex_structure(J)
            assert J.opposite() in found


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "C3", "G2"])
def test_positive_system_count_is_weyl_quotient(name):
    R = build_root_system(name)
    W = len(R.weyl_group())
    for orbit in all_orbits(R):
        n = count_positive_systems_containing(orbit)
        assert n * weyl_subgroup_order(orbit) == W
        assert len(enumerate_complex_structures(orbit)) <= n


def test_cp2_has_two_structures():
    # S = {a1} in A2 is CP^2: only J and -J
    orbit = make_orbit(build_root_system("A2"), {0})
    assert count_positive_systems_containing(orbit) == 3
    assert [sorted(J.sigma) for J in enumerate_complex_structures(orbit)] == [
        [(-1, -1), (0, -1)],
        [(0, 1), (1, 1)],
    ]


def test_validation_rejects():
    R = build_root_system("A2")
    orbit = make_orbit(R, ())
    assert validate_complex_structure(ComplexStructure(orbit, frozenset({(1, 0), (0, 1)}))).message.startswith("sigma union")
    bad = ComplexStructure(orbit, frozenset({(1, 0), (0, 1), (-1, -1)}))
    assert validate_complex_structure(bad).message == "sigma is not closed"
    assert not is_closed(R, bad.sigma)
    J = enumerate_complex_structures(orbit)[0]
    assert not validate_metric(orbit, InvariantMetric.constant(orbit, 0))
    m = InvariantMetric.constant(orbit, 1).replace((1, 0), 2)
    assert validate_metric(orbit, m).message == "g_a != g_-a"
    assert validate_hermitian(HermitianStructure(J, InvariantMetric.constant(orbit)))


def test_kaehler_a2():
    orbit = make_orbit(build_root_system("A2"), ())
    J = [J for J in enumerate_complex_structures(orbit) if (1, 0) in J.sigma and (0, 1) in J.sigma][0]
    assert kahler_pairs(J) == [((0, 1), (1, 0))]
    g = InvariantMetric.from_pairs({(1, 0): 1, (0, 1): 2, (1, 1): 3})
    assert is_kaehler(HermitianStructure(J, g))
    assert not is_kaehler(HermitianStructure(J, g.replace((1, 1), 4).replace((-1, -1), 4)))
    assert canonical_kahler_metric(J)[(1, 1)] == 2


@pytest.mark.parametrize("name", ["B3", "G2", "D4"])
def test_canonical_metric_is_kaehler(name):
    for orbit in all_orbits(build_root_system(name)):
        for J in enumerate_complex_structures(orbit):
            g = canonical_kahler_metric(J)
            assert validate_metric(orbit, g)
            assert is_kaehler(HermitianStructure(J, g))


def test_make_orbit_rejects_bad_indices():
    with pytest.raises(ValueError):
        make_orbit(build_root_system("A2"), {5})
