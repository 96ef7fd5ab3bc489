from __future__ import annotations

from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from orbith.rootsys import (
    OPPOSITE,
    RootSystemError,
    brute_force_positive_systems,
    build_root_system,
    heights,
    is_closed,
    is_positive_system,
    neg,
    parse_type,
    positive_systems,
    simple_roots_of,
    sum_root,
)

# |W| from the classical order formulas, independent of the group enumeration
WEYL_ORDER = {
    "A1": 2,
    "A2": factorial(3),
    "A3": factorial(4),
    "B2": 2**2 * factorial(2),
    "B3": 2**3 * factorial(3),
    "C3": 2**3 * factorial(3),
    "D4": 2**3 * factorial(4),
    "G2": 12,
    "F4": 1152,
    "A1xA1": 4,
    "A1xG2": 24,
}
NUM_ROOTS = {"A1": 2, "A2": 6, "A3": 12, "B2": 8, "B3": 18, "C3": 18, "D4": 24, "G2": 12, "F4": 48, "A1xA1": 4, "A1xG2": 14}
HIGHEST = {"A2": (1, 1), "B2": (1, 2), "C3": (2, 2, 1), "G2": (3, 2), "D4": (1, 2, 1, 1), "F4": (2, 3, 4, 2)}


@pytest.mark.parametrize("name", sorted(NUM_ROOTS))
def test_root_counts(name):
    R = build_root_system(name)
    assert len(R.roots) == NUM_ROOTS[name]
    assert len(R.positives) * 2 == len(R.roots)
    assert set(R.roots) == {neg(r) for r in R.roots}


@pytest.mark.parametrize("name", sorted(WEYL_ORDER))
def test_weyl_order(name):
    assert len(build_root_system(name).weyl_group()) == WEYL_ORDER[name]


@pytest.mark.parametrize("name", sorted(HIGHEST))
def test_highest_root(name):
    assert build_root_system(name).highest_root() == HIGHEST[name]


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "A1xA1"])
def test_positive_systems_match_brute_force(name):
    R = build_root_system(name)
    weyl = positive_systems(R)
    assert len(weyl) == WEYL_ORDER[name]
    assert set(weyl) == set(brute_force_positive_systems(R))


def test_parse_type():
    assert [str(t) for t in parse_type("a1xA1xg2")] == ["A1", "A1", "G2"]
    for bad in ["Z9", "", "A0", "B1", "D3", "G3", "E5", "A1x"]:
        with pytest.raises(RootSystemError):
            parse_type(bad)


def test_g2_lengths_and_strings():
    R = build_root_system("G2")
    a1, a2 = R.base
    assert R.norm2(a1) * 3 == R.norm2(a2) == 2
    assert R.string_below(a1, (3, 1)) == 3
    assert R.cartan == ((2, -1), (-3, 2))


def test_sum_root():
    R = build_root_system("A2")
    assert sum_root(R, (1, 0), (0, 1)) == (1, 1)
    assert sum_root(R, (1, 0), (-1, 0)) is OPPOSITE
    assert sum_root(R, (1, 0), (1, 1)) is None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "A3", "C3"]), st.data())
def test_weyl_image_of_positives_is_positive_system(name, data):
    R = build_root_system(name)
    w = data.draw(st.sampled_from(R.weyl_group()))
    P = R.act(w, R.positives)
    assert is_positive_system(R, P)
    base = simple_roots_of(R, P)
    h = heights(R, P)
    assert all(h[b] == 1 for b in base)
    assert all((h[r] > 0) == (r in P) for r in R.roots)


def test_closedness():
    R = build_root_system("B2")
    assert is_closed(R, R.positives)
    assert not is_closed(R, [(0, -1), (1, 1)])
