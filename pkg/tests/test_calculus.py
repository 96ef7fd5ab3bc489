from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbith import linalg
from orbith.calculus import (
    FormError,
    GenericInvariantForm,
    InvariantTwoForm,
    closedness_system,
    d_omega_form,
    dJ_omega,
    ddJ_omega,
    ddJ_system,
    ddJ_value,
    exterior_derivative_full,
    exterior_derivative_oracle,
    kaehler_form,
    kahler_system,
)
from orbith.chevalley import structure_constants
from orbith.orbit import (
    HermitianStructure,
    InvariantMetric,
    all_orbits,
    canonical_kahler_metric,
    enumerate_complex_structures,
    make_orbit,
)
from orbith.rootsys import build_root_system, neg
from orbith.surd import ComplexSqrt


def random_two_form(orbit, rng):
    h = {}
    for r in orbit.complementary:
        if r in orbit.R.positive_set:
            h[r] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            h[neg(r)] = -h[r]
    return InvariantTwoForm.from_real_coefficients(orbit, h)


def random_metric(J, rng):
    return InvariantMetric.from_pairs({r: Fraction(rng.randint(1, 9), rng.randint(1, 3)) for r in J.roots})


@pytest.mark.parametrize("name, S", [("A2", ()), ("B2", ()), ("G2", ()), ("A3", (1,)), ("B3", (0, 1)), ("A1xA2", ())])
def test_sparse_oracle_equals_literal_sum(name, S):
    R = build_root_system(name)
    orbit = make_orbit(R, S)
    rng = random.Random(name)
    C = structure_constants(R)
    for J in enumerate_complex_structures(orbit):
        H = HermitianStructure(J, random_metric(J, rng))
        omega = kaehler_form(H).as_generic()
        assert exterior_derivative_oracle(omega, C) == exterior_derivative_full(omega, C)
        twisted = dJ_omega(H, C)
        assert exterior_derivative_oracle(twisted, C) == exterior_derivative_full(twisted, C)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "A3", "C3", "A1xA2"]), st.integers(0, 10**6))
def test_d_squared_vanishes_on_full_flags(name, seed):
    # on a full flag the isotropy is the torus, so weight-zero forms are invariant
    orbit = make_orbit(build_root_system(name), ())
    rng = random.Random(seed)
    b = random_two_form(orbit, rng)
    db = exterior_derivative_oracle(b.as_generic())
    assert db.weight_violations() == []
    assert exterior_derivative_oracle(db).is_zero()


def test_d_squared_needs_isotropy_invariance():
    # G2, S = {a2}: a torus-invariant 2-form that is not invariant under the
    # larger isotropy group is not a cochain of the relative complex
    orbit = make_orbit(build_root_system("G2"), {1})
    rng = random.Random(0)
    forms = [random_two_form(orbit, rng) for _ in range(5)]
    assert any(not exterior_derivative_oracle(exterior_derivative_oracle(b.as_generic())).is_zero() for b in forms)


def test_d_squared_fails_with_flipped_constant():
    R = build_root_system("A3")
    C = structure_constants(R).with_flipped_sign((1, 0, 0), (0, 1, 0))
    orbit = make_orbit(R, ())
    rng = random.Random(3)
    assert any(
        not exterior_derivative_oracle(exterior_derivative_oracle(random_two_form(orbit, rng).as_generic(), C), C).is_zero()
        for _ in range(5)
    )


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_forms_are_real(name):
    rng = random.Random(name)
    for orbit in all_orbits(build_root_system(name)):
        for J in enumerate_complex_structures(orbit):
            H = HermitianStructure(J, random_metric(J, rng))
            assert kaehler_form(H).as_generic().is_real()
            assert d_omega_form(H).is_real()
            assert dJ_omega(H).is_real()
            assert ddJ_omega(H).is_real()


def test_a2_full_flag_single_equation():
    R = build_root_system("A2")
    orbit = make_orbit(R, ())
    J = [J for J in enumerate_complex_structures(orbit) if J.sigma == frozenset(R.positives)][0]
    system = ddJ_system(J)
    assert system.unknowns == ((0, 1), (1, 0), (1, 1))
    assert linalg.rank(system.rows) == 1
    for row in system.rows:
        assert row in {(Fraction(-1, 6), Fraction(-1, 6), Fraction(1, 6)), (Fraction(1, 6), Fraction(1, 6), Fraction(-1, 6))}
    assert kahler_system(J).rows == [(-1, -1, 1)]
    g = InvariantMetric.from_pairs({(1, 0): 1, (0, 1): 2, (1, 1): 5})
    assert ddJ_value(HermitianStructure(J, g), (1, 0), (0, 1)) == Fraction(1, 3)


def test_kaehler_form_values():
    orbit = make_orbit(build_root_system("A2"), ())
    J = enumerate_complex_structures(orbit)[0]
    g = canonical_kahler_metric(J)
    w = kaehler_form(HermitianStructure(J, g))
    w.check()
    for a in orbit.complementary:
        assert w(a, neg(a)) == ComplexSqrt(0, -g[a] * J.epsilon[a])
        assert w(a, a) == 0


def test_canonical_kaehler_form_is_closed():
    R = build_root_system("B3")
    for orbit in all_orbits(R):
        keys, rows = closedness_system(orbit)
        for J in enumerate_complex_structures(orbit):
            g = canonical_kahler_metric(J)
            # omega = -i h with h_a = g_a eps_a
            h = [g[u] * J.epsilon[u] for u in keys]
            assert all(sum(c * x for c, x in zip(row, h)) == 0 for row in rows)


def test_degree_limit_and_checks():
    orbit = make_orbit(build_root_system("A2"), ())
    with pytest.raises(FormError):
        exterior_derivative_oracle(GenericInvariantForm(orbit, 4, {}))
    bad = InvariantTwoForm(orbit, {a: ComplexSqrt(1) for a in orbit.complementary})
    with pytest.raises(FormError):
        bad.check()
