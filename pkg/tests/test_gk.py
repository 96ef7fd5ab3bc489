from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from orbith import linalg
from orbith.calculus import InvariantTwoForm, kaehler_form
from orbith.chevalley import structure_constants
from orbith.gk import (
    GKInstance,
    check_gk,
    gcan_matrix,
    gk_forms,
    gualtieri_build,
    random_closed_form,
    sample_gk_instances,
    sample_non_kaehler,
    solve_b,
)
from orbith.orbit import HermitianStructure, canonical_kahler_metric, enumerate_complex_structures, make_orbit
from orbith.rootsys import build_root_system


def kaehler_instance(name, S=(), b=None):
    R = build_root_system(name)
    orbit = make_orbit(R, S)
    J = enumerate_complex_structures(orbit)[-1]
    g = canonical_kahler_metric(J)
    if b is None:
        b = InvariantTwoForm.from_real_coefficients(orbit, {a: Fraction(0) for a in orbit.complementary})
    return GKInstance(orbit, J, J, g, b, "test")


def test_zero_b_kaehler_instance():
    inst = kaehler_instance("A2")
    report = check_gk(inst)
    assert report.condition_holds and report.db_zero and report.implication_ok
    assert all(report.gualtieri.values())
    db, djp, djm = gk_forms(inst)
    assert db.is_zero() and djp.is_zero() and djm.is_zero()


def test_b_equal_to_kaehler_form():
    inst = kaehler_instance("B2")
    H = HermitianStructure(inst.J_plus, inst.metric)
    inst.b = kaehler_form(H)
    report = check_gk(inst)
    assert report.condition_holds and report.implication_ok


def test_non_closed_b_breaks_condition():
    inst = kaehler_instance("A2")
    # equal coefficients on a1, a2, a1 + a2 violate additivity, so b is not closed
    h = {r: Fraction(1 if r in inst.orbit.R.positive_set else -1) for r in inst.orbit.complementary}
    inst.b = InvariantTwoForm.from_real_coefficients(inst.orbit, h)
    report = check_gk(inst)
    assert not report.db_zero
    assert not report.condition_holds
    assert report.implication_ok  # vacuous: the condition does not hold


def test_gualtieri_kaehler_embedding():
    inst = kaehler_instance("G2")
    pair = gualtieri_build(inst)
    n = pair.n
    assert n == inst.orbit.dim
    checks = pair.checks()
    assert all(checks.values()), checks
    assert linalg.inertia(gcan_matrix(n)) == (n, n, 0)
    # with b = 0 and J+ = J-, D is the graph of g and J1 preserves m
    assert all(pair.J1[i][j] == 0 for i in range(n, 2 * n) for j in range(n))


def test_solve_b_on_kaehler_pair():
    inst = kaehler_instance("A3", S=(1,))
    b, reason = solve_b(inst.orbit, inst.J_plus, inst.J_minus, inst.metric)
    assert reason == "ok"
    assert b.real_coefficients() == {a: 0 for a in inst.orbit.complementary}


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_non_kaehler_metrics_admit_no_b(name):
    R = build_root_system(name)
    C = structure_constants(R)
    for orbit, Jp, Jm, metric in sample_non_kaehler(R, 10, seed=5):
        b, reason = solve_b(orbit, Jp, Jm, metric, C)
        assert b is None
        assert reason.startswith("dd^{J+}")


def test_random_closed_form_is_closed():
    R = build_root_system("B3")
    orbit = make_orbit(R, (0,))
    b = random_closed_form(orbit, random.Random(2))
    inst = kaehler_instance("B3", S=(0,), b=b)
    assert check_gk(inst, build=False).db_zero


def test_sampler_is_deterministic():
    R = build_root_system("A2")
    first = [json.dumps(i.to_json(), sort_keys=True) for i in sample_gk_instances(R, 20, seed=7)]
    second = [json.dumps(i.to_json(), sort_keys=True) for i in sample_gk_instances(R, 20, seed=7)]
    assert first == second
    assert first != [json.dumps(i.to_json(), sort_keys=True) for i in sample_gk_instances(R, 20, seed=8)]


def test_sampler_mixes_structures():
    R = build_root_system("G2")
    instances = sample_gk_instances(R, 60, seed=3)
    assert any(i.J_plus != i.J_minus for i in instances)
    assert any(any(v != 0 for v in i.b.real_coefficients().values()) for i in instances)


def test_a1_point_orbit_is_skipped():
    R = build_root_system("A1")
    (inst,) = sample_gk_instances(R, 1, seed=0)
    assert check_gk(inst).implication_ok
