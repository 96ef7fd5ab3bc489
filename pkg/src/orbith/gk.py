"""Invariant generalized Kahler data on an orbit and its pointwise linear algebra.

An instance is ``(g, J+, J-, b)``. :func:`check_gk` evaluates the condition
``db = -d^{J+} omega+ = d^{J-} omega-`` on every basis triple and, when it
holds, checks that both pairs are Kahler and ``b`` is closed.
:func:`gualtieri_build` assembles the commuting pair of generalized complex
structures on ``m + m*`` whose ``D = -J1 J2`` has eigenbundles
``graph(b + g)`` and ``graph(b - g)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .calculus import (
    InvariantTwoForm,
    closedness_system,
    ddJ_omega,
    dJ_omega,
    exterior_derivative_oracle,
    kahler_system,
)
from .chevalley import StructureConstants, structure_constants
from .orbit import (
    ComplexStructure,
    HermitianStructure,
    InvariantMetric,
    OrbitSpec,
    all_orbits,
    canonical_kahler_metric,
    enumerate_complex_structures,
    is_kaehler,
)
from .rootsys import Root, RootSystem, neg
from .surd import ComplexSqrt, SignSqrt


@dataclass
class GKInstance:
    orbit: OrbitSpec
    J_plus: ComplexStructure
    J_minus: ComplexStructure
    metric: InvariantMetric
    b: InvariantTwoForm
    provenance: str = ""

    def check(self) -> None:
        if not (self.J_plus.orbit == self.orbit == self.J_minus.orbit == self.b.orbit):
            raise ValueError("all components must share one orbit")
        self.b.check()

    def to_json(self) -> dict:
        pairs = _pair_keys(self.orbit)
        return {
            "type": self.orbit.R.name,
            "orbit": {"S": self.orbit.label},
            "sigmaPlus": [list(r) for r in self.J_plus.roots],
            "sigmaMinus": [list(r) for r in self.J_minus.roots],
            "metric": [[list(p), str(self.metric[p])] for p in pairs],
            "b": [[list(p), str(self.b.real_coefficients()[p])] for p in pairs],
            "provenance": self.provenance,
        }


def _pair_keys(orbit: OrbitSpec) -> tuple[Root, ...]:
    """One key per complementary pair: the member positive in ``R``."""
    return tuple(r for r in orbit.complementary if r in orbit.R.positive_set)


@dataclass
class GKReport:
    instance: GKInstance
    condition_holds: bool
    db_zero: bool
    kaehler_plus: bool
    kaehler_minus: bool
    ddJ_plus_zero: bool
    implication_ok: bool
    gualtieri: dict | None = None

    def to_json(self) -> dict:
        return {
            "instance": self.instance.to_json(),
            "conditionHolds": self.condition_holds,
            "dbZero": self.db_zero,
            "kaehlerPlus": self.kaehler_plus,
            "kaehlerMinus": self.kaehler_minus,
            "ddJPlusZero": self.ddJ_plus_zero,
            "implicationOk": self.implication_ok,
            "gualtieri": self.gualtieri,
        }


def gk_forms(I: GKInstance, C: StructureConstants | None = None):
    """``(db, d^{J+} omega+, d^{J-} omega-)`` through the exterior-derivative oracle."""
    C = C if C is not None else structure_constants(I.orbit.R)
    db = exterior_derivative_oracle(I.b.as_generic(), C)
    dj_plus = dJ_omega(HermitianStructure(I.J_plus, I.metric), C)
    dj_minus = dJ_omega(HermitianStructure(I.J_minus, I.metric), C)
    return db, dj_plus, dj_minus


def check_gk(I: GKInstance, C: StructureConstants | None = None, build: bool = True) -> GKReport:
    I.check()
    C = C if C is not None else structure_constants(I.orbit.R)
    db, dj_plus, dj_minus = gk_forms(I, C)
    holds = db == -dj_plus and -dj_plus == dj_minus
    kp = is_kaehler(HermitianStructure(I.J_plus, I.metric))
    km = is_kaehler(HermitianStructure(I.J_minus, I.metric))
    ddj_zero = ddJ_omega(HermitianStructure(I.J_plus, I.metric), C).is_zero()
    ok = (not holds) or (kp and km and db.is_zero())
    report = GKReport(I, holds, db.is_zero(), kp, km, ddj_zero, ok)
    if holds and build:
        report.gualtieri = gualtieri_build(I).checks()
        report.implication_ok = ok and all(report.gualtieri.values())
    return report


def solve_b(
    orbit: OrbitSpec,
    J_plus: ComplexStructure,
    J_minus: ComplexStructure,
    metric: InvariantMetric,
    C: StructureConstants | None = None,
) -> tuple[InvariantTwoForm | None, str]:
    """Look for an invariant real 2-form ``b`` making the condition hold.

    Returns ``(b, "ok")`` or ``(None, reason)``.
    """
    C = C if C is not None else structure_constants(orbit.R)
    Hp = HermitianStructure(J_plus, metric)
    Hm = HermitianStructure(J_minus, metric)
    if not ddJ_omega(Hp, C).is_zero():
        return None, "dd^{J+} omega+ != 0 but d(db) = 0"
    dj_plus = dJ_omega(Hp, C)
    if -dj_plus != dJ_omega(Hm, C):
        return None, "-d^{J+} omega+ != d^{J-} omega-"
    target = -dj_plus
    keys = _pair_keys(orbit)
    columns = []
    for u in keys:
        h = {a: Fraction(0) for a in orbit.complementary}
        h[u], h[neg(u)] = Fraction(1), Fraction(-1)
        columns.append(exterior_derivative_oracle(InvariantTwoForm.from_real_coefficients(orbit, h).as_generic(), C))
    rows, rhs = [], []
    for k in sorted({k for col in columns for k in col.values} | set(target.values)):
        vals = [col.values.get(k, ComplexSqrt()) for col in columns] + [target.values.get(k, ComplexSqrt())]
        for part in ("re", "im"):
            parts = [getattr(v, part) for v in vals]
            ref = next((p for p in parts if p), None)
            if ref is None:
                continue
            # one key shares a radicand across columns; divide it out
            radical = SignSqrt(1, ref.r)
            row = [(p / radical).to_fraction() for p in parts]
            rows.append(row[:-1])
            rhs.append(row[-1])
    if rows:
        aug = [r + [c] for r, c in zip(rows, rhs)]
        if linalg.rank(aug) != linalg.rank(rows):
            return None, "-d^{J+} omega+ is not d of an invariant 2-form"
        reduced, pivots = linalg.rref(aug, len(keys))
        sol = [Fraction(0)] * len(keys)
        for row, p in zip(reduced, pivots):
            sol[p] = row[-1]
    else:
        sol = [Fraction(0)] * len(keys)
    h = {}
    for u, x in zip(keys, sol):
        h[u], h[neg(u)] = x, -x
    return InvariantTwoForm.from_real_coefficients(orbit, h), "ok"


# --- pointwise generalized pair --------------------------------------------


@dataclass
class PointwiseGeneralizedPair:
    """``J1, J2`` on ``m + m*`` in the basis ``(A_p, B_p)`` and its dual."""

    J1: linalg.Matrix
    J2: linalg.Matrix
    D: linalg.Matrix
    gcan: linalg.Matrix
    n: int

    def checks(self) -> dict[str, bool]:
        N = 2 * self.n
        Id = linalg.identity(N)
        minus = linalg.scale(Id, -1)
        J1, J2, D, G = self.J1, self.J2, self.D, self.gcan

        def skew(J):
            lhs = linalg.add(linalg.matmul(linalg.transpose(J), G), linalg.matmul(G, J))
            return all(x == 0 for row in lhs for x in row)

        gD = linalg.matmul(linalg.transpose(D), G)
        return {
            "J1Squared": linalg.matmul(J1, J1) == minus,
            "J2Squared": linalg.matmul(J2, J2) == minus,
            "commute": linalg.matmul(J1, J2) == linalg.matmul(J2, J1),
            "J1Skew": skew(J1),
            "J2Skew": skew(J2),
            "DSquared": linalg.matmul(D, D) == Id,
            "positive": linalg.is_positive_definite(gD),
            "eigenDims": linalg.rank(linalg.add(D, minus)) == self.n
            and linalg.rank(linalg.add(D, Id)) == self.n,
            "gcanSignature": linalg.inertia(G) == (self.n, self.n, 0),
        }


def gcan_matrix(n: int) -> linalg.Matrix:
    """``gcan(X + xi, Y + eta) = (xi(Y) + eta(X)) / 2`` on ``R^n + (R^n)*``."""
    half = Fraction(1, 2)
    G = linalg.zeros(2 * n)
    for i in range(n):
        G[i][n + i] = half
        G[n + i][i] = half
    return G


def real_matrices(orbit: OrbitSpec, J: ComplexStructure, metric: InvariantMetric, b: InvariantTwoForm):
    """Matrices of ``J``, ``g`` and ``b`` on m in the basis ``A_p, B_p`` over pair keys."""
    keys = _pair_keys(orbit)
    n = 2 * len(keys)
    Jm, G, B = linalg.zeros(n), linalg.zeros(n), linalg.zeros(n)
    eps = J.epsilon
    beta = b.coeff
    for k, p in enumerate(keys):
        a, bb = 2 * k, 2 * k + 1
        e = eps[p]
        # J A = e B, J B = -e A (columns are images)
        Jm[bb][a] = Fraction(e)
        Jm[a][bb] = Fraction(-e)
        G[a][a] = G[bb][bb] = 2 * metric[p]
        # c_p = i * beta_p gives b(A, B) = -2 beta_p
        bp = beta[p].im.to_fraction()
        B[a][bb] = -2 * bp
        B[bb][a] = 2 * bp
    return Jm, G, B


def gualtieri_build(I: GKInstance) -> PointwiseGeneralizedPair:
    orbit = I.orbit
    Jp, G, B = real_matrices(orbit, I.J_plus, I.metric, I.b)
    Jm, _, _ = real_matrices(orbit, I.J_minus, I.metric, I.b)
    n = len(G)
    Bt = linalg.transpose(B)
    top = [list(r1) + list(r2) for r1, r2 in zip(linalg.identity(n), linalg.identity(n))]
    bottom = [list(r1) + list(r2) for r1, r2 in zip(linalg.add(Bt, G), linalg.add(Bt, linalg.scale(G, -1)))]
    P = top + bottom
    try:
        Pinv = linalg.inverse(P)
    except ZeroDivisionError as exc:
        raise ValueError("projection from C+/- to m is singular") from exc

    def block_diag(X, Y):
        Z = linalg.zeros(n)
        return [list(r) + list(z) for r, z in zip(X, Z)] + [list(z) + list(r) for z, r in zip(Z, Y)]

    J1 = linalg.matmul(linalg.matmul(P, block_diag(Jp, Jm)), Pinv)
    D = linalg.matmul(linalg.matmul(P, block_diag(linalg.identity(n), linalg.scale(linalg.identity(n), -1))), Pinv)
    J2 = linalg.matmul(J1, D)
    return PointwiseGeneralizedPair(J1, J2, D, gcan_matrix(n), n)


# --- sampling ------------------------------------------------------------------


def _to_pair_row(J: ComplexStructure, row, keys_index) -> list[Fraction]:
    out = [Fraction(0)] * len(keys_index)
    for u, c in zip(J.roots, row):
        if c:
            key = u if u in J.orbit.R.positive_set else neg(u)
            out[keys_index[key]] += c
    return out


def joint_kahler_null_basis(J_plus: ComplexStructure, J_minus: ComplexStructure) -> list[list[Fraction]]:
    orbit = J_plus.orbit
    keys = _pair_keys(orbit)
    idx = {k: i for i, k in enumerate(keys)}
    rows = [_to_pair_row(J_plus, r, idx) for r in kahler_system(J_plus).rows]
    rows += [_to_pair_row(J_minus, r, idx) for r in kahler_system(J_minus).rows]
    return linalg.nullspace(rows, len(keys))


def positive_point(basis: list[list[Fraction]]) -> list[Fraction] | None:
    """An exact strictly positive vector in the span of ``basis``, if one exists.

    The linear program ``max t : basis^T y >= t, |y| <= 1`` is solved in
    floating point; its solution is rounded to rationals and re-checked exactly.
    """
    if not basis:
        return None
    import numpy as np
    from scipy.optimize import linprog

    k = len(basis)
    n = len(basis[0])
    M = np.array([[float(basis[j][i]) for j in range(k)] for i in range(n)])
    # variables (y_1..y_k, t); minimize -t subject to t - M y <= 0
    c = np.zeros(k + 1)
    c[-1] = -1.0
    A = np.hstack([-M, np.ones((n, 1))])
    res = linprog(c, A_ub=A, b_ub=np.zeros(n), bounds=[(-1, 1)] * k + [(None, 1)], method="highs")
    if not res.success or res.x[-1] <= 1e-9:
        return None
    for denom in (12, 60, 720, 10**6):
        y = [Fraction(float(v)).limit_denominator(denom) for v in res.x[:k]]
        v = [sum((basis[j][i] * y[j] for j in range(k)), Fraction(0)) for i in range(n)]
        if all(x > 0 for x in v):
            return v
    return None


@lru_cache(maxsize=None)
def _compatible_pairs(type_name: str, S: frozenset) -> tuple:
    from .rootsys import build_root_system
    from .orbit import make_orbit

    orbit = make_orbit(build_root_system(type_name), S)
    Js = enumerate_complex_structures(orbit)
    out = []
    for i, Jp in enumerate(Js):
        for j, Jm in enumerate(Js):
            basis = joint_kahler_null_basis(Jp, Jm)
            point = positive_point(basis)
            if point is not None:
                out.append((i, j, tuple(tuple(v) for v in basis), tuple(point)))
    return tuple(out)


def random_closed_form(orbit: OrbitSpec, rng: random.Random, C: StructureConstants | None = None) -> InvariantTwoForm:
    keys, rows = closedness_system(orbit, C)
    basis = linalg.nullspace(rows, len(keys)) if keys else []
    h = {a: Fraction(0) for a in orbit.complementary}
    for v in basis:
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        for u, x in zip(keys, v):
            h[u] += c * x
            h[neg(u)] -= c * x
    return InvariantTwoForm.from_real_coefficients(orbit, h)


def sample_gk_instances(R: RootSystem, count: int, seed: int) -> list[GKInstance]:
    """Seeded instances built to satisfy the generalized Kahler condition.

    Sigma+/- are drawn from the orbit's enumeration among pairs whose joint
    Kahler cone is nonempty, the metric is a random positive point of that
    cone and ``b`` a random closed invariant form. Degenerate point orbits
    give empty instances.
    """
    rng = random.Random(seed)
    orbits = [o for o in all_orbits(R) if o.complementary] or all_orbits(R)
    C = structure_constants(R)
    out = []
    for n in range(count):
        orbit = orbits[rng.randrange(len(orbits))]
        if not orbit.complementary:
            empty = ComplexStructure(orbit, frozenset())
            out.append(GKInstance(orbit, empty, empty, InvariantMetric({}), InvariantTwoForm(orbit, {}), "point orbit"))
            continue
        Js = enumerate_complex_structures(orbit)
        pairs = _compatible_pairs(R.name, orbit.S)
        i, j, basis, point = pairs[rng.randrange(len(pairs))]
        keys = _pair_keys(orbit)
        while True:
            coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in basis]
            scale = Fraction(rng.randint(1, 5))
            vec = [scale * p + sum((c * v[t] for c, v in zip(coeffs, basis)), Fraction(0)) for t, p in enumerate(point)]
            if all(x > 0 for x in vec):
                break
        metric = InvariantMetric.from_pairs(dict(zip(keys, vec)))
        b = random_closed_form(orbit, rng, C)
        out.append(GKInstance(orbit, Js[i], Js[j], metric, b, f"seed={seed} sample={n} cone-pair=({i},{j})"))
    return out


def sample_non_kaehler(R: RootSystem, count: int, seed: int) -> list[tuple[OrbitSpec, ComplexStructure, ComplexStructure, InvariantMetric]]:
    """Random positive metrics perturbed off the Kahler cone of ``J+``."""
    rng = random.Random(seed)
    orbits = [o for o in all_orbits(R) if o.complementary]
    out = []
    while len(out) < count and orbits:
        orbit = orbits[rng.randrange(len(orbits))]
        Js = enumerate_complex_structures(orbit)
        Jp, Jm = Js[rng.randrange(len(Js))], Js[rng.randrange(len(Js))]
        base = canonical_kahler_metric(Jp)
        keys = _pair_keys(orbit)
        metric = InvariantMetric.from_pairs(
            {k: base[k] + Fraction(rng.randint(0, 6), rng.randint(1, 5)) for k in keys}
        )
        if is_kaehler(HermitianStructure(Jp, metric)):
            continue
        out.append((orbit, Jp, Jm, metric))
    return out
