"""Rank-based verification that ``dd^J omega = 0`` forces the Kahler condition.

For a fixed sigma both conditions are homogeneous linear systems in the
metric coefficients. The canonical Kahler metric is a strictly positive
common solution, so the positive part of ``Null(ddJ)`` is a nonempty open
subset of that null space; the implication "positive solution of ddJ =>
Kahler" therefore holds iff ``Null(ddJ)`` is contained in ``Null(Kahler)``,
i.e. iff stacking the Kahler rows does not raise the rank.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .calculus import (
    LinearSystemQ,
    d_omega,
    d_omega_form,
    ddJ_omega,
    ddJ_system,
    ddJ_value,
    kahler_system,
)
from .chevalley import StructureConstants
from .orbit import (
    ComplexStructure,
    HermitianStructure,
    InvariantMetric,
    canonical_kahler_metric,
    kahler_pairs,
)
from .rootsys import Root, add, neg, sub

CONFIRMED = "confirmed"
REFUTED = "refuted"
TRIVIAL = "trivial"


class VerificationError(RuntimeError):
    """Internal inconsistency, e.g. the witness metric failing a system."""


def rank(system: "LinearSystemQ | Sequence[Sequence]") -> int:
    rows = system.rows if isinstance(system, LinearSystemQ) else system
    return linalg.rank(rows)


@dataclass
class SystemComparison:
    rank_ddj: int
    rank_joint: int
    witness_ok: bool
    verdict: str
    separating: list[Fraction] | None = None
    refuting_metric: list[Fraction] | None = None


def compare_systems(
    ddj_rows: Sequence[Sequence],
    kahler_rows: Sequence[Sequence],
    witness: Sequence[Fraction],
    num_vars: int,
) -> SystemComparison:
    """Decide whether every positive solution of ``ddj_rows`` solves ``kahler_rows``.

    ``witness`` must be strictly positive and solve both systems.
    """
    witness = [Fraction(x) for x in witness]
    witness_ok = (
        all(x > 0 for x in witness)
        and all(sum(c * x for c, x in zip(row, witness)) == 0 for row in ddj_rows)
        and all(sum(c * x for c, x in zip(row, witness)) == 0 for row in kahler_rows)
    )
    r_ddj = linalg.rank(ddj_rows)
    r_joint = linalg.rank(list(ddj_rows) + list(kahler_rows))
    if not witness_ok:
        raise VerificationError("witness metric does not solve both systems")
    if r_joint == 0:
        return SystemComparison(r_ddj, r_joint, witness_ok, TRIVIAL)
    if r_ddj == r_joint:
        return SystemComparison(r_ddj, r_joint, witness_ok, CONFIRMED)
    # find a null vector of ddJ violating some Kahler row
    sep = None
    for v in linalg.nullspace(ddj_rows, num_vars):
        if any(sum(c * x for c, x in zip(row, v)) != 0 for row in kahler_rows):
            sep = v
            break
    assert sep is not None
    bound = max(abs(x) for x in sep)
    t = min(witness) / (2 * bound)
    refuting = [w + t * x for w, x in zip(witness, sep)]
    return SystemComparison(r_ddj, r_joint, witness_ok, REFUTED, sep, refuting)


@dataclass
class RankReport:
    type: str
    orbit: list[int]
    sigma: list[Root]
    dim: int
    num_vars: int
    rank_ddj: int
    rank_joint: int
    witness_ok: bool
    verdict: str
    witness: dict[Root, Fraction]
    ddj: LinearSystemQ
    kahler: LinearSystemQ
    separating: list[Fraction] | None = None
    refuting_metric: list[Fraction] | None = None
    timing_ms: float | None = None
    replay: "ReplayLog | None" = None

    def to_json(self, include_systems: bool = False) -> dict:
        out = {
            "type": self.type,
            "orbit": {"S": self.orbit},
            "sigma": [list(r) for r in self.sigma],
            "dim": self.dim,
            "numVars": self.num_vars,
            "rankDdj": self.rank_ddj,
            "rankJoint": self.rank_joint,
            "verdict": self.verdict,
            "witness": {
                "ok": self.witness_ok,
                "metric": [[list(r), str(v)] for r, v in sorted(self.witness.items())],
            },
            "timingMs": self.timing_ms,
        }
        if self.verdict == REFUTED:
            out["counterexample"] = {
                "separating": [str(x) for x in self.separating],
                "metric": [str(x) for x in self.refuting_metric],
                "ddjSystem": self.ddj.to_json(),
                "kahlerSystem": self.kahler.to_json(),
            }
        elif include_systems:
            out["ddjSystem"] = self.ddj.to_json()
            out["kahlerSystem"] = self.kahler.to_json()
        if self.replay is not None:
            out["replay"] = self.replay.to_json()
        return out


def verify_theorem(
    J: ComplexStructure, C: StructureConstants | None = None, timing: bool = False
) -> RankReport:
    start = time.perf_counter()
    ddj = ddJ_system(J, C)
    kah = kahler_system(J)
    witness = canonical_kahler_metric(J)
    wvec = [witness[u] for u in ddj.unknowns]
    cmp = compare_systems(ddj.rows, kah.rows, wvec, ddj.num_vars)
    elapsed = (time.perf_counter() - start) * 1000 if timing else None
    return RankReport(
        type=J.orbit.R.name,
        orbit=J.orbit.label,
        sigma=list(J.roots),
        dim=J.orbit.dim,
        num_vars=ddj.num_vars,
        rank_ddj=cmp.rank_ddj,
        rank_joint=cmp.rank_joint,
        witness_ok=cmp.witness_ok,
        verdict=cmp.verdict,
        witness={u: witness[u] for u in ddj.unknowns},
        ddj=ddj,
        kahler=kah,
        separating=cmp.separating,
        refuting_metric=cmp.refuting_metric,
        timing_ms=round(elapsed, 3) if elapsed is not None else None,
    )


# --- induction replay --------------------------------------------------------


@dataclass
class DerivationStep:
    pair: tuple[Root, Root]
    height: int
    case: str  # "base", "no-difference", "difference"
    uses: tuple[Root, Root] | None = None

    def to_json(self) -> dict:
        out = {"pair": [list(self.pair[0]), list(self.pair[1])], "height": self.height, "case": self.case}
        if self.uses is not None:
            out["uses"] = [list(self.uses[0]), list(self.uses[1])]
        return out


@dataclass
class ReplayLog:
    steps: list[DerivationStep] = field(default_factory=list)
    ok: bool = True
    failure: str | None = None

    @property
    def derived(self) -> set[tuple[Root, Root]]:
        return {s.pair for s in self.steps}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failure": self.failure,
            "steps": [s.to_json() for s in self.steps],
        }


class UnderivableEquality(VerificationError):
    pass


def induction_replay(
    J: ComplexStructure,
    metric: InvariantMetric | None = None,
    C: StructureConstants | None = None,
    strict: bool = False,
) -> ReplayLog:
    """Derive every additivity equality from the ddJ equations by induction on height.

    Pairs ``(a, b)`` of sigma with ``a + b`` in sigma are processed by the
    larger of their heights in ``R0plus | sigma``. A pair is derivable
    directly when ``a - b`` is not a complementary root; otherwise the
    equality for the decomposition of the larger root must already be known.
    ``metric`` (default: the canonical Kahler metric) must solve the ddJ
    system, and every derived equality is also checked on it.
    """
    if metric is None:
        metric = canonical_kahler_metric(J)
    ddj = ddJ_system(J, C)
    if not ddj.annihilates(ddj.vector(metric)):
        raise ValueError("metric does not solve the ddJ system")
    h = J.heights
    pairs = sorted(kahler_pairs(J), key=lambda p: (max(h[p[0]], h[p[1]]), p))
    log = ReplayLog()
    known: set[tuple[Root, Root]] = set()

    def fail(msg: str) -> ReplayLog:
        log.ok = False
        log.failure = msg
        if strict:
            raise UnderivableEquality(msg)
        return log

    for a, b in pairs:
        height = max(h[a], h[b])
        d = sub(a, b)
        if d in J.sigma:
            big, small, diff = a, b, d
        elif neg(d) in J.sigma:
            big, small, diff = b, a, neg(d)
        else:
            big = None
        if big is None:
            case = "base" if h[a] == h[b] == 1 else "no-difference"
            step = DerivationStep((a, b), height, case)
        else:
            need = tuple(sorted((small, diff)))
            if need not in known:
                return fail(
                    f"pair {a}, {b} needs g_{big} = g_{small} + g_{diff}, not yet derived"
                )
            step = DerivationStep((a, b), height, "difference", need)
        if metric[add(a, b)] != metric[a] + metric[b]:
            return fail(f"metric violates derived equality for {a}, {b}")
        known.add((a, b))
        log.steps.append(step)
    return log


# --- oracle equivalence --------------------------------------------------------


def oracle_mismatches(H: HermitianStructure, C: StructureConstants | None = None) -> list[tuple[Root, ...]]:
    """Arguments where the closed forms disagree with the exterior-derivative oracle.

    Covers ``d omega`` on every sorted zero-sum triple of complementary roots
    and ``dd^J omega(E_a, E_b, E_-a, E_-b) = 2 * ddJ_value`` on every pair of sigma.
    """
    orbit = H.orbit
    comp = orbit.complementary
    comp_set = orbit.complementary_set
    dw = d_omega_form(H, C)
    bad = []
    for i, a in enumerate(comp):
        for j in range(i + 1, len(comp)):
            b = comp[j]
            c = neg(add(a, b))
            if c not in comp_set or not (b < c):
                continue
            if d_omega(H, a, b, c, C) != dw(a, b, c):
                bad.append((a, b, c))
    if not bad:
        # the twisted form is only meaningful once d omega itself agrees
        F = ddJ_omega(H, C)
        roots = H.J.roots
        for i, a in enumerate(roots):
            for b in roots[i + 1 :]:
                if F(a, b, neg(a), neg(b)) != 2 * ddJ_value(H, a, b, C):
                    bad.append((a, b, neg(a), neg(b)))
    return bad
