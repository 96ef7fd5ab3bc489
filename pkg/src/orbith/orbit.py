"""Adjoint orbits at root level, invariant complex structures and metrics.

An orbit is parametrized by a subset ``S`` of simple-root indices (0-based in
the API); ``R0`` is the set of roots supported on ``S`` and the complementary
roots are the rest. User-facing output labels simple roots from 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import chain, combinations
from typing import Iterable, Mapping

from .rootsys import (
    Root,
    RootSystem,
    heights,
    is_closed,
    is_positive_system,
    neg,
    positive_systems,
)


@dataclass(frozen=True, eq=False)
class OrbitSpec:
    R: RootSystem
    S: frozenset[int]
    R0: tuple[Root, ...]
    R0plus: tuple[Root, ...]
    complementary: tuple[Root, ...]

    @property
    def dim(self) -> int:
        return len(self.complementary)

    @cached_property
    def complementary_set(self) -> frozenset[Root]:
        return frozenset(self.complementary)

    @cached_property
    def R0_set(self) -> frozenset[Root]:
        return frozenset(self.R0)

    @property
    def label(self) -> list[int]:
        return [i + 1 for i in sorted(self.S)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrbitSpec):
            return NotImplemented
        return self.R is other.R and self.S == other.S

    def __hash__(self) -> int:
        return hash((self.R.name, self.S))

    def __repr__(self) -> str:
        return f"OrbitSpec({self.R.name}, S={self.label})"


def make_orbit(R: RootSystem, S: Iterable[int]) -> OrbitSpec:
    S = frozenset(S)
    if not S <= set(range(R.rank)):
        raise ValueError(f"S must be a subset of simple-root indices 0..{R.rank - 1}")
    R0 = tuple(r for r in R.roots if all(c == 0 for i, c in enumerate(r) if i not in S))
    r0set = frozenset(R0)
    if not is_closed(R, R0) or r0set != frozenset(neg(r) for r in R0):
        raise AssertionError("R0 must be closed and symmetric")
    R0plus = tuple(r for r in R0 if r in R.positive_set)
    complementary = tuple(r for r in R.roots if r not in r0set)
    return OrbitSpec(R, S, R0, R0plus, complementary)


def all_orbits(R: RootSystem) -> list[OrbitSpec]:
    """One orbit per subset of simple roots, ordered by size then lexicographically."""
    idx = range(R.rank)
    subsets = chain.from_iterable(combinations(idx, k) for k in range(R.rank + 1))
    return [make_orbit(R, s) for s in subsets]


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    """Invariant complex structure given by its set of roots ``sigma``."""

    orbit: OrbitSpec
    sigma: frozenset[Root]

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return tuple(sorted(self.sigma))

    @cached_property
    def epsilon(self) -> dict[Root, int]:
        return {a: 1 if a in self.sigma else -1 for a in self.orbit.complementary}

    @cached_property
    def positive_system(self) -> frozenset[Root]:
        return frozenset(self.orbit.R0plus) | self.sigma

    @cached_property
    def heights(self) -> dict[Root, int]:
        """Heights relative to the base of ``R0plus | sigma``."""
        return heights(self.orbit.R, self.positive_system)

    def representative(self, root: Root) -> Root:
        """The member of ``{root, -root}`` lying in sigma."""
        return root if root in self.sigma else neg(root)

    def opposite(self) -> "ComplexStructure":
        return ComplexStructure(self.orbit, frozenset(neg(r) for r in self.sigma))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexStructure):
            return NotImplemented
        return self.orbit == other.orbit and self.sigma == other.sigma

    def __hash__(self) -> int:
        return hash((self.orbit, self.sigma))

    def __repr__(self) -> str:
        return f"ComplexStructure({self.orbit!r}, sigma={list(self.roots)})"


def enumerate_complex_structures(orbit: OrbitSpec) -> list[ComplexStructure]:
    """Closed sigma sets cut from positive systems containing ``R0plus``.

    Sorted lexicographically. A positive system containing ``R0plus`` need
    not give a closed ``sigma`` once ``R0`` is nontrivial; those are dropped.
    """
    return list(_closed_structures(orbit))


@lru_cache(maxsize=None)
def _closed_structures(orbit: OrbitSpec) -> tuple[ComplexStructure, ...]:
    return tuple(ComplexStructure(orbit, s) for s in _candidate_sigmas(orbit) if is_closed(orbit.R, s))


def _candidate_sigmas(orbit: OrbitSpec) -> list[frozenset[Root]]:
    if not orbit.complementary:
        return []
    R0plus = frozenset(orbit.R0plus)
    comp = orbit.complementary_set
    found = {P & comp for P in positive_systems(orbit.R) if R0plus <= P}
    return sorted(found, key=lambda s: sorted(s))


def count_positive_systems_containing(orbit: OrbitSpec) -> int:
    """Number of positive systems of ``R`` containing ``R0plus`` (equals ``|W| / |W_0|``)."""
    R0plus = frozenset(orbit.R0plus)
    return sum(1 for P in positive_systems(orbit.R) if R0plus <= P)


def brute_force_complex_structures(orbit: OrbitSpec) -> list[ComplexStructure]:
    """All sign choices on complementary pairs, filtered by the definition."""
    if not orbit.complementary:
        return []
    R = orbit.R
    pairs = [r for r in orbit.complementary if r in R.positive_set]
    R0plus = frozenset(orbit.R0plus)
    out = []
    for mask in range(1 << len(pairs)):
        sigma = frozenset(r if not (mask >> k) & 1 else neg(r) for k, r in enumerate(pairs))
        if is_closed(R, sigma) and is_positive_system(R, R0plus | sigma):
            out.append(sigma)
    return [ComplexStructure(orbit, s) for s in sorted(out, key=lambda s: sorted(s))]


@dataclass(frozen=True)
class InvariantMetric:
    """Coefficients ``g_a`` on every complementary root."""

    g: Mapping[Root, Fraction]

    @classmethod
    def from_pairs(cls, values: Mapping[Root, "Fraction | int"]) -> "InvariantMetric":
        """Extend values given on one root of each pair by ``g_-a = g_a``."""
        g = {}
        for r, v in values.items():
            g[r] = Fraction(v)
            g[neg(r)] = Fraction(v)
        return cls(g)

    @classmethod
    def constant(cls, orbit: OrbitSpec, value=1) -> "InvariantMetric":
        return cls({r: Fraction(value) for r in orbit.complementary})

    def __getitem__(self, root: Root) -> Fraction:
        return self.g[root]

    def replace(self, root: Root, value) -> "InvariantMetric":
        """Copy with a single coefficient changed (the partner ``-root`` is kept)."""
        g = dict(self.g)
        g[root] = Fraction(value)
        return InvariantMetric(g)


@dataclass(frozen=True)
class HermitianStructure:
    J: ComplexStructure
    metric: InvariantMetric

    @property
    def orbit(self) -> OrbitSpec:
        return self.J.orbit


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = "valid"
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def validate_complex_structure(J: ComplexStructure) -> ValidationReport:
    orbit, sigma = J.orbit, J.sigma
    comp = orbit.complementary_set
    if not sigma <= comp:
        return ValidationReport(False, "sigma contains non-complementary roots")
    neg_sigma = frozenset(neg(r) for r in sigma)
    if sigma & neg_sigma:
        return ValidationReport(False, "sigma meets -sigma")
    if sigma | neg_sigma != comp:
        missing = sorted(comp - (sigma | neg_sigma))
        return ValidationReport(False, "sigma union -sigma is not R \\ R0", {"missing": missing})
    if not is_closed(orbit.R, sigma):
        return ValidationReport(False, "sigma is not closed")
    if not is_positive_system(orbit.R, frozenset(orbit.R0plus) | sigma):
        return ValidationReport(False, "R0plus union sigma is not a positive system")
    eps = J.epsilon
    if any(eps[a] != -eps[neg(a)] for a in comp):
        return ValidationReport(False, "epsilon is not odd")
    return ValidationReport(True)


def validate_metric(orbit: OrbitSpec, metric: InvariantMetric) -> ValidationReport:
    comp = orbit.complementary_set
    if set(metric.g) != set(comp):
        return ValidationReport(False, "metric must be defined exactly on complementary roots")
    for a in orbit.complementary:
        if metric[a] != metric[neg(a)]:
            return ValidationReport(False, "g_a != g_-a", {"root": a})
        if metric[a] <= 0:
            return ValidationReport(False, "metric not positive", {"root": a})
    return ValidationReport(True)


def validate_hermitian(H: HermitianStructure) -> ValidationReport:
    """First violated invariant of the complex structure or the metric, or success."""
    report = validate_complex_structure(H.J)
    if not report:
        return report
    return validate_metric(H.orbit, H.metric)


def kahler_pairs(J: ComplexStructure) -> list[tuple[Root, Root]]:
    """Unordered pairs ``{a, b}`` of sigma (as sorted tuples) with ``a + b`` in sigma."""
    out = []
    roots = J.roots
    for i, a in enumerate(roots):
        for b in roots[i + 1 :]:
            if tuple(x + y for x, y in zip(a, b)) in J.sigma:
                out.append((a, b))
    return out


def is_kaehler(H: HermitianStructure) -> bool:
    """Additivity ``g_{a+b} = g_a + g_b`` over summing pairs of sigma."""
    R, g = H.orbit.R, H.metric
    sigma = H.J.sigma
    for a in sigma:
        for b in sigma:
            s = tuple(x + y for x, y in zip(a, b))
            if s in R.root_set and g[s] != g[a] + g[b]:
                return False
    return True


def canonical_kahler_metric(J: ComplexStructure) -> InvariantMetric:
    """``g_a = (lambda, a)`` with ``lambda`` dual to the base of ``R0plus | sigma``.

    Concretely ``g_a`` is the height of the sigma-representative of ``a``.
    """
    h = J.heights
    return InvariantMetric({a: Fraction(h[J.representative(a)]) for a in J.orbit.complementary})


def weyl_subgroup_order(orbit: OrbitSpec) -> int:
    return len(orbit.R.weyl_group(orbit.S))
