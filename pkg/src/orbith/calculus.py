"""Invariant forms on the tangent space of an orbit at the identity coset.

Forms are complex multilinear and evaluated on the root vectors ``E_a`` of
the Weyl-normalized basis, ``a`` complementary. Two independent routes are
kept apart on purpose:

* :func:`exterior_derivative_oracle` applies the general formula
  ``dF(X_0..X_k) = sum_{i<j} (-1)^(i+j) F([X_i, X_j]_m, X_0.. ^i.. ^j.. X_k)``
  to any value table, using only the projected bracket;
* :func:`d_omega`, :func:`ddJ_value` and the system builders are closed
  forms in the metric coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .chevalley import StructureConstants, structure_constants
from .orbit import ComplexStructure, HermitianStructure, OrbitSpec, kahler_pairs
from .rootsys import Root, add, neg, sub
from .surd import ComplexSqrt, I, SignSqrt

MAX_ORACLE_DEGREE = 3


class FormError(ValueError):
    pass


def _sort_with_sign(args: Iterable[Root]) -> tuple[tuple[Root, ...], int]:
    """Sort arguments, returning the permutation sign (0 on a repeat)."""
    items = list(args)
    sign = 1
    # insertion sort; k <= 4
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return tuple(items), 0
    return tuple(items), sign


@dataclass
class GenericInvariantForm:
    """Antisymmetric k-form stored on strictly increasing root tuples (nonzero entries only)."""

    orbit: OrbitSpec
    degree: int
    values: dict[tuple[Root, ...], ComplexSqrt] = field(default_factory=dict)

    def __call__(self, *args: Root) -> ComplexSqrt:
        if len(args) != self.degree:
            raise FormError(f"expected {self.degree} arguments, got {len(args)}")
        key, sign = _sort_with_sign(args)
        if sign == 0:
            return ComplexSqrt()
        v = self.values.get(key)
        if v is None:
            return ComplexSqrt()
        return v if sign > 0 else -v

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GenericInvariantForm):
            return NotImplemented
        return self.degree == other.degree and self.values == other.values

    def __neg__(self) -> "GenericInvariantForm":
        return GenericInvariantForm(self.orbit, self.degree, {k: -v for k, v in self.values.items()})

    def __add__(self, other: "GenericInvariantForm") -> "GenericInvariantForm":
        if self.degree != other.degree:
            raise FormError("degree mismatch")
        out = dict(self.values)
        for k, v in other.values.items():
            s = out.get(k, ComplexSqrt()) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return GenericInvariantForm(self.orbit, self.degree, out)

    def __sub__(self, other: "GenericInvariantForm") -> "GenericInvariantForm":
        return self + (-other)

    def scaled(self, c) -> "GenericInvariantForm":
        out = {k: v * c for k, v in self.values.items()}
        return GenericInvariantForm(self.orbit, self.degree, {k: v for k, v in out.items() if v})

    def weight_violations(self) -> list[tuple[Root, ...]]:
        """Nonzero entries whose roots do not sum to zero (T-invariance)."""
        return [k for k in self.values if any(sum(c) for c in zip(*k))]

    def is_real(self) -> bool:
        """Reality on m: ``F(tau X, ...) = conj F(X, ...)`` with ``tau E_a = -E_-a``."""
        s = (-1) ** self.degree
        for key, v in self.values.items():
            if self(*[neg(a) for a in key]) * s != v.conjugate():
                return False
        return True


@dataclass
class InvariantTwoForm:
    """Diagonal data ``c_a = B(E_a, E_-a)`` of an invariant 2-form."""

    orbit: OrbitSpec
    coeff: dict[Root, ComplexSqrt]

    def check(self) -> None:
        for a in self.orbit.complementary:
            c = self.coeff[a]
            if self.coeff[neg(a)] != -c:
                raise FormError(f"c_-a != -c_a at {a}")
            if not c.is_imaginary():
                raise FormError(f"c_a must be purely imaginary at {a}")

    def __call__(self, a: Root, b: Root) -> ComplexSqrt:
        if any(x + y for x, y in zip(a, b)):
            return ComplexSqrt()
        return self.coeff[a]

    def as_generic(self) -> GenericInvariantForm:
        vals = {}
        for a in self.orbit.complementary:
            b = neg(a)
            if a < b and self.coeff[a]:
                vals[(a, b)] = self.coeff[a]
        return GenericInvariantForm(self.orbit, 2, vals)

    @classmethod
    def from_real_coefficients(cls, orbit: OrbitSpec, h: Mapping[Root, Fraction]) -> "InvariantTwoForm":
        """``c_a = -i h_a`` where ``h`` is odd (``h_-a = -h_a``)."""
        return cls(orbit, {a: ComplexSqrt(0, -Fraction(h[a])) for a in orbit.complementary})

    def real_coefficients(self) -> dict[Root, Fraction]:
        """Inverse of :meth:`from_real_coefficients`."""
        return {a: -c.im.to_fraction() for a, c in self.coeff.items()}


def kaehler_form(H: HermitianStructure) -> InvariantTwoForm:
    """``omega(E_a, E_-a) = -i g_a eps_a``."""
    eps = H.J.epsilon
    g = H.metric
    return InvariantTwoForm(
        H.orbit, {a: ComplexSqrt(0, -g[a] * eps[a]) for a in H.orbit.complementary}
    )


class ProjectedBracket:
    """``[E_a, E_b]`` followed by projection onto m, read from the Weyl table."""

    def __init__(self, orbit: OrbitSpec, C: StructureConstants | None = None):
        self.orbit = orbit
        self.C = C if C is not None else structure_constants(orbit.R)
        comp = orbit.complementary_set
        self.by_sum: dict[Root, list[tuple[Root, Root, SignSqrt]]] = {}
        for a in orbit.complementary:
            for b in orbit.complementary:
                if a < b:
                    s = add(a, b)
                    if s in comp:
                        self.by_sum.setdefault(s, []).append((a, b, self.C.weyl_N(a, b)))

    def __call__(self, a: Root, b: Root) -> tuple[Root, SignSqrt] | None:
        s = add(a, b)
        if s in self.orbit.complementary_set:
            return s, self.C.weyl_N(a, b)
        return None


def exterior_derivative_oracle(
    F: GenericInvariantForm, C: StructureConstants | None = None
) -> GenericInvariantForm:
    """Exterior derivative of an invariant form via the projected-bracket formula.

    Only pairs whose projected bracket is nonzero contribute; they are
    enumerated from the bracket side and combined with the nonzero entries of
    ``F``, which is the same finite sum reorganized.
    """
    if F.degree > MAX_ORACLE_DEGREE:
        raise FormError(f"oracle supports degree <= {MAX_ORACLE_DEGREE}, got {F.degree}")
    br = ProjectedBracket(F.orbit, C)
    out: dict[tuple[Root, ...], ComplexSqrt] = {}
    for key, val in F.values.items():
        for p, s in enumerate(key):
            pairs = br.by_sum.get(s)
            if not pairs:
                continue
            rest = key[:p] + key[p + 1 :]
            # F(s, rest...) = (-1)^p F(key)
            base = val if p % 2 == 0 else -val
            for a, b, n in pairs:
                if a in rest or b in rest:
                    continue
                target = tuple(sorted(rest + (a, b)))
                i, j = target.index(a), target.index(b)
                term = base * n
                if (i + j) % 2:
                    term = -term
                out[target] = out.get(target, ComplexSqrt()) + term
    return GenericInvariantForm(F.orbit, F.degree + 1, {k: v for k, v in out.items() if v})


def exterior_derivative_full(
    F: GenericInvariantForm, C: StructureConstants | None = None
) -> GenericInvariantForm:
    """The same formula summed literally over every sorted argument tuple.

    Quadratic blow-up; intended for small orbits in tests.
    """
    from itertools import combinations

    if F.degree > MAX_ORACLE_DEGREE:
        raise FormError(f"oracle supports degree <= {MAX_ORACLE_DEGREE}, got {F.degree}")
    br = ProjectedBracket(F.orbit, C)
    out = {}
    for args in combinations(F.orbit.complementary, F.degree + 1):
        total = ComplexSqrt()
        for i in range(len(args)):
            for j in range(i + 1, len(args)):
                bracket = br(args[i], args[j])
                if bracket is None:
                    continue
                s, n = bracket
                rest = args[:i] + args[i + 1 : j] + args[j + 1 :]
                term = F(s, *rest) * n
                total = total + (term if (i + j) % 2 == 0 else -term)
        if total:
            out[args] = total
    return GenericInvariantForm(F.orbit, F.degree + 1, out)


def twist_by_J(F: GenericInvariantForm, J: ComplexStructure) -> GenericInvariantForm:
    """``-F(JX, JY, ...)`` for ``J E_a = i eps_a E_a``."""
    eps = J.epsilon
    out = {}
    for key, v in F.values.items():
        factor = ComplexSqrt(-1)
        for a in key:
            factor = factor * I * eps[a]
        out[key] = v * factor
    return GenericInvariantForm(F.orbit, F.degree, out)


def d_omega_form(H: HermitianStructure, C: StructureConstants | None = None) -> GenericInvariantForm:
    """``d omega`` through the oracle."""
    return exterior_derivative_oracle(kaehler_form(H).as_generic(), C)


def dJ_omega(H: HermitianStructure, C: StructureConstants | None = None) -> GenericInvariantForm:
    """``(d^J omega)(X, Y, Z) = -(d omega)(JX, JY, JZ)``."""
    return twist_by_J(d_omega_form(H, C), H.J)


def ddJ_omega(H: HermitianStructure, C: StructureConstants | None = None) -> GenericInvariantForm:
    return exterior_derivative_oracle(dJ_omega(H, C), C)


def d_omega(
    H: HermitianStructure, a: Root, b: Root, c: Root, C: StructureConstants | None = None
) -> ComplexSqrt:
    """Closed form ``-i N_ab (eps_a g_a + eps_b g_b + eps_c g_c)`` on zero-sum triples."""
    if any(x + y + z for x, y, z in zip(a, b, c)):
        return ComplexSqrt()
    C = C if C is not None else structure_constants(H.orbit.R)
    eps, g = H.J.epsilon, H.metric
    paren = eps[a] * g[a] + eps[b] * g[b] + eps[c] * g[c]
    return ComplexSqrt(0, -C.weyl_N(a, b) * paren)


def _eps_diff(J: ComplexStructure, a: Root, b: Root) -> int:
    d = sub(a, b)
    if d in J.sigma:
        return 1
    if neg(d) in J.sigma:
        return -1
    return 0  # in R0 or not a root


def ddJ_value(
    H: HermitianStructure, a: Root, b: Root, C: StructureConstants | None = None
) -> Fraction:
    """Closed form of ``(1/2) dd^J omega(E_a, E_b, E_-a, E_-b)`` for ``a, b`` in sigma."""
    J = H.J
    if a not in J.sigma or b not in J.sigma:
        raise FormError("ddJ_value needs both roots in sigma")
    C = C if C is not None else structure_constants(H.orbit.R)
    g = H.metric
    total = Fraction(0)
    s = add(a, b)
    if s in J.orbit.R.root_set:
        total += C.weyl_N2(a, b) * (g[s] - g[a] - g[b])
    e = _eps_diff(J, a, b)
    if e:
        total += e * C.weyl_N2(a, neg(b)) * (e * g[sub(a, b)] - g[a] + g[b])
    return total


@dataclass
class LinearSystemQ:
    """Homogeneous rational system; one unknown per complementary pair, named by its sigma root."""

    unknowns: tuple[Root, ...]
    rows: list[tuple[Fraction, ...]]
    labels: list[tuple[Root, Root]]

    @property
    def num_vars(self) -> int:
        return len(self.unknowns)

    def vector(self, metric) -> list[Fraction]:
        return [Fraction(metric[u]) for u in self.unknowns]

    def residuals(self, values) -> list[Fraction]:
        return [sum((c * x for c, x in zip(row, values)), Fraction(0)) for row in self.rows]

    def annihilates(self, values) -> bool:
        return all(r == 0 for r in self.residuals(values))

    def to_json(self) -> dict:
        return {
            "unknowns": [list(u) for u in self.unknowns],
            "rows": [[[c.numerator, c.denominator] for c in row] for row in self.rows],
            "pairs": [[list(a), list(b)] for a, b in self.labels],
        }


def _dedupe(rows: list[tuple[Fraction, ...]], labels: list) -> tuple[list, list]:
    seen = set()
    out_rows, out_labels = [], []
    for row, lab in zip(rows, labels):
        if any(row) and row not in seen:
            seen.add(row)
            out_rows.append(row)
            out_labels.append(lab)
    return out_rows, out_labels


def ddJ_system(J: ComplexStructure, C: StructureConstants | None = None) -> LinearSystemQ:
    """Coefficients of the ``g`` variables in ``ddJ_value`` for each unordered pair of sigma."""
    C = C if C is not None else structure_constants(J.orbit.R)
    unknowns = J.roots
    col = {u: k for k, u in enumerate(unknowns)}
    R = J.orbit.R
    rows, labels = [], []
    for i, a in enumerate(unknowns):
        for b in unknowns[i + 1 :]:
            coeffs = [Fraction(0)] * len(unknowns)
            s = add(a, b)
            if s in R.root_set:
                n2 = C.weyl_N2(a, b)
                coeffs[col[J.representative(s)]] += n2
                coeffs[col[a]] -= n2
                coeffs[col[b]] -= n2
            e = _eps_diff(J, a, b)
            if e:
                n2 = C.weyl_N2(a, neg(b))
                d = sub(a, b)
                # e * n2 * (e g_d - g_a + g_b)
                coeffs[col[J.representative(d)]] += n2
                coeffs[col[a]] -= e * n2
                coeffs[col[b]] += e * n2
            rows.append(tuple(coeffs))
            labels.append((a, b))
    rows, labels = _dedupe(rows, labels)
    return LinearSystemQ(unknowns, rows, labels)


def kahler_system(J: ComplexStructure) -> LinearSystemQ:
    """One row ``g_{a+b} - g_a - g_b`` per unordered pair of sigma summing into sigma."""
    unknowns = J.roots
    col = {u: k for k, u in enumerate(unknowns)}
    rows, labels = [], []
    for a, b in kahler_pairs(J):
        coeffs = [Fraction(0)] * len(unknowns)
        coeffs[col[add(a, b)]] += 1
        coeffs[col[a]] -= 1
        coeffs[col[b]] -= 1
        rows.append(tuple(coeffs))
        labels.append((a, b))
    rows, labels = _dedupe(rows, labels)
    return LinearSystemQ(unknowns, rows, labels)


def closedness_system(orbit: OrbitSpec, C: StructureConstants | None = None) -> tuple[tuple[Root, ...], list[tuple[Fraction, ...]]]:
    """Linear conditions on odd real coefficients ``h`` for ``d(-i h) = 0``.

    Unknowns are indexed by the positive (in ``R``) member of each pair; rows
    come from the oracle applied to the basis forms, so closed forms found
    here are closed by the generic formula, not by a closed-form shortcut.
    """
    R = orbit.R
    unknowns = tuple(r for r in orbit.complementary if r in R.positive_set)
    columns = []
    for u in unknowns:
        h = {a: Fraction(0) for a in orbit.complementary}
        h[u], h[neg(u)] = Fraction(1), Fraction(-1)
        columns.append(exterior_derivative_oracle(InvariantTwoForm.from_real_coefficients(orbit, h).as_generic(), C))
    keys = sorted({k for col in columns for k in col.values})
    rows = []
    for k in keys:
        vals = [col.values.get(k, ComplexSqrt()) for col in columns]
        # entries in one row share a radicand; divide it out to get rationals
        ref = next(v for v in vals if v)
        unit = ref.im if ref.is_imaginary() else ref.re
        radical = SignSqrt(1, unit.r)
        row = []
        for v in vals:
            part = v.im if ref.is_imaginary() else v.re
            row.append((part / radical).to_fraction())
        rows.append(tuple(row))
    return unknowns, rows
