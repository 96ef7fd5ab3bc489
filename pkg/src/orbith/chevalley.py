"""Chevalley structure constants, Killing form and the Weyl-normalized basis.

Signs follow the extraspecial-pair convention: positive roots are totally
ordered by height (ties broken so that ``a1 < a2 < ...``), every non-simple
positive root ``xi`` gets the extraspecial pair ``(a_i, xi - a_i)`` with
``a_i`` the first simple root that can be subtracted, and ``N`` on that pair
is set to ``+(p + 1)``. Every other constant follows from the standard
Chevalley relations. The result is verified, not trusted: see
:meth:`BracketTable.jacobi_violations`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Union

from .rootsys import Root, RootSystem, add, build_root_system, neg
from .surd import ComplexSqrt, I, SignSqrt

Label = tuple  # ("e", root) or ("h", i)
Coeff = Union[int, Fraction, SignSqrt]


@dataclass
class StructureConstants:
    """Bracket data in the Chevalley basis plus its Weyl-normalized rescaling.

    ``chevalley[(a, b)]`` is the integer ``N_ab`` for every pair with ``a + b``
    a root. ``cartan_part[a]`` holds the coroot coefficients of
    ``[E_a, E_-a]``. ``scale2[a]`` is ``c_a**2 = 1/kappa_a`` and ``weyl[(a, b)]``
    the rescaled constant ``c_a c_b / c_{a+b} * N_ab``.
    """

    R: RootSystem
    chevalley: dict[tuple[Root, Root], int]
    cartan_part: dict[Root, tuple[int, ...]]
    weyl: dict[tuple[Root, Root], SignSqrt] = field(default_factory=dict)
    scale2: dict[Root, Fraction] = field(default_factory=dict)

    def N(self, a: Root, b: Root) -> int:
        return self.chevalley.get((a, b), 0)

    def weyl_N(self, a: Root, b: Root) -> SignSqrt:
        return self.weyl.get((a, b), _ZERO)

    def weyl_N2(self, a: Root, b: Root) -> Fraction:
        """Exact rational square of the Weyl-normalized constant."""
        return self.weyl_N(a, b).square()

    def with_flipped_sign(self, a: Root, b: Root) -> "StructureConstants":
        """Copy with ``N'_ab`` and ``N'_ba`` negated in the Weyl table only.

        Used as a negative control: the copy breaks the cyclic identity.
        """
        weyl = dict(self.weyl)
        if (a, b) not in weyl:
            raise KeyError(f"{a} + {b} is not a root")
        weyl[(a, b)] = -weyl[(a, b)]
        weyl[(b, a)] = -weyl[(b, a)]
        return StructureConstants(self.R, self.chevalley, self.cartan_part, weyl, self.scale2)


_ZERO = SignSqrt()


@dataclass(frozen=True)
class KillingTable:
    kappa: dict[Root, Fraction]
    kappa_h: tuple[tuple[Fraction, ...], ...]


def _order_key(root: Root) -> tuple:
    return (sum(root), tuple(-x for x in root))


def chevalley_constants(R: RootSystem) -> StructureConstants:
    """Integer structure constants ``N_ab`` for all root pairs with ``a + b`` in ``R``."""
    norm2 = {r: R.norm2(r) for r in R.roots}
    order = {r: k for k, r in enumerate(sorted(R.positives, key=_order_key))}
    simple_order = sorted(R.base, key=_order_key)

    extraspecial: dict[Root, Root] = {}
    for xi in R.positives:
        if sum(xi) == 1:
            continue
        for a in simple_order:
            if tuple(x - y for x, y in zip(xi, a)) in R.positive_set:
                extraspecial[xi] = a
                break

    memo: dict[tuple[Root, Root], Fraction] = {}

    def n(r: Root, s: Root) -> Fraction:
        key = (r, s)
        if key in memo:
            return memo[key]
        xi = add(r, s)
        if xi not in R.root_set:
            val = Fraction(0)
        else:
            r_pos = r in R.positive_set
            s_pos = s in R.positive_set
            if r_pos and s_pos:
                val = _positive(r, s, xi)
            elif not r_pos and not s_pos:
                val = -n(neg(r), neg(s))
            elif not r_pos:
                val = -n(s, r)
            else:
                t = neg(xi)
                if xi in R.positive_set:
                    # s and t negative: N_rs / (t,t) = N_st / (r,r)
                    val = norm2[t] / norm2[r] * n(s, t)
                else:
                    # t and r positive: N_rs / (t,t) = N_tr / (s,s)
                    val = norm2[t] / norm2[s] * n(t, r)
        memo[key] = val
        return val

    def _positive(r: Root, s: Root, xi: Root) -> Fraction:
        if order[r] > order[s]:
            return -n(s, r)
        alpha = extraspecial[xi]
        beta = tuple(x - y for x, y in zip(xi, alpha))
        n_ab = Fraction(R.string_below(alpha, beta) + 1)
        if r == alpha:
            return n_ab
        # four-root relation on (r, s, -alpha, -beta)
        total = Fraction(0)
        s_a = tuple(x - y for x, y in zip(s, alpha))
        if s_a in R.root_set:
            total += n(s, neg(alpha)) * n(r, neg(beta)) / norm2[s_a]
        r_a = tuple(x - y for x, y in zip(r, alpha))
        if r_a in R.root_set:
            total += n(neg(alpha), r) * n(s, neg(beta)) / norm2[r_a]
        return norm2[xi] * total / n_ab

    table: dict[tuple[Root, Root], int] = {}
    for r in R.roots:
        for s in R.roots:
            if add(r, s) in R.root_set:
                v = n(r, s)
                if v.denominator != 1 or v == 0:
                    raise ArithmeticError(f"non-integral constant N{r},{s} = {v}")
                table[(r, s)] = int(v)

    cartan_part = {}
    for r in R.roots:
        coeffs = []
        for i, k in enumerate(r):
            c = Fraction(k) * R.gram[i][i] / norm2[r]
            if c.denominator != 1:
                raise ArithmeticError("non-integral coroot coefficient")
            coeffs.append(int(c))
        cartan_part[r] = tuple(coeffs)
    return StructureConstants(R, table, cartan_part)


class BracketTable:
    """Bracket on the basis ``{E_a : a in R} + {h_1..h_n}`` with sparse results.

    ``scale2`` selects the basis: ``None`` is the Chevalley basis, otherwise
    ``E_a`` is rescaled by ``c_a`` with ``c_a**2 = scale2[a]`` and the root-pair
    constants are read from the Weyl table.
    """

    def __init__(self, C: StructureConstants, weyl: bool = False):
        R = C.R
        self.R = R
        self.C = C
        self.weyl = weyl
        self.labels: list[Label] = [("e", r) for r in R.roots] + [("h", i) for i in range(R.rank)]
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        self.dim = len(self.labels)
        self._table: dict[tuple[int, int], tuple[tuple[int, Coeff], ...]] = {}
        for x in range(self.dim):
            for y in range(self.dim):
                out = self._basis_bracket(self.labels[x], self.labels[y])
                if out:
                    self._table[(x, y)] = tuple(out.items())

    def _basis_bracket(self, x: Label, y: Label) -> dict[int, Coeff]:
        R, C = self.R, self.C
        if x[0] == "h" and y[0] == "h":
            return {}
        if x[0] == "h":
            c = R.pairing(y[1], x[1])
            return {self.index[y]: c} if c else {}
        if y[0] == "h":
            c = R.pairing(x[1], y[1])
            return {self.index[x]: -c} if c else {}
        a, b = x[1], y[1]
        s = add(a, b)
        if not any(s):
            factor = C.scale2[a] if self.weyl else 1
            return {
                self.index[("h", i)]: factor * k for i, k in enumerate(C.cartan_part[a]) if k
            }
        if s in R.root_set:
            val = C.weyl_N(a, b) if self.weyl else C.N(a, b)
            return {self.index[("e", s)]: val}
        return {}

    def bracket(self, x: int, y: int) -> tuple[tuple[int, Coeff], ...]:
        return self._table.get((x, y), ())

    def bracket_vec(self, u: dict[int, Coeff], v: dict[int, Coeff]) -> dict[int, Coeff]:
        out: dict[int, Coeff] = {}
        for x, cx in u.items():
            for y, cy in v.items():
                for z, cz in self.bracket(x, y):
                    out[z] = out.get(z, 0) + cx * cy * cz
        return {k: c for k, c in out.items() if c != 0}

    def killing(self, x: int, y: int) -> Coeff:
        """``trace(ad_x ad_y)`` by summing diagonal entries over the basis."""
        total: Coeff = 0
        for z in range(self.dim):
            for w, cw in self.bracket(y, z):
                for u, cu in self.bracket(x, w):
                    if u == z:
                        total = total + cw * cu
        return total

    def killing_matrix(self) -> list[list[Coeff]]:
        return [[self.killing(x, y) for y in range(self.dim)] for x in range(self.dim)]

    def jacobi(self, x: int, y: int, z: int) -> dict[int, Coeff]:
        terms: dict[int, Coeff] = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            inner = dict(self.bracket(a, b))
            for k, v in self.bracket_vec(inner, {c: 1}).items():
                terms[k] = terms.get(k, 0) + v
        return {k: v for k, v in terms.items() if v != 0}

    def jacobi_violations(self) -> Iterator[tuple[int, int, int]]:
        """Basis triples where the Jacobi identity fails (distinct triples suffice)."""
        for x, y, z in combinations(range(self.dim), 3):
            if self.jacobi(x, y, z):
                yield (x, y, z)

    def ad_invariance_violations(self) -> Iterator[tuple[int, int, int]]:
        """Triples with ``kappa([X,Y],Z) + kappa(Y,[X,Z]) != 0``."""
        K = self.killing_matrix()

        def kap(u: dict[int, Coeff], z: int) -> Coeff:
            return sum((c * K[k][z] for k, c in u.items()), 0)

        for x in range(self.dim):
            for y in range(self.dim):
                xy = dict(self.bracket(x, y))
                for z in range(self.dim):
                    xz = dict(self.bracket(x, z))
                    lhs = kap(xy, z) + sum((c * K[y][k] for k, c in xz.items()), 0)
                    if lhs != 0:
                        yield (x, y, z)


def killing_form(R: RootSystem, C: StructureConstants) -> KillingTable:
    """Killing form from explicit adjoint traces in the Chevalley basis."""
    T = BracketTable(C)
    kappa = {}
    for r in R.positives:
        k = Fraction(T.killing(T.index[("e", r)], T.index[("e", neg(r))]))
        kappa[r] = k
        kappa[neg(r)] = Fraction(T.killing(T.index[("e", neg(r))], T.index[("e", r)]))
    hs = [T.index[("h", i)] for i in range(R.rank)]
    kappa_h = tuple(tuple(Fraction(T.killing(x, y)) for y in hs) for x in hs)
    return KillingTable(kappa, kappa_h)


def weyl_normalize(C: StructureConstants, K: KillingTable) -> StructureConstants:
    """Rescale ``E_a -> E_a / sqrt(kappa_a)`` so that ``<E_a, E_-a> = 1``."""
    scale2 = {r: 1 / K.kappa[r] for r in C.R.roots}
    weyl = {}
    for (a, b), n in C.chevalley.items():
        s = add(a, b)
        factor = SignSqrt.sqrt(scale2[a] * scale2[b] / scale2[s])
        weyl[(a, b)] = factor * n
    return StructureConstants(C.R, C.chevalley, C.cartan_part, weyl, scale2)


@lru_cache(maxsize=None)
def _constants_for(name: str) -> StructureConstants:
    R = build_root_system(name)
    C = chevalley_constants(R)
    return weyl_normalize(C, killing_form(R, C))


def structure_constants(R: RootSystem) -> StructureConstants:
    """Chevalley and Weyl tables for ``R``, cached per type."""
    return _constants_for(R.name)


# --- compact real form -----------------------------------------------------

CVec = dict  # Label -> ComplexSqrt


@dataclass(frozen=True)
class RealFormBasis:
    """Generators ``A_a = E_a - E_-a`` and ``B_a = i (E_a + E_-a)`` over positive roots."""

    R: RootSystem
    A: dict[Root, CVec]
    B: dict[Root, CVec]

    def tau(self, v: CVec) -> CVec:
        """Antilinear involution fixing the compact form: ``E_a -> -E_-a``, ``h -> -h``."""
        out: CVec = {}
        for lab, z in v.items():
            if lab[0] == "e":
                out[("e", neg(lab[1]))] = -z.conjugate()
            else:
                out[lab] = -z.conjugate()
        return out

    def generators(self, roots=None) -> list[CVec]:
        keys = self.R.positives if roots is None else roots
        return [g for r in keys for g in (self.A[r], self.B[r])]


def real_form_basis(C: StructureConstants) -> RealFormBasis:
    one = ComplexSqrt(1)
    A = {}
    B = {}
    for r in C.R.positives:
        A[r] = {("e", r): one, ("e", neg(r)): -one}
        B[r] = {("e", r): I, ("e", neg(r)): I}
    return RealFormBasis(C.R, A, B)


def constants_to_json(C: StructureConstants) -> dict:
    """Nested mapping ``"a" -> "b" -> value`` with comma-joined coefficient keys."""

    def key(r: Root) -> str:
        return ",".join(str(x) for x in r)

    cheva: dict[str, dict] = {}
    weyl: dict[str, dict] = {}
    for (a, b) in sorted(C.chevalley):
        cheva.setdefault(key(a), {})[key(b)] = SignSqrt(C.chevalley[(a, b)]).to_json()
        weyl.setdefault(key(a), {})[key(b)] = C.weyl[(a, b)].to_json()
    return {
        "type": C.R.name,
        "roots": [list(r) for r in C.R.roots],
        "chevalley": cheva,
        "weyl": weyl,
        "kappa": {key(r): str(1 / C.scale2[r]) for r in C.R.roots} if C.scale2 else {},
    }
