"""Root systems of semisimple type, stored in simple-root coordinates.

A root is a tuple of integers giving its coefficients over the simple roots
of the whole (possibly reducible) system. Inner products come from the
symmetrized Cartan matrix, normalized per component so long roots have
squared length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg

Root = tuple[int, ...]
Permutation = tuple[int, ...]

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_CLASSICAL_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


class RootSystemError(ValueError):
    """Invalid Cartan-Killing type or malformed type string."""


class Opposite:
    """Marker returned by :func:`sum_root` when ``alpha + beta == 0``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OPPOSITE"

    def __bool__(self) -> bool:
        return False


OPPOSITE = Opposite()


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _VALID_RANKS:
            raise RootSystemError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not _VALID_RANKS[self.family](self.rank):
            raise RootSystemError(f"invalid rank {self.rank} for family {self.family}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def num_roots(self) -> int:
        return _CLASSICAL_COUNT[self.family](self.rank)

    def gram(self) -> list[list[Fraction]]:
        """Symmetrized Cartan matrix, Bourbaki numbering, long roots of length^2 2."""
        n = self.rank
        g = [[Fraction(0)] * n for _ in range(n)]

        def link(i, j, v):
            g[i][j] = g[j][i] = Fraction(v)

        fam = self.family
        if fam == "A":
            lengths = [2] * n
            for i in range(n - 1):
                link(i, i + 1, -1)
        elif fam == "B":
            lengths = [2] * (n - 1) + [1]
            for i in range(n - 1):
                link(i, i + 1, -1)
        elif fam == "C":
            lengths = [1] * (n - 1) + [2]
            for i in range(n - 2):
                link(i, i + 1, Fraction(-1, 2))
            link(n - 2, n - 1, -1)
        elif fam == "D":
            lengths = [2] * n
            for i in range(n - 2):
                link(i, i + 1, -1)
            link(n - 3, n - 1, -1)
        elif fam == "E":
            lengths = [2] * n
            link(0, 2, -1)
            link(1, 3, -1)
            for i in range(2, n - 1):
                link(i, i + 1, -1)
        elif fam == "F":
            lengths = [2, 2, 1, 1]
            link(0, 1, -1)
            link(1, 2, -1)
            link(2, 3, Fraction(-1, 2))
        else:  # G2, first simple root short
            lengths = [Fraction(2, 3), 2]
            link(0, 1, -1)
        for i in range(n):
            g[i][i] = Fraction(lengths[i])
        return g


_TYPE_RE = re.compile(r"^([A-Ga-g])(\d+)$")


def parse_type(name: str) -> tuple[SimpleType, ...]:
    """Parse compact names such as ``"A2"``, ``"b3"`` or ``"A1xA1xG2"``."""
    if not isinstance(name, str) or not name.strip():
        raise RootSystemError("empty type string")
    parts = re.split(r"[xX]", name.strip())
    out = []
    for part in parts:
        m = _TYPE_RE.match(part.strip())
        if not m:
            raise RootSystemError(f"cannot parse type component {part!r} in {name!r}")
        out.append(SimpleType(m.group(1).upper(), int(m.group(2))))
    return tuple(out)


def type_name(spec: Sequence[SimpleType]) -> str:
    return "x".join(str(t) for t in spec)


class RootSystem:
    """Immutable root system of a semisimple complex Lie algebra."""

    def __init__(self, spec: Sequence[SimpleType]):
        spec = tuple(spec)
        if not spec:
            raise RootSystemError("a root system needs at least one simple component")
        self.spec = spec
        self.name = type_name(spec)
        n = sum(t.rank for t in spec)
        self.rank = n
        gram = [[Fraction(0)] * n for _ in range(n)]
        component = []
        offset = 0
        for c, t in enumerate(spec):
            block = t.gram()
            for i in range(t.rank):
                for j in range(t.rank):
                    gram[offset + i][offset + j] = block[i][j]
            component.extend([c] * t.rank)
            offset += t.rank
        self.gram = tuple(tuple(row) for row in gram)
        self.component = tuple(component)
        # cartan[i][j] = <a_i, a_j^vee> = 2 (a_i, a_j) / (a_j, a_j)
        self.cartan = tuple(
            tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(n)) for i in range(n)
        )
        self.base: tuple[Root, ...] = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )
        self.roots: tuple[Root, ...] = tuple(sorted(self._reflection_closure()))
        self.root_set = frozenset(self.roots)
        self.index = {r: k for k, r in enumerate(self.roots)}
        self.positives: tuple[Root, ...] = tuple(r for r in self.roots if max(r) > 0)
        self.positive_set = frozenset(self.positives)
        self._weyl_cache: dict[tuple[int, ...], list[Permutation]] = {}

    def __repr__(self) -> str:
        return f"RootSystem({self.name!r})"

    def pairing(self, beta: Root, i: int) -> int:
        """``<beta, a_i^vee>`` for the i-th simple coroot."""
        return sum(b * self.cartan[j][i] for j, b in enumerate(beta) if b)

    def simple_reflection(self, i: int, beta: Root) -> Root:
        c = self.pairing(beta, i)
        if c == 0:
            return beta
        return tuple(b - c if j == i else b for j, b in enumerate(beta))

    def _reflection_closure(self) -> set[Root]:
        seen = set(self.base)
        frontier = list(self.base)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self.simple_reflection(i, r)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return seen

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        if len(a) != self.rank or len(b) != self.rank:
            raise ValueError(f"dimension mismatch: expected vectors of length {self.rank}")
        g = self.gram
        return sum(
            (g[i][j] * x * y for i, x in enumerate(a) if x for j, y in enumerate(b) if y),
            Fraction(0),
        )

    def norm2(self, a: Sequence) -> Fraction:
        return self.inner(a, a)

    def reflect(self, alpha: Root, beta: Root) -> Root:
        """``s_alpha(beta) = beta - 2 (alpha, beta) / (alpha, alpha) alpha``."""
        c = 2 * self.inner(alpha, beta) / self.norm2(alpha)
        if c.denominator != 1:
            raise ValueError("non-integral reflection coefficient")
        k = int(c)
        return tuple(b - k * a for a, b in zip(alpha, beta))

    def is_root(self, v: Iterable[int]) -> bool:
        return tuple(v) in self.root_set

    def height(self, root: Root) -> int:
        return sum(root)

    def highest_root(self) -> Root:
        return max(self.positives, key=lambda r: (sum(r), r))

    def string_below(self, alpha: Root, beta: Root) -> int:
        """``p = max{k : beta - k alpha in R}``."""
        p = 0
        while tuple(b - (p + 1) * a for a, b in zip(alpha, beta)) in self.root_set:
            p += 1
        return p

    def weyl_group(self, simple_indices: Iterable[int] | None = None) -> list[Permutation]:
        """Weyl group (or a parabolic subgroup) as permutations of ``self.roots``.

        Identity first, then breadth-first order in the simple generators.
        """
        key = tuple(sorted(set(range(self.rank) if simple_indices is None else simple_indices)))
        if key in self._weyl_cache:
            return self._weyl_cache[key]
        gens = [
            tuple(self.index[self.simple_reflection(i, r)] for r in self.roots) for i in key
        ]
        ident = tuple(range(len(self.roots)))
        seen = {ident}
        order = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    sw = tuple(s[k] for k in w)
                    if sw not in seen:
                        seen.add(sw)
                        order.append(sw)
                        nxt.append(sw)
            frontier = nxt
        self._weyl_cache[key] = order
        return order

    def act(self, w: Permutation, roots: Iterable[Root]) -> frozenset[Root]:
        return frozenset(self.roots[w[self.index[r]]] for r in roots)


@lru_cache(maxsize=None)
def _build(spec: tuple[SimpleType, ...]) -> RootSystem:
    return RootSystem(spec)


def build_root_system(spec: "str | Sequence[SimpleType]") -> RootSystem:
    """Build (and cache) the root system for a type string or list of components."""
    if isinstance(spec, str):
        spec = parse_type(spec)
    return _build(tuple(spec))


def inner(R: RootSystem, alpha: Root, beta: Root) -> Fraction:
    return R.inner(alpha, beta)


def sum_root(R: RootSystem, alpha: Root, beta: Root) -> "Root | Opposite | None":
    """``alpha + beta`` if it is a root, :data:`OPPOSITE` if it is zero, else ``None``."""
    s = tuple(a + b for a, b in zip(alpha, beta))
    if not any(s):
        return OPPOSITE
    return s if s in R.root_set else None


def is_closed(R: RootSystem, subset: Iterable[Root]) -> bool:
    """True iff ``a, b in S`` and ``a + b in R`` imply ``a + b in S``."""
    S = frozenset(subset)
    for a in S:
        for b in S:
            s = tuple(x + y for x, y in zip(a, b))
            if s in R.root_set and s not in S:
                return False
    return True


def is_positive_system(R: RootSystem, subset: Iterable[Root]) -> bool:
    """Closed, and partitions ``R`` together with its negative."""
    P = frozenset(subset)
    neg = frozenset(tuple(-x for x in r) for r in P)
    return not (P & neg) and (P | neg) == R.root_set and is_closed(R, P)


def weyl_group(R: RootSystem) -> list[Permutation]:
    return R.weyl_group()


def positive_systems(R: RootSystem) -> list[frozenset[Root]]:
    """All positive systems, as the Weyl orbit of ``R.positives``."""
    out = []
    seen = set()
    for w in R.weyl_group():
        P = R.act(w, R.positives)
        if P not in seen:
            seen.add(P)
            out.append(P)
    return out


def brute_force_positive_systems(R: RootSystem) -> list[frozenset[Root]]:
    """Every sign choice on ``{alpha, -alpha}`` pairs filtered by the definition."""
    pairs = R.positives
    out = []
    for mask in range(1 << len(pairs)):
        P = frozenset(
            r if not (mask >> k) & 1 else tuple(-x for x in r) for k, r in enumerate(pairs)
        )
        if is_positive_system(R, P):
            out.append(P)
    return out


def simple_roots_of(R: RootSystem, positive: Iterable[Root]) -> tuple[Root, ...]:
    """Indecomposable elements of a positive system, in lexicographic order."""
    P = frozenset(positive)
    decomposable = set()
    for a, b in combinations(sorted(P), 2):
        s = tuple(x + y for x, y in zip(a, b))
        if s in P:
            decomposable.add(s)
    simple = tuple(sorted(P - decomposable))
    if len(simple) != R.rank:
        raise ValueError("subset is not a positive system")
    return simple


def heights(R: RootSystem, positive: Iterable[Root]) -> dict[Root, int]:
    """Height of every root of ``R`` relative to the base of ``positive``."""
    simple = simple_roots_of(R, positive)
    # columns of M are the new simple roots in old coordinates
    m = [[simple[j][i] for j in range(R.rank)] for i in range(R.rank)]
    inv = linalg.inverse(m)
    out = {}
    for r in R.roots:
        coeffs = linalg.mat_vec(inv, r)
        h = sum(coeffs)
        if h.denominator != 1:
            raise ValueError("non-integral height; base computation is inconsistent")
        out[r] = int(h)
    return out


def neg(root: Root) -> Root:
    return tuple(-x for x in root)


def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))
