"""Split simply-connected root data and the finite Weyl group acting on the
cocharacter lattice.

Conventions, fixed once for the whole package:

* the cocharacter lattice Y is Z^r with the simple coroots as standard basis
  (simply-connected normalization), and roots are the linear functionals on Y
  recorded by their pairing vector (<alpha, e_1>, ..., <alpha, e_r>);
* the Cartan matrix C has C[i][j] = <alpha_i, alpha_j^vee>, Bourbaki numbering,
  so row i is the i-th simple root written in the coroot basis;
* a Weyl element acts on column vectors of Y, s_i(y) = y - <alpha_i, y> alpha_i^vee.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .exact_algebra import IntMatrix

__all__ = [
    "CartanSpec",
    "Root",
    "WeylElement",
    "RootDatum",
    "build_root_datum",
    "enumerate_weyl_group",
    "rho_pairing",
    "WeylOrderCapExceeded",
]

DEFAULT_WEYL_CAP = 10**6

_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


class WeylOrderCapExceeded(RuntimeError):
    """Raised when a full Weyl enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class CartanSpec:
    """An irreducible Cartan type: letter in A..G plus rank."""

    letter: str
    rank: int

    def __post_init__(self):
        if self.letter not in _VALID_RANKS:
            raise ValueError(f"unknown Cartan letter {self.letter!r}")
        if not isinstance(self.rank, int) or not _VALID_RANKS[self.letter](self.rank):
            raise ValueError(f"invalid rank {self.rank} for type {self.letter}")

    @property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"


def cartan_matrix(spec: CartanSpec) -> IntMatrix:
    r = spec.rank
    C = [[2 if i == j else 0 for j in range(r)] for i in range(r)]

    def bond(i, j, a=-1, b=-1):
        C[i][j] = a
        C[j][i] = b

    if spec.letter in ("A", "B", "C"):
        for i in range(r - 1):
            bond(i, i + 1)
        if spec.letter == "B":  # alpha_r short: <alpha_{r-1}, alpha_r^vee> = -2
            bond(r - 2, r - 1, -2, -1)
        if spec.letter == "C":  # alpha_r long
            bond(r - 2, r - 1, -1, -2)
    elif spec.letter == "D":
        for i in range(r - 2):
            bond(i, i + 1)
        bond(r - 3, r - 1)
    elif spec.letter == "G":  # alpha_1 short, alpha_2 long
        bond(0, 1, -1, -3)
    elif spec.letter == "F":  # alpha_1, alpha_2 long
        bond(0, 1)
        bond(1, 2, -2, -1)
        bond(2, 3)
    elif spec.letter == "E":
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, r)]
        for a, b in edges:
            bond(a - 1, b - 1)
    return IntMatrix.from_rows(C)


def _exponents(spec: CartanSpec) -> tuple[int, ...]:
    r = spec.rank
    if spec.letter == "A":
        return tuple(range(1, r + 1))
    if spec.letter in ("B", "C"):
        return tuple(range(1, 2 * r, 2))
    if spec.letter == "D":
        return tuple(sorted(list(range(1, 2 * r - 2, 2)) + [r - 1]))
    if spec.letter == "G":
        return (1, 5)
    if spec.letter == "F":
        return (1, 5, 7, 11)
    return {6: (1, 4, 5, 7, 8, 11),
            7: (1, 5, 7, 9, 11, 13, 17),
            8: (1, 7, 11, 13, 17, 19, 23, 29)}[r]


@dataclass(frozen=True)
class Root:
    """A root recorded three ways: coefficients over the simple roots, the
    pairing functional on Y, and its coroot in the coroot basis."""

    simple_coords: tuple[int, ...]
    pairing: tuple[int, ...]
    coroot: tuple[int, ...]
    coroot_ratio: int  # squared-length ratio of the coroot to a short coroot

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.simple_coords)

    @property
    def height(self) -> int:
        return sum(self.simple_coords)

    def pair(self, y) -> int:
        return sum(a * b for a, b in zip(self.pairing, y))


class WeylElement:
    """A finite Weyl group element: its matrix on Y plus cached word data.

    ``class_counts`` holds, for one reduced word, the number of letters drawn
    from each odd-braid class of simple reflections; those counts are
    independent of the chosen reduced word.
    """

    __slots__ = ("matrix", "length", "class_counts")

    def __init__(self, matrix, length, class_counts):
        self.matrix = matrix
        self.length = length
        self.class_counts = class_counts

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WeylElement(length={self.length})"

    @property
    def determinant(self) -> int:
        return -1 if self.length % 2 else 1

    def apply(self, y):
        m = self.matrix
        n = len(y)
        return tuple(sum(m[i][k] * y[k] for k in range(n)) for i in range(n))


def _braid_order(c_ij: int, c_ji: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[c_ij * c_ji]


def _odd_classes(cartan: IntMatrix) -> tuple[tuple[int, ...], ...]:
    r = cartan.rows
    parent = list(range(r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(r):
        for j in range(i + 1, r):
            if _braid_order(cartan[i, j], cartan[j, i]) % 2 == 1:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(r):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(g) for g in sorted(groups.values()))


@dataclass(frozen=True)
class RootDatum:
    spec: CartanSpec
    cartan: IntMatrix
    simple_roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    exponents: tuple[int, ...]
    weyl_order: int
    reflections: tuple[tuple[tuple[int, ...], ...], ...]  # matrices of the s_i
    odd_classes: tuple[tuple[int, ...], ...]  # odd-braid classes of simple nodes
    root_sign: dict[tuple[int, ...], int] = field(repr=False, hash=False, compare=False)

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    @property
    def simple_coroots(self) -> tuple[tuple[int, ...], ...]:
        r = self.rank
        return tuple(tuple(1 if j == i else 0 for j in range(r)) for i in range(r))

    @property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda a: a.height)

    def node_class(self, i: int) -> int:
        for ci, cls in enumerate(self.odd_classes):
            if i in cls:
                return ci
        raise ValueError(f"no such node {i}")

    def identity(self) -> WeylElement:
        r = self.rank
        m = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
        return WeylElement(m, 0, (0,) * len(self.odd_classes))

    def simple_reflection(self, i: int) -> WeylElement:
        counts = [0] * len(self.odd_classes)
        counts[self.node_class(i)] = 1
        return WeylElement(self.reflections[i], 1, tuple(counts))


def _reflection_matrix(cartan: IntMatrix, i: int) -> tuple[tuple[int, ...], ...]:
    r = cartan.rows
    # s_i(e_j) = e_j - C[i][j] e_i; columns are images of the basis
    rows = [[1 if a == b else 0 for b in range(r)] for a in range(r)]
    for j in range(r):
        rows[i][j] -= cartan[i, j]
    return tuple(tuple(row) for row in rows)


def _coroot_ratios(cartan: IntMatrix) -> list[int]:
    """Symmetrizer d_i (normalized to min 1): d_i*C[i][j] is symmetric, and d_i is
    the squared-length ratio of alpha_i^vee to the short coroots."""
    r = cartan.rows
    d: list[Fraction | None] = [None] * r
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(r):
            for j in range(r):
                if cartan[i, j] != 0 and d[i] is not None and d[j] is None:
                    d[j] = d[i] * Fraction(cartan[i, j], cartan[j, i])
                    changed = True
    if any(x is None for x in d):
        raise ValueError("Cartan matrix is not connected")
    lo = min(d)
    d = [x / lo for x in d]
    assert all(x.denominator == 1 for x in d)
    return [int(x) for x in d]


def build_root_datum(spec: CartanSpec) -> RootDatum:
    """Build the simply-connected root datum: closure of the simple roots under
    simple reflections, exponent table, Weyl order, and sign lookup."""
    C = cartan_matrix(spec)
    r = spec.rank
    ratios = _coroot_ratios(C)
    refls = tuple(_reflection_matrix(C, i) for i in range(r))

    def row_times(row, m):
        return tuple(sum(row[k] * m[k][j] for k in range(r)) for j in range(r))

    roots: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {}
    frontier = []
    for i in range(r):
        coords = tuple(1 if j == i else 0 for j in range(r))
        pairing = C.row(i)
        coroot = tuple(1 if j == i else 0 for j in range(r))
        roots[coords] = (pairing, coroot)
        frontier.append(coords)
    while frontier:
        fresh = []
        for coords in frontier:
            pairing, coroot = roots[coords]
            for i in range(r):
                nc = list(coords)
                nc[i] -= pairing[i]
                nc = tuple(nc)
                if nc not in roots:
                    m = refls[i]
                    roots[nc] = (row_times(pairing, m),
                                 tuple(sum(m[a][k] * coroot[k] for k in range(r)) for a in range(r)))
                    fresh.append(nc)
        frontier = fresh

    gram = [[ratios[i] * C[i, j] for j in range(r)] for i in range(r)]

    def coroot_ratio(coroot):
        norm = sum(coroot[i] * gram[i][j] * coroot[j] for i in range(r) for j in range(r))
        assert norm % 2 == 0
        return norm // 2

    all_roots = []
    for coords, (pairing, coroot) in roots.items():
        all_roots.append(Root(coords, pairing, coroot, coroot_ratio(coroot)))
    positive = tuple(sorted((a for a in all_roots if a.is_positive),
                            key=lambda a: (a.height, a.simple_coords)))
    sign = {a.pairing: (1 if a.is_positive else -1) for a in all_roots}

    exps = _exponents(spec)
    order = 1
    for m in exps:
        order *= m + 1
    if len(positive) != sum(exps):
        raise AssertionError("positive-root count disagrees with the exponent table")

    simple = tuple(sorted((a for a in positive if a.height == 1),
                          key=lambda a: a.simple_coords.index(1)))
    return RootDatum(
        spec=spec,
        cartan=C,
        simple_roots=simple,
        positive_roots=positive,
        exponents=exps,
        weyl_order=order,
        reflections=refls,
        odd_classes=_odd_classes(C),
        root_sign=sign,
    )


def enumerate_weyl_group(datum: RootDatum, cap: int = DEFAULT_WEYL_CAP) -> Iterator[WeylElement]:
    """Yield every Weyl element exactly once (BFS over simple reflections),
    with the correct Coxeter length and per-class letter counts."""
    if datum.weyl_order > cap:
        raise WeylOrderCapExceeded(
            f"|W| = {datum.weyl_order} for {datum.spec.name} exceeds the cap {cap}; "
            f"rerun with cap >= {datum.weyl_order}"
        )
    ident = datum.identity()
    seen = {ident.matrix: ident}
    yield ident
    frontier = [ident]
    nclasses = len(datum.odd_classes)
    while frontier:
        fresh = []
        for w in frontier:
            for i in range(datum.rank):
                m2 = _left_mul(datum.reflections[i], w.matrix)
                if m2 not in seen:
                    counts = list(w.class_counts)
                    counts[datum.node_class(i)] += 1
                    w2 = WeylElement(m2, w.length + 1, tuple(counts))
                    seen[m2] = w2
                    fresh.append(w2)
                    yield w2
        frontier = fresh
    if len(seen) != datum.weyl_order:
        raise AssertionError("generated group order disagrees with the exponent table")


def _left_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def rho_pairing(datum: RootDatum, y) -> Fraction:
    """<y, rho> = half the sum of <alpha, y> over positive roots, as an exact rational."""
    total = sum(a.pair(y) for a in datum.positive_roots)
    return Fraction(total, 2)
