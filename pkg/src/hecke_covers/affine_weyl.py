"""The modified extended affine Weyl group: translations from the cover's
lattice, semidirect with the finite Weyl group, carrying two length functions.

``base_length`` counts separating walls of the unrescaled affine arrangement;
``rescaled_length`` does the same after dividing each root by its rescaling
integer, and is the word length of the Coxeter structure used everywhere else
(generators, reduced words, the Hecke algebra).  Elements of length zero form
the finite subgroup Omega, isomorphic to lattice / (rescaled coroot span).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal

from .cover_datum import CoverDatum, build_cover
from .exact_algebra import IntMatrix
from .root_datum import RootDatum, enumerate_weyl_group

__all__ = [
    "AffineElement",
    "AffineGeneratorSet",
    "BallElement",
    "base_length",
    "rescaled_length",
    "generator_set",
    "enumerate_ball",
]


@dataclass(frozen=True)
class AffineElement:
    """Group element (y, s): translation by y followed after the linear part s.

    The group law is (y1, s1)(y2, s2) = (y1 + s1 y2, s1 s2).
    """

    translation: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @staticmethod
    def identity(rank: int) -> "AffineElement":
        return AffineElement((0,) * rank,
                             tuple(tuple(1 if i == j else 0 for j in range(rank))
                                   for i in range(rank)))

    @staticmethod
    def translation_by(y) -> "AffineElement":
        r = len(y)
        return AffineElement(tuple(y),
                             tuple(tuple(1 if i == j else 0 for j in range(r))
                                   for i in range(r)))

    @property
    def rank(self) -> int:
        return len(self.translation)

    @property
    def is_identity(self) -> bool:
        r = self.rank
        return all(v == 0 for v in self.translation) and all(
            self.matrix[i][j] == (1 if i == j else 0) for i in range(r) for j in range(r)
        )

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        r = self.rank
        m1, m2 = self.matrix, other.matrix
        y = tuple(self.translation[i]
                  + sum(m1[i][k] * other.translation[k] for k in range(r))
                  for i in range(r))
        m = tuple(tuple(sum(m1[i][k] * m2[k][j] for k in range(r)) for j in range(r))
                  for i in range(r))
        return AffineElement(y, m)

    def inverse(self) -> "AffineElement":
        minv = IntMatrix.from_rows(self.matrix).inverse_unimodular()
        y = tuple(-x for x in minv.apply(self.translation))
        return AffineElement(y, tuple(tuple(minv.row(i)) for i in range(self.rank)))


@dataclass(frozen=True)
class _LengthTables:
    rows: tuple[tuple[int, ...], ...]
    nalphas: tuple[int, ...]
    sign: dict


@lru_cache(maxsize=None)
def _tables(cover: CoverDatum) -> _LengthTables:
    rows = tuple(a.pairing for a in cover.base.positive_roots)
    nalphas = tuple(cover.n_alpha_of(a) for a in cover.base.positive_roots)
    return _LengthTables(rows=rows, nalphas=nalphas, sign=cover.base.root_sign)


def _length(cover: CoverDatum, w: AffineElement, rescale: bool) -> int:
    tables = _tables(cover)
    sign = tables.sign
    y = w.translation
    m = w.matrix
    r = len(y)
    total = 0
    for row, na in zip(tables.rows, tables.nalphas):
        moved = tuple(sum(row[k] * m[k][j] for k in range(r)) for j in range(r))
        val = sum(row[k] * y[k] for k in range(r))
        if rescale and na != 1:
            if val % na:
                raise ValueError(
                    "translation pairs non-integrally with a rescaled root; "
                    "element does not belong to the cover's group"
                )
            val //= na
        total += abs(val) if sign[moved] > 0 else abs(val + 1)
    return total


def base_length(cover: CoverDatum, w: AffineElement) -> int:
    """Wall count of the unrescaled arrangement (the ambient length)."""
    return _length(cover, w, rescale=False)


def rescaled_length(cover: CoverDatum, w: AffineElement) -> int:
    """Wall count of the rescaled arrangement; the Coxeter word length."""
    return _length(cover, w, rescale=True)


@dataclass(frozen=True)
class AffineGeneratorSet:
    """Coxeter generators of the cover's group plus its length-zero subgroup.

    ``all_generators`` lists the finite simple reflections first (index i is
    node i+1) and the affine reflection last; ``odd_classes`` partitions those
    indices by odd braid order, and Omega is listed with the identity first.
    """

    cover: CoverDatum
    all_generators: tuple[AffineElement, ...]
    labels: tuple[str, ...]
    odd_classes: tuple[tuple[int, ...], ...]
    omega: tuple[AffineElement, ...]
    braid_orders: tuple[tuple[int, ...], ...]  # order of g_i g_j; 0 marks infinite

    @property
    def rank(self) -> int:
        return self.cover.rank

    @property
    def affine_index(self) -> int:
        return len(self.all_generators) - 1

    def class_of(self, gen_index: int) -> int:
        for ci, cls in enumerate(self.odd_classes):
            if gen_index in cls:
                return ci
        raise ValueError(gen_index)


def _highest_rescaled_root(cover: CoverDatum):
    """The positive root alpha whose rescaled form alpha/n_alpha is highest,
    with its coroot scaled by n_alpha."""
    base = cover.base
    best = None
    for a in base.positive_roots:
        na = cover.n_alpha_of(a)
        height = sum(
            Fraction(a.simple_coords[i] * cover.n_alpha[i], na) for i in range(base.rank)
        )
        if best is None or height > best[0]:
            best = (height, a, na)
    _, root, na = best
    return root, na


def _product_order(a: AffineElement, b: AffineElement, cap: int = 60) -> int | None:
    prod = a * b
    cur = prod
    for k in range(1, cap + 1):
        if cur.is_identity:
            return k
        cur = cur * prod
    return None


def _omega_elements(cover: CoverDatum, search_radius: int = 2) -> tuple[AffineElement, ...]:
    from .cover_datum import Lattice  # local import to avoid cycle noise
    from .exact_algebra import smith_normal_form

    r = cover.rank
    ident = AffineElement.identity(r)
    coords = []
    for row in cover.sc_lattice.basis_rows:
        c = cover.lattice.coordinates_of(row)
        if c is None:
            raise AssertionError("rescaled coroot span escapes the lattice")
        coords.append(list(c))
    snf = smith_normal_form(IntMatrix.from_rows(coords))
    vinv = snf.V.inverse_unimodular()
    gens = []
    for i, d in enumerate(snf.divisors):
        if d > 1:
            vec = vinv.row(i)
            lattice_vec = tuple(
                sum(vec[k] * cover.lattice.basis_rows[k][j] for k in range(r))
                for j in range(r)
            )
            gens.append((lattice_vec, d))
    if not gens:
        return (ident,)

    weyl = list(enumerate_weyl_group(cover.base))
    shifts = sorted(
        (tuple(sum(ks[i] * cover.sc_lattice.basis_rows[i][j] for i in range(r))
               for j in range(r))
         for ks in itertools.product(range(-search_radius, search_radius + 1), repeat=r)),
        key=lambda s: (sum(abs(x) for x in s), s),
    )
    out = [ident]
    for ks in itertools.product(*[range(d) for (_, d) in gens]):
        if all(k == 0 for k in ks):
            continue
        rep = tuple(sum(k * g[j] for k, (g, _) in zip(ks, gens)) for j in range(r))
        found = None
        for shift in shifts:
            y = tuple(a + b for a, b in zip(rep, shift))
            for w in weyl:
                cand = AffineElement(y, w.matrix)
                if rescaled_length(cover, cand) == 0:
                    found = cand
                    break
            if found:
                break
        if found is None:
            raise RuntimeError(
                "no length-zero representative found within the search radius; "
                "increase search_radius"
            )
        out.append(found)
    return tuple(out)


@lru_cache(maxsize=None)
def generator_set(cover: CoverDatum) -> AffineGeneratorSet:
    """Finite simple reflections, the affine reflection through the highest
    rescaled root, and the length-zero subgroup."""
    base = cover.base
    r = base.rank
    gens = [AffineElement((0,) * r, base.reflections[i]) for i in range(r)]
    theta, na = _highest_rescaled_root(cover)
    refl = tuple(
        tuple((1 if i == j else 0) - theta.coroot[i] * theta.pairing[j] for j in range(r))
        for i in range(r)
    )
    affine = AffineElement(tuple(-na * c for c in theta.coroot), refl)
    gens.append(affine)
    for g in gens:
        if rescaled_length(cover, g) != 1:
            raise AssertionError("generator does not have length one")

    labels = tuple(f"s{i + 1}" for i in range(r)) + ("s0",)
    parent = list(range(r + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    orders = [[1 if i == j else 0 for j in range(r + 1)] for i in range(r + 1)]
    for i in range(r + 1):
        for j in range(i + 1, r + 1):
            order = _product_order(gens[i], gens[j])
            orders[i][j] = orders[j][i] = 0 if order is None else order
            if order is not None and order % 2 == 1:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(r + 1):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(tuple(g) for g in sorted(groups.values()))

    return AffineGeneratorSet(
        cover=cover,
        all_generators=tuple(gens),
        labels=labels,
        odd_classes=classes,
        omega=_omega_elements(cover),
        braid_orders=tuple(tuple(row) for row in orders),
    )


@dataclass(frozen=True)
class BallElement:
    """One group element from a bounded enumeration, with both lengths, one
    reduced word for its Coxeter part (generator indices), the Omega extension,
    and letter counts per odd class."""

    element: AffineElement
    length_base: int
    length_rescaled: int
    word: tuple[int, ...]
    omega_index: int
    class_counts: tuple[int, ...]


def _coxeter_ball(cover: CoverDatum, gens: AffineGeneratorSet, radius: int):
    """BFS words for the Coxeter part: element -> (word, class_counts)."""
    nclasses = len(gens.odd_classes)
    ident = AffineElement.identity(cover.rank)
    found: dict[AffineElement, tuple[tuple[int, ...], tuple[int, ...]]] = {
        ident: ((), (0,) * nclasses)
    }
    frontier = [ident]
    depth = 0
    while frontier and depth < radius:
        depth += 1
        fresh = []
        for e in frontier:
            word, counts = found[e]
            for gi, g in enumerate(gens.all_generators):
                e2 = g * e
                if e2 not in found:
                    c2 = list(counts)
                    c2[gens.class_of(gi)] += 1
                    found[e2] = ((gi,) + word, tuple(c2))
                    fresh.append(e2)
        frontier = fresh
    return found


def enumerate_ball(
    cover: CoverDatum,
    radius: int,
    which: Literal["rescaled", "base"] = "rescaled",
) -> Iterator[BallElement]:
    """Yield every element of the cover's group with the selected length at most
    ``radius``, exactly once.

    For the rescaled length this is a breadth-first walk over the Coxeter
    generators inside each Omega coset (word length equals the formula length,
    which the tests cross-check).  For the base length, the walk runs in the
    ambient group (translations by the full cocharacter lattice) and keeps the
    elements whose translation lies in the cover's lattice; word data then
    refers to the ambient Coxeter system.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if which == "rescaled":
        gens = generator_set(cover)
        ball = _coxeter_ball(cover, gens, radius)
        for elem, (word, counts) in ball.items():
            for oi, om in enumerate(gens.omega):
                full = elem * om
                yield BallElement(
                    element=full,
                    length_base=base_length(cover, full),
                    length_rescaled=len(word),
                    word=word,
                    omega_index=oi,
                    class_counts=counts,
                )
    elif which == "base":
        ambient = build_cover(cover.base, 1, 1)
        agens = generator_set(ambient)
        ball = _coxeter_ball(ambient, agens, radius)
        for elem, (word, counts) in ball.items():
            if not cover.lattice.contains(elem.translation):
                continue
            yield BallElement(
                element=elem,
                length_base=len(word),
                length_rescaled=rescaled_length(cover, elem),
                word=word,
                omega_index=0,
                class_counts=counts,
            )
    else:
        raise ValueError(f"unknown length selector {which!r}")
