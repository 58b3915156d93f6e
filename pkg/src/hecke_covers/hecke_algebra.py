"""Affine Iwahori-Hecke algebra of a cover's extended affine Weyl group.

The algebra lives over Laurent polynomials in v (v**2 = q), in the natural
basis {T_w} indexed by group elements, with the usual deformed multiplication

    T_s * T_w = T_{sw}               if the (rescaled) length goes up,
    T_s * T_w = q T_{sw} + (q-1) T_w otherwise,

for Coxeter generators s.  Translation elements t_y in the commutative
subalgebra are normalized products E_{y1} E_{y2}^{-1} over a dominant
decomposition y = y1 - y2.  One-dimensional characters send every generator to
q or -1, constant on odd-braid classes of the affine diagram; length-zero
elements act trivially.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .affine_weyl import (
    AffineElement,
    AffineGeneratorSet,
    generator_set,
    rescaled_length,
)
from .cover_datum import CoverDatum, is_oasitic, oasitic_condition_text
from .exact_algebra import LAURENT_ONE, LaurentPoly

__all__ = [
    "HeckeElement",
    "HeckeCharacter",
    "HeckeAlgebra",
    "discrete_series_characters",
    "one_dimensional_characters",
    "NotOasiticError",
]

_Q = LaurentPoly.q_power(1)
_QINV = LaurentPoly.q_power(-1)
_QM1 = _Q - LAURENT_ONE       # q - 1
_QINVM1 = _QINV - LAURENT_ONE  # q^-1 - 1


class NotOasiticError(ValueError):
    """Raised when an operation defined only for oasitic covers gets another."""


def _element_key(w: AffineElement):
    return (w.translation, w.matrix)


@dataclass(frozen=True)
class HeckeElement:
    """Finitely supported sum of basis elements with Laurent coefficients."""

    terms: tuple[tuple[AffineElement, LaurentPoly], ...]

    @staticmethod
    def from_dict(coeffs: dict[AffineElement, LaurentPoly]) -> "HeckeElement":
        cleaned = [(w, c) for w, c in coeffs.items() if not c.is_zero()]
        cleaned.sort(key=lambda wc: _element_key(wc[0]))
        return HeckeElement(tuple(cleaned))

    def coefficient(self, w: AffineElement) -> LaurentPoly:
        for u, c in self.terms:
            if u == w:
                return c
        return LaurentPoly()

    def support(self) -> tuple[AffineElement, ...]:
        return tuple(w for w, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        acc = {w: c for w, c in self.terms}
        for w, c in other.terms:
            acc[w] = acc.get(w, LaurentPoly()) + c
        return HeckeElement.from_dict(acc)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(LaurentPoly.constant(-1))

    def scale(self, poly: LaurentPoly) -> "HeckeElement":
        return HeckeElement.from_dict({w: c * poly for w, c in self.terms})


@dataclass(frozen=True)
class HeckeCharacter:
    """One-dimensional character: q or -1 on each affine Coxeter generator.

    ``generator_signs[i]`` is +1 when the character sends generator i to q and
    -1 when it sends it to -1 (finite nodes first, the affine node last).  The
    signs are constant on odd-braid classes, which is exactly the condition for
    the character to exist.
    """

    label: str
    generator_signs: tuple[int, ...]
    is_discrete_series: bool

    def xi(self, gen_index: int) -> int:
        return self.generator_signs[gen_index]

    def generator_value(self, gen_index: int) -> LaurentPoly:
        return _Q if self.generator_signs[gen_index] == 1 else LaurentPoly.constant(-1)

    @property
    def is_steinberg(self) -> bool:
        return all(s == -1 for s in self.generator_signs)


class HeckeAlgebra:
    """Multiplication engine bound to one cover.

    Reduced words come from a lazily grown breadth-first table over the Coxeter
    generators; every product decomposes through them plus a length-zero
    factor.
    """

    def __init__(self, cover: CoverDatum):
        self.cover = cover
        self.gens: AffineGeneratorSet = generator_set(cover)
        r = cover.rank
        self._identity = AffineElement.identity(r)
        self._words: dict[AffineElement, tuple[int, ...]] = {self._identity: ()}
        self._frontier: list[AffineElement] = [self._identity]
        self._depth = 0
        self._length_cache: dict[AffineElement, int] = {self._identity: 0}
        self._omega_inverses = tuple(om.inverse() for om in self.gens.omega)

    # -- bookkeeping ------------------------------------------------------

    def length(self, w: AffineElement) -> int:
        cached = self._length_cache.get(w)
        if cached is None:
            cached = rescaled_length(self.cover, w)
            self._length_cache[w] = cached
        return cached

    def _extend_words(self, depth: int) -> None:
        while self._depth < depth and self._frontier:
            fresh = []
            for e in self._frontier:
                word = self._words[e]
                for gi, g in enumerate(self.gens.all_generators):
                    e2 = e * g
                    if e2 not in self._words:
                        self._words[e2] = word + (gi,)
                        fresh.append(e2)
            self._frontier = fresh
            self._depth += 1

    def decompose(self, w: AffineElement) -> tuple[tuple[int, ...], int]:
        """Reduced word of the Coxeter part of w, and the index of its
        length-zero factor: w = (product of generators along the word) * omega."""
        sc = self.cover.sc_lattice
        omega_index = None
        for oi, om in enumerate(self.gens.omega):
            diff = tuple(a - b for a, b in zip(w.translation, om.translation))
            if sc.contains(diff):
                omega_index = oi
                break
        if omega_index is None:
            raise ValueError("element does not belong to the cover's group")
        x = w * self._omega_inverses[omega_index]
        self._extend_words(self.length(x))
        word = self._words.get(x)
        if word is None:
            raise AssertionError("breadth-first table failed to reach the element")
        return word, omega_index

    # -- basis elements ----------------------------------------------------

    def one(self) -> HeckeElement:
        return HeckeElement.from_dict({self._identity: LAURENT_ONE})

    def t(self, w: AffineElement) -> HeckeElement:
        return HeckeElement.from_dict({w: LAURENT_ONE})

    def t_translation(self, y) -> HeckeElement:
        return self.t(AffineElement.translation_by(tuple(y)))

    # -- multiplication ----------------------------------------------------

    def _mul_generator(self, acc: dict[AffineElement, LaurentPoly], gi: int) -> dict:
        g = self.gens.all_generators[gi]
        out: dict[AffineElement, LaurentPoly] = {}

        def add(w, c):
            if w in out:
                out[w] = out[w] + c
            else:
                out[w] = c

        for w, c in acc.items():
            wg = w * g
            if self.length(wg) > self.length(w):
                add(wg, c)
            else:
                add(wg, c * _Q)
                add(w, c * _QM1)
        return {w: c for w, c in out.items() if not c.is_zero()}

    def _mul_omega(self, acc: dict, omega_index: int) -> dict:
        if omega_index == 0:
            return acc
        om = self.gens.omega[omega_index]
        return {w * om: c for w, c in acc.items()}

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        total: dict[AffineElement, LaurentPoly] = {}
        a_dict = {w: c for w, c in a.terms}
        for w, coeff in b.terms:
            word, omega_index = self.decompose(w)
            acc = dict(a_dict)
            for gi in word:
                acc = self._mul_generator(acc, gi)
            acc = self._mul_omega(acc, omega_index)
            for u, c in acc.items():
                prod = c * coeff
                total[u] = total.get(u, LaurentPoly()) + prod
        return HeckeElement.from_dict(total)

    def _mul_generator_inverse(self, acc: dict, gi: int) -> dict:
        # X * T_s^{-1} = q^{-1} (X * T_s) + (q^{-1} - 1) X
        stepped = self._mul_generator(acc, gi)
        out = {w: c * _QINV for w, c in stepped.items()}
        for w, c in acc.items():
            out[w] = out.get(w, LaurentPoly()) + c * _QINVM1
        return {w: c for w, c in out.items() if not c.is_zero()}

    def invert_basis_element(self, w: AffineElement) -> HeckeElement:
        """T_w^{-1}, via T_s^{-1} = q^{-1} T_s + (q^{-1} - 1) along a reduced word."""
        word, omega_index = self.decompose(w)
        acc = {self._omega_inverses[omega_index]: LAURENT_ONE}
        for gi in reversed(word):
            acc = self._mul_generator_inverse(acc, gi)
        return HeckeElement.from_dict(acc)

    # -- translation subalgebra ---------------------------------------------

    def _dominant_shift(self) -> tuple[int, ...]:
        """A short strictly dominant vector of the lattice, used to push
        arbitrary translations into the dominant cone.

        Searched over small combinations of the lattice basis; n times the sum
        of positive coroots is the guaranteed fallback.
        """
        cached = getattr(self, "_shift", None)
        if cached is not None:
            return cached
        r = self.cover.rank
        simple = self.cover.base.simple_roots
        best = None
        if r <= 4:
            # strictly dominant vectors have positive coroot coordinates, so a
            # small positive box suffices at these ranks
            import itertools as _it

            for coeffs in _it.product(range(1, 3 * self.cover.n + 1), repeat=r):
                if not self.cover.lattice.contains(coeffs):
                    continue
                if all(a.pair(coeffs) > 0 for a in simple):
                    height = sum(a.pair(coeffs) for a in self.cover.base.positive_roots)
                    if best is None or (height, coeffs) < best:
                        best = (height, coeffs)
        if best is None:
            two_rho_check = [0] * r
            for a in self.cover.base.positive_roots:
                for i in range(r):
                    two_rho_check[i] += a.coroot[i]
            best = (0, tuple(self.cover.n * x for x in two_rho_check))
        self._shift = best[1]
        return self._shift

    def _is_dominant(self, y) -> bool:
        return all(a.pair(y) >= 0 for a in self.cover.base.simple_roots)

    def bernstein_t(self, y) -> HeckeElement:
        """Normalized translation element for y in the cover's lattice.

        Uses y = y1 - y2 with both parts dominant; the result does not depend
        on the decomposition (tested), and the normalization exponent is
        -2<y, rho_rescaled>, an even or odd power of v but always an integer one.
        """
        y = tuple(y)
        if not self.cover.lattice.contains(y):
            raise ValueError("translation lies outside the cover's lattice")
        shift = self._dominant_shift()
        k = 0
        while not self._is_dominant(tuple(a + k * b for a, b in zip(y, shift))):
            k += 1
        y1 = tuple(a + k * b for a, b in zip(y, shift))
        y2 = tuple(k * b for b in shift)
        return self._bernstein_from_parts(y, y1, y2)

    def _bernstein_from_parts(self, y, y1, y2) -> HeckeElement:
        if not (self._is_dominant(y1) and self._is_dominant(y2)):
            raise ValueError("both parts of the decomposition must be dominant")
        exponent = -2 * self._rho_rescaled_pairing(y)
        if exponent.denominator != 1:
            raise AssertionError("rescaled rho pairing must be a half-integer")
        e1 = self.t_translation(y1)
        e2_inv = self.invert_basis_element(AffineElement.translation_by(tuple(y2)))
        return self.multiply(e1, e2_inv).scale(LaurentPoly.v_power(int(exponent)))

    def _rho_rescaled_pairing(self, y) -> Fraction:
        total = Fraction(0)
        for a in self.cover.base.positive_roots:
            total += Fraction(a.pair(y), self.cover.n_alpha_of(a))
        return total / 2

    # -- characters ----------------------------------------------------------

    def character_value(self, chi: HeckeCharacter, w: AffineElement) -> LaurentPoly:
        """Value of the one-dimensional character on T_w: product of generator
        values along a reduced word, trivially on the length-zero part."""
        word, _ = self.decompose(w)
        sign = 1
        qexp = 0
        for gi in word:
            if chi.generator_signs[gi] == 1:
                qexp += 1
            else:
                sign = -sign
        return LaurentPoly.v_power(2 * qexp, sign)


def _validate_signs(gens: AffineGeneratorSet, signs) -> None:
    for cls in gens.odd_classes:
        vals = {signs[i] for i in cls}
        if len(vals) > 1:
            raise ValueError("character not constant on an odd-braid class")


def _character(gens: AffineGeneratorSet, signs, label, discrete) -> HeckeCharacter:
    signs = tuple(signs)
    _validate_signs(gens, signs)
    return HeckeCharacter(label=label, generator_signs=signs, is_discrete_series=discrete)


def _class_adjacency(gens: AffineGeneratorSet, c1: int, c2: int) -> bool:
    """Whether two odd-braid classes share a bond (braid order > 2 or infinite)."""
    for i in gens.odd_classes[c1]:
        for j in gens.odd_classes[c2]:
            m = gens.braid_orders[i][j]
            if m == 0 or m > 2:
                return True
    return False


@lru_cache(maxsize=None)
def discrete_series_characters(cover: CoverDatum) -> tuple[HeckeCharacter, ...]:
    """The one-dimensional characters whose module is square-integrable, for an
    oasitic cover: the sign character plus the per-type exceptional patterns.

    Patterns (q goes on whole odd-braid classes, everything else is -1):

    * A, D, E: sign character only;
    * B_r, r >= 3 (two classes): q on the class of the short-node generator;
    * B_2 and C_r (three classes, a chain): q on the affine-end class, or q on
      the finite-end class, and for C_r with r >= 4 also q on both ends;
    * F_4, G_2 (two classes): q on the class away from the affine node.
    """
    if not is_oasitic(cover):
        raise NotOasiticError(
            f"{cover.name} is not oasitic (requires {oasitic_condition_text(cover.base.spec)})"
        )
    gens = generator_set(cover)
    nodes = len(gens.all_generators)
    letter = cover.base.spec.letter
    rank = cover.base.spec.rank
    steinberg = _character(gens, (-1,) * nodes, "steinberg", True)
    out = [steinberg]

    def with_q_on(classes, label):
        signs = [-1] * nodes
        for ci in classes:
            for i in gens.odd_classes[ci]:
                signs[i] = 1
        out.append(_character(gens, signs, label, True))

    if letter in ("A", "D", "E"):
        pass
    elif (letter, rank) == ("B", 2) or letter == "C":
        aff = next(ci for ci, cls in enumerate(gens.odd_classes) if gens.affine_index in cls)
        others = [ci for ci in range(len(gens.odd_classes)) if ci != aff]
        # chain shape: affine end -- middle -- finite end
        mid = next(ci for ci in others if _class_adjacency(gens, ci, aff))
        end = next(ci for ci in others if ci != mid)
        if _class_adjacency(gens, end, aff) or not _class_adjacency(gens, end, mid):
            raise AssertionError("expected a three-class chain with the affine node at an end")
        with_q_on([aff], "sigma1")
        with_q_on([end], "sigma2")
        if rank >= 4:
            with_q_on([aff, end], "sigma3")
    elif letter in ("B", "F", "G"):
        aff = next(ci for ci, cls in enumerate(gens.odd_classes) if gens.affine_index in cls)
        others = [ci for ci in range(len(gens.odd_classes)) if ci != aff]
        if len(others) != 1:
            raise AssertionError("expected a two-class diagram")
        with_q_on(others, "sigma1")
    return tuple(out)


@lru_cache(maxsize=None)
def one_dimensional_characters(cover: CoverDatum) -> tuple[HeckeCharacter, ...]:
    """Every one-dimensional character of the algebra, discrete or not."""
    gens = generator_set(cover)
    nodes = len(gens.all_generators)
    try:
        discrete = {c.generator_signs for c in discrete_series_characters(cover)}
        discrete_labels = {c.generator_signs: c.label for c in discrete_series_characters(cover)}
    except NotOasiticError:
        discrete = set()
        discrete_labels = {}
    out = []
    nclasses = len(gens.odd_classes)
    for mask in range(2 ** nclasses):
        signs = [-1] * nodes
        qclasses = []
        for ci in range(nclasses):
            if (mask >> ci) & 1:
                qclasses.append(ci)
                for i in gens.odd_classes[ci]:
                    signs[i] = 1
        signs = tuple(signs)
        if signs in discrete_labels:
            label = discrete_labels[signs]
        elif all(s == -1 for s in signs):
            label = "steinberg"
        elif all(s == 1 for s in signs):
            label = "trivial"
        else:
            label = "q:" + "+".join(gens.labels[i] for i in range(nodes) if signs[i] == 1)
        out.append(HeckeCharacter(label=label, generator_signs=signs,
                                  is_discrete_series=signs in discrete))
    out.sort(key=lambda c: (sum(1 for s in c.generator_signs if s == 1), c.generator_signs))
    return tuple(out)
