"""Combinatorial data of a degree-n cover: the invariant quadratic form, the
sublattice it cuts out of the cocharacter lattice, the rescaled dual root
datum, and the finite center groups.

The quadratic form Q is determined by one integer, its value on short coroots;
Weyl invariance forces Q(alpha^vee) = q_short * (squared-length ratio) on the
other coroot lengths.  The bilinear form B(y,z) = Q(y+z) - Q(y) - Q(z) then
satisfies B(alpha^vee, y) = Q(alpha^vee) <alpha, y>, which pins down its Gram
matrix on the coroot basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exact_algebra import IntMatrix, hermite_row_basis, smith_normal_form
from .root_datum import CartanSpec, Root, RootDatum

__all__ = [
    "Lattice",
    "FiniteAbelianGroup",
    "CoverDatum",
    "build_cover",
    "is_oasitic",
    "lattice_is_scaled",
    "center_group",
    "heart_center_group",
    "oasitic_condition",
    "oasitic_condition_text",
    "first_oasitic_values",
]


@dataclass(frozen=True)
class Lattice:
    """Full-rank sublattice of Z^r in canonical (Hermite) form.

    ``basis_rows`` are the basis vectors, one per row, in row-Hermite form, so
    two lattices are equal iff the dataclasses are equal.
    """

    basis_rows: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_generators(rows) -> "Lattice":
        basis = hermite_row_basis([list(r) for r in rows])
        if len(basis) != len(basis[0] if basis else []):
            raise ValueError("generators do not span a full-rank lattice")
        return Lattice(tuple(tuple(r) for r in basis))

    @staticmethod
    def standard(rank: int, scale: int = 1) -> "Lattice":
        return Lattice(tuple(tuple(scale if j == i else 0 for j in range(rank))
                             for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.basis_rows)

    @property
    def index_in_standard(self) -> int:
        out = 1
        for i in range(self.rank):
            out *= self.basis_rows[i][i]
        return out

    def coordinates_of(self, vector) -> tuple[int, ...] | None:
        """Integer coordinates of ``vector`` in this basis, or None if outside.

        Rows are upper triangular with pivots on the diagonal, so coordinates
        resolve by forward substitution.
        """
        v = list(vector)
        coeffs = [0] * self.rank
        for i in range(self.rank):
            piv = self.basis_rows[i][i]
            if v[i] % piv != 0:
                return None
            c = v[i] // piv
            coeffs[i] = c
            v = [x - c * b for x, b in zip(v, self.basis_rows[i])]
        return tuple(coeffs) if all(x == 0 for x in v) else None

    def contains(self, vector) -> bool:
        return self.coordinates_of(vector) is not None

    def sum(self, other: "Lattice") -> "Lattice":
        return Lattice.from_generators(list(self.basis_rows) + list(other.basis_rows))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant-factor form: factors each >= 2, each dividing the next."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("divisibility chain violated")

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors


TRIVIAL_GROUP = FiniteAbelianGroup(())

# squared-length ratio long/short coroot per letter
_RATIO = {"A": 1, "D": 1, "E": 1, "B": 2, "C": 2, "F": 2, "G": 3}


@dataclass(frozen=True)
class CoverDatum:
    base: RootDatum
    n: int
    q_short: int
    gram: IntMatrix                      # B on the coroot basis
    n_alpha: tuple[int, ...]             # rescaling of each simple coroot
    lattice: Lattice                     # the sublattice cut out mod n
    sc_lattice: Lattice                  # span of the rescaled simple coroots

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def name(self) -> str:
        return f"{self.base.spec.name}(n={self.n})"

    def q_value(self, root: Root) -> int:
        return self.q_short * root.coroot_ratio

    def n_alpha_of(self, root: Root) -> int:
        return self.n // gcd(self.n, self.q_value(root))

    def bilinear(self, y, z) -> int:
        g = self.gram
        r = self.rank
        return sum(y[i] * g[i, j] * z[j] for i in range(r) for j in range(r))

    def rescaled_simple_coroots(self) -> tuple[tuple[int, ...], ...]:
        r = self.rank
        return tuple(tuple(self.n_alpha[i] if j == i else 0 for j in range(r))
                     for i in range(r))


def build_cover(base: RootDatum, n: int, q_short: int = 1) -> CoverDatum:
    """Assemble the cover's lattice data for the W-invariant form with the given
    short-coroot value.

    The sublattice {y : B(y, z) in nZ for all z} is the mod-n kernel of the Gram
    matrix, computed through Smith normal form and stored in Hermite form.
    """
    if n < 1 or q_short < 1:
        raise ValueError("n and q_short must be positive integers")
    r = base.rank
    C = base.cartan
    ratios = [a.coroot_ratio for a in base.simple_roots]
    gram = IntMatrix.from_rows(
        [[q_short * ratios[i] * C[i, j] for j in range(r)] for i in range(r)]
    )
    if gram != gram.transpose():
        raise AssertionError("Gram matrix must be symmetric")

    snf = smith_normal_form(gram)
    # gram*y = 0 mod n  <=>  z = V^{-1} y has d_i z_i = 0 mod n; basis vectors are
    # V applied to (n/gcd(d_i, n)) e_i
    scales = [n // gcd(d, n) if d != 0 else 1 for d in snf.divisors]
    cols = [tuple(snf.V[i, j] * scales[j] for i in range(r)) for j in range(r)]
    lattice = Lattice.from_generators(cols)

    n_alpha = tuple(n // gcd(n, q_short * ratios[i]) for i in range(r))
    sc = Lattice.from_generators(
        [[n_alpha[i] if j == i else 0 for j in range(r)] for i in range(r)]
    )

    cover = CoverDatum(base=base, n=n, q_short=q_short, gram=gram,
                       n_alpha=n_alpha, lattice=lattice, sc_lattice=sc)
    _check_cover(cover)
    return cover


def _check_cover(cover: CoverDatum) -> None:
    r = cover.rank
    # the lattice really is the mod-n kernel, on its basis
    for row in cover.lattice.basis_rows:
        img = cover.gram.apply(row)
        if any(x % cover.n for x in img):
            raise AssertionError("lattice basis vector fails the congruence")
    # W-stability on generators
    for i in range(r):
        m = cover.base.reflections[i]
        for row in cover.lattice.basis_rows:
            image = tuple(sum(m[a][k] * row[k] for k in range(r)) for a in range(r))
            if not cover.lattice.contains(image):
                raise AssertionError("lattice is not Weyl-stable")
    # nY inside the lattice, rescaled coroots inside the lattice
    for v in Lattice.standard(r, cover.n).basis_rows:
        if not cover.lattice.contains(v):
            raise AssertionError("nY is not contained in the lattice")
    for v in cover.rescaled_simple_coroots():
        if not cover.lattice.contains(v):
            raise AssertionError("rescaled coroot outside the lattice")


def lattice_is_scaled(cover: CoverDatum) -> bool:
    """Whether the cover's lattice is exactly n * Y (Hermite-form equality)."""
    return cover.lattice == Lattice.standard(cover.rank, cover.n)


def is_oasitic(cover: CoverDatum) -> bool:
    """The tabulated arithmetic condition for the cover to be oasitic.

    The condition implies the lattice equality Y_{Q,n} = n*Y, which is verified
    here on every positive answer; the converse fails for exceptional types at
    finitely many residues (E6 with n = 2 is the smallest case), so the lattice
    equality alone is not the predicate.
    """
    if cover.q_short != 1:
        raise ValueError("the oasitic predicate is defined for q_short = 1")
    verdict = oasitic_condition(cover.base.spec, cover.n)
    if verdict and not lattice_is_scaled(cover):
        raise AssertionError(
            f"{cover.name}: tabulated condition holds but the lattice is not n*Y"
        )
    return verdict


def _quotient_factors(big: Lattice, small: Lattice) -> FiniteAbelianGroup:
    """Invariant factors of big/small for small a finite-index sublattice of big."""
    coords = []
    for row in small.basis_rows:
        c = big.coordinates_of(row)
        if c is None:
            raise ValueError("not a sublattice")
        coords.append(list(c))
    divisors = smith_normal_form(IntMatrix.from_rows(coords)).divisors
    if any(d == 0 for d in divisors):
        raise ValueError("quotient is not finite")
    return FiniteAbelianGroup(tuple(d for d in divisors if d > 1))


def center_group(cover: CoverDatum) -> FiniteAbelianGroup:
    """The finite dual-center: invariant factors of lattice / (rescaled coroot span)."""
    return _quotient_factors(cover.lattice, cover.sc_lattice)


def heart_center_group(cover: CoverDatum) -> FiniteAbelianGroup:
    """Invariant factors of lattice / (nY + rescaled coroot span)."""
    denom = cover.sc_lattice.sum(Lattice.standard(cover.rank, cover.n))
    return _quotient_factors(cover.lattice, denom)


def oasitic_condition(spec: CartanSpec, n: int) -> bool:
    """The tabulated arithmetic condition equivalent to the lattice equality."""
    if spec.letter == "A":
        return gcd(n, spec.rank + 1) == 1
    if spec.letter in ("B", "C", "D"):
        return n % 2 == 1
    if spec.letter in ("F", "G"):
        return n % 2 != 0 and n % 3 != 0
    if spec.letter == "E":
        if spec.rank in (6, 7):
            return n % 2 != 0 and n % 3 != 0
        return n % 2 != 0 and n % 3 != 0 and n % 5 != 0
    raise ValueError(spec.letter)


def oasitic_condition_text(spec: CartanSpec) -> str:
    if spec.letter == "A":
        return f"gcd(n, {spec.rank + 1}) = 1"
    if spec.letter in ("B", "C", "D"):
        return "n odd"
    if spec.letter == "E" and spec.rank == 8:
        return "2, 3, 5 do not divide n"
    return "2, 3 do not divide n"


def first_oasitic_values(spec: CartanSpec, count: int) -> tuple[int, ...]:
    """The first ``count`` positive n satisfying the cover's arithmetic condition."""
    out = []
    n = 1
    while len(out) < count:
        if oasitic_condition(spec, n):
            out.append(n)
        n += 1
    return tuple(out)
