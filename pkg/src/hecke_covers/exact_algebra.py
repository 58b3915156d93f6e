"""Exact arithmetic foundations: integer matrices, Smith normal form, Laurent polynomials.

Everything in this module is exact.  Matrices are over Z with arbitrary-precision
entries, Smith reduction uses only unimodular row/column operations, and Laurent
polynomials in the single variable ``v`` carry Fraction coefficients.  Floating
point never appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "LaurentPoly",
    "smith_normal_form",
    "solution_count_mod_n",
    "hermite_row_basis",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("need at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return IntMatrix(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        rows = []
        for i in range(self.rows):
            ri = self.row(i)
            rows.append(
                [sum(ri[k] * other.entries[k * other.cols + j] for k in range(self.cols))
                 for j in range(other.cols)]
            )
        return IntMatrix.from_rows(rows)

    def apply(self, vector) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(self.row(i)[k] * vector[k] for k in range(self.cols))
                     for i in range(self.rows))

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.determinant() in (1, -1)

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a unimodular matrix, computed exactly (still integral)."""
        n = self.rows
        if self.rows != self.cols:
            raise ValueError("not square")
        a = [[Fraction(x) for x in self.row(i)] + [Fraction(1 if j == i else 0) for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                raise ValueError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for i in range(n):
                if i != col and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        inv = [row[n:] for row in a]
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("matrix is not unimodular")
        return IntMatrix.from_rows([[int(x) for x in row] for row in inv])


@dataclass(frozen=True)
class SmithDecomposition:
    """U*M*V = D with U, V unimodular and D diagonal with a divisibility chain."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def divisors(self) -> tuple[int, ...]:
        k = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(k))


def smith_normal_form(matrix: IntMatrix) -> SmithDecomposition:
    """Smith normal form over Z.

    Pivoting always selects the entry of smallest nonzero absolute value in the
    remaining block (ties broken by position), so the transforms U and V are
    deterministic.  Diagonal entries come out nonnegative with d_i | d_{i+1}.
    """
    m, n = matrix.rows, matrix.cols
    a = matrix.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # euclidean clearing of column t then row t; restart on new remainders
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            culprit = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t] != 0:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(culprit, t, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return SmithDecomposition(IntMatrix.from_rows(U), IntMatrix.from_rows(a), IntMatrix.from_rows(V))


def solution_count_mod_n(matrix: IntMatrix, n: int) -> int:
    """Number of y in (Z/n)^r with M*y = 0 mod n, for square M.

    Equals the product of gcd(d_i, n) over the elementary divisors, where a
    zero divisor contributes n.
    """
    if matrix.rows != matrix.cols:
        raise ValueError("solution counting needs a square matrix")
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    count = 1
    for d in smith_normal_form(matrix).divisors:
        count *= n if d == 0 else gcd(d, n)
    return count


def hermite_row_basis(rows: list[list[int]]) -> list[list[int]]:
    """Canonical (row-style Hermite) basis of the lattice spanned by integer rows.

    Returns the nonzero rows of the Hermite normal form: echelon shape, positive
    pivots, entries above each pivot reduced to [0, pivot).  Two generating sets
    span the same lattice iff they produce identical output.
    """
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    pivot_row = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(pivot_row, len(a)) if a[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][col]), i))
            a[pivot_row], a[i0] = a[i0], a[pivot_row]
            done = True
            for i in range(pivot_row + 1, len(a)):
                if a[i][col] != 0:
                    q = a[i][col] // a[pivot_row][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
                    if a[i][col] != 0:
                        done = False
            if done:
                break
        if any(a[i][col] != 0 for i in range(pivot_row, len(a))):
            if a[pivot_row][col] < 0:
                a[pivot_row] = [-x for x in a[pivot_row]]
            for i in range(pivot_row):
                q = a[i][col] // a[pivot_row][col]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
            pivot_row += 1
            if pivot_row == len(a):
                break
    return [r for r in a[:pivot_row]]


_ZERO = Fraction(0)


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial in v with Fraction coefficients; v**2 plays the role of q.

    Stored as a sorted tuple of (exponent, coefficient) pairs with no zero
    coefficients, so equality and hashing are structural.
    """

    terms: tuple[tuple[int, Fraction], ...] = ()

    @staticmethod
    def from_dict(coeffs: dict[int, Fraction | int]) -> "LaurentPoly":
        cleaned = []
        for e, c in coeffs.items():
            c = Fraction(c)
            if c != 0:
                cleaned.append((int(e), c))
        return LaurentPoly(tuple(sorted(cleaned)))

    @staticmethod
    def constant(c) -> "LaurentPoly":
        return LaurentPoly.from_dict({0: Fraction(c)})

    @staticmethod
    def v_power(exp: int, coeff=1) -> "LaurentPoly":
        return LaurentPoly.from_dict({exp: Fraction(coeff)})

    @staticmethod
    def q_power(exp: int, coeff=1) -> "LaurentPoly":
        # q = v^2; integer powers of q only
        return LaurentPoly.from_dict({2 * exp: Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, _ZERO) + c
        return LaurentPoly.from_dict(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.from_dict({e: c * other for e, c in self.terms})
        acc: dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, _ZERO) + c1 * c2
        return LaurentPoly.from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers only via explicit monomials")
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, v0) -> Fraction:
        """Exact evaluation at a nonzero rational point."""
        v0 = Fraction(v0)
        if v0 == 0:
            if any(e < 0 for e, _ in self.terms):
                raise ZeroDivisionError("evaluation at 0 with negative exponents")
            return dict(self.terms).get(0, _ZERO)
        return sum((c * v0 ** e for e, c in self.terms), _ZERO)

    def evaluate_q(self, q0) -> Fraction:
        """Evaluate with v**2 = q0; requires all exponents even."""
        if any(e % 2 for e, _ in self.terms):
            raise ValueError("odd powers of v cannot be evaluated at q")
        q0 = Fraction(q0)
        if q0 == 0 and any(e < 0 for e, _ in self.terms):
            raise ZeroDivisionError("evaluation at 0 with negative exponents")
        return sum((c * q0 ** (e // 2) for e, c in self.terms), _ZERO)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.terms:
            if e == 0:
                bits.append(str(c))
            elif e == 1:
                bits.append(f"{c}*v" if c != 1 else "v")
            else:
                bits.append(f"{c}*v^{e}" if c != 1 else f"v^{e}")
        return " + ".join(bits)


LAURENT_ZERO = LaurentPoly()
LAURENT_ONE = LaurentPoly.constant(1)
