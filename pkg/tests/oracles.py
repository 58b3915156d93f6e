"""Independent oracles shared by the test modules.

These deliberately avoid the library's own code paths: series coefficients come
from polynomial expansion of the product formula, solution counts from literal
enumeration, and so on.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def poly_mul(a: list, b: list, cap: int) -> list:
    out = [0] * (cap + 1)
    for i, x in enumerate(a):
        if i > cap or x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > cap:
                break
            out[i + j] += x * y
    return out


def finite_poincare(exponents, cap: int) -> list:
    """Coefficients of prod_i (1 + t + ... + t^{m_i}) up to degree cap."""
    out = [1]
    for m in exponents:
        out = poly_mul(out, [1] * (m + 1), cap)
    return out


def affine_poincare(exponents, cap: int) -> list:
    """Coefficients of the affine growth series: finite part times
    prod_i 1/(1 - t^{m_i}), expanded to degree cap."""
    out = finite_poincare(exponents, cap)
    for m in exponents:
        geom = [1 if k % m == 0 else 0 for k in range(cap + 1)]
        out = poly_mul(out, geom, cap)
    return out


def affine_series_limit(exponents, q: Fraction) -> Fraction:
    """prod_i (1 + q^-1 + ... + q^-m_i) / (1 - q^-m_i), exactly."""
    q = Fraction(q)
    out = Fraction(1)
    for m in exponents:
        num = sum(q ** (-k) for k in range(m + 1))
        out *= num / (1 - q ** (-m))
    return out


def brute_solution_count(rows, n: int) -> int:
    """Literal enumeration of ker(M) over (Z/n)^r."""
    r = len(rows)
    count = 0
    for vec in itertools.product(range(n), repeat=r):
        if all(sum(row[j] * vec[j] for j in range(r)) % n == 0 for row in rows):
            count += 1
    return count
