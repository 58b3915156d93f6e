"""Formal-degree series of one-dimensional discrete-series characters.

The inverse formal degree is a sum over the extended affine Weyl group whose
w-term, for a one-dimensional character, collapses to a product of xi^2/q
factors along any reduced word.  Terms are positive rationals, so the partial
sums are monotone and a geometric tail estimate certifies convergence.  Every
term is also recomputed on the unrescaled-length side with the half-power
exponent shift, and the two Laurent expressions must agree exactly; this keeps
the two length functions mutually audited.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine_weyl import enumerate_ball
from .cover_datum import CoverDatum
from .exact_algebra import LaurentPoly
from .hecke_algebra import HeckeCharacter, discrete_series_characters
from .root_datum import RootDatum

__all__ = [
    "DegreeSeries",
    "character_series",
    "formal_degree_inverse",
    "canonical_measure_constant",
    "canonical_measure_monomial",
    "degree_with_canonical_measure",
    "DivergentSeriesError",
    "NotConvergedError",
]

DEFAULT_TOLERANCE = Fraction(1, 10**8)


class DivergentSeriesError(ValueError):
    """The requested character does not yield a summable series."""

    def __init__(self, message, series=None):
        super().__init__(message)
        self.series = series


class NotConvergedError(RuntimeError):
    """A converged series was required but the certificate is missing."""

    def __init__(self, message, tail_ratio=None):
        super().__init__(message)
        self.tail_ratio = tail_ratio


@dataclass(frozen=True)
class DegreeSeries:
    """Exact partial data of the degree series at a rational q > 1.

    ``contributions[l]`` collects the terms of (rescaled) length l; the sums are
    nondecreasing.  ``limit_estimate`` extrapolates the tail geometrically with
    the last observed ratio and is only present under a contraction certificate.
    """

    cover_name: str
    character_label: str
    q: Fraction
    truncation: int
    contributions: tuple[Fraction, ...]
    partial_sums: tuple[Fraction, ...]
    tolerance: Fraction
    tail_ratio: Fraction | None
    converged: bool
    diverging: bool
    limit_estimate: Fraction | None

    @property
    def last_sum(self) -> Fraction:
        return self.partial_sums[-1]


def _class_sign_data(chi: HeckeCharacter, odd_classes) -> tuple[tuple[int, ...], tuple[int, ...]]:
    q_classes = []
    minus_classes = []
    for ci, cls in enumerate(odd_classes):
        if chi.generator_signs[cls[0]] == 1:
            q_classes.append(ci)
        else:
            minus_classes.append(ci)
    return tuple(q_classes), tuple(minus_classes)


def character_series(
    cover: CoverDatum,
    chi: HeckeCharacter,
    q: Fraction,
    truncation: int,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> DegreeSeries:
    """Partial sums of the degree series for any one-dimensional character,
    including non-summable ones (the result then carries ``diverging=True``)."""
    q = Fraction(q)
    if q <= 1:
        raise ValueError("the series needs a rational q > 1")
    if truncation < 0:
        raise ValueError("truncation must be nonnegative")

    from .affine_weyl import generator_set

    gens = generator_set(cover)
    ball = {rec.element: rec for rec in enumerate_ball(cover, truncation, "rescaled")}
    q_classes, minus_classes = _class_sign_data(chi, gens.odd_classes)

    def char_poly(counts) -> LaurentPoly:
        qexp = sum(counts[ci] for ci in q_classes)
        sign = -1 if sum(counts[ci] for ci in minus_classes) % 2 else 1
        return LaurentPoly.v_power(2 * qexp, sign)

    contributions = [Fraction(0)] * (truncation + 1)
    for rec in ball.values():
        inv = ball[rec.element.inverse()]
        value_w = char_poly(rec.class_counts)
        value_winv = char_poly(inv.class_counts)
        term_linear = (
            LaurentPoly.v_power(-2 * rec.length_rescaled) * value_w * value_winv
        )
        shift_w = LaurentPoly.v_power(rec.length_base - rec.length_rescaled)
        shift_winv = LaurentPoly.v_power(inv.length_base - inv.length_rescaled)
        term_unrescaled = (
            LaurentPoly.v_power(-2 * rec.length_base)
            * (shift_w * value_w)
            * (shift_winv * value_winv)
        )
        if term_linear != term_unrescaled:
            raise AssertionError(
                "two-sided term identity failed; the length functions disagree"
            )
        contributions[rec.length_rescaled] += term_linear.evaluate_q(q)

    sums = []
    running = Fraction(0)
    for c in contributions:
        running += c
        sums.append(running)

    tail_ratio = None
    if truncation >= 1 and contributions[-2] != 0:
        tail_ratio = contributions[-1] / contributions[-2]
    converged = (
        tail_ratio is not None
        and tail_ratio < 1
        and contributions[-1] / sums[-1] < tolerance
    )
    diverging = tail_ratio is not None and tail_ratio >= 1
    limit = None
    if tail_ratio is not None and tail_ratio < 1:
        limit = sums[-1] + contributions[-1] * tail_ratio / (1 - tail_ratio)

    return DegreeSeries(
        cover_name=cover.name,
        character_label=chi.label,
        q=q,
        truncation=truncation,
        contributions=tuple(contributions),
        partial_sums=tuple(sums),
        tolerance=Fraction(tolerance),
        tail_ratio=tail_ratio,
        converged=converged,
        diverging=diverging,
        limit_estimate=limit,
    )


def formal_degree_inverse(
    cover: CoverDatum,
    chi: HeckeCharacter,
    q: Fraction,
    truncation: int,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> DegreeSeries:
    """Truncated inverse formal degree for a discrete-series character.

    Characters outside the discrete-series list are refused: their series has
    nondecreasing terms and no finite value.
    """
    allowed = {c.generator_signs for c in discrete_series_characters(cover)}
    if chi.generator_signs not in allowed:
        raise DivergentSeriesError(
            f"character {chi.label!r} is not discrete series for {cover.name}; "
            "its degree series diverges"
        )
    return character_series(cover, chi, q, truncation, tolerance)


def canonical_measure_constant(datum: RootDatum, q: Fraction) -> Fraction:
    """q^(-#positive roots) * (1 - 1/q)^rank, exactly."""
    q = Fraction(q)
    if q <= 1:
        raise ValueError("q must exceed 1")
    return q ** (-datum.num_positive_roots) * (1 - 1 / q) ** datum.rank


def canonical_measure_monomial(datum: RootDatum) -> LaurentPoly:
    """The same constant kept symbolic in v (v**2 = q)."""
    out = LaurentPoly.q_power(-datum.num_positive_roots)
    factor = LaurentPoly.constant(1) - LaurentPoly.q_power(-1)
    for _ in range(datum.rank):
        out = out * factor
    return out


def degree_with_canonical_measure(series: DegreeSeries, constant: Fraction) -> Fraction:
    """Formal degree after rescaling the measure by ``constant``.

    Requires the convergence certificate; the degree is 1/(constant * limit).
    """
    if not series.converged or series.limit_estimate is None:
        raise NotConvergedError(
            f"series for {series.character_label!r} not converged at truncation "
            f"{series.truncation} (last tail ratio {series.tail_ratio})",
            tail_ratio=series.tail_ratio,
        )
    return 1 / (Fraction(constant) * series.limit_estimate)
