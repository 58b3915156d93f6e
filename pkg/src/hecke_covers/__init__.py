"""Exact combinatorics of central covers: dual root data, affine Weyl groups
with two length functions, Iwahori-Hecke algebras in the natural basis,
formal-degree series, and Whittaker dimensions."""

from .exact_algebra import (
    IntMatrix,
    LaurentPoly,
    SmithDecomposition,
    smith_normal_form,
    solution_count_mod_n,
)
from .root_datum import (
    CartanSpec,
    RootDatum,
    WeylElement,
    WeylOrderCapExceeded,
    build_root_datum,
    enumerate_weyl_group,
    rho_pairing,
)
from .cover_datum import (
    CoverDatum,
    FiniteAbelianGroup,
    Lattice,
    build_cover,
    center_group,
    first_oasitic_values,
    heart_center_group,
    is_oasitic,
    lattice_is_scaled,
    oasitic_condition,
    oasitic_condition_text,
)
from .affine_weyl import (
    AffineElement,
    AffineGeneratorSet,
    BallElement,
    base_length,
    enumerate_ball,
    generator_set,
    rescaled_length,
)
from .hecke_algebra import (
    HeckeAlgebra,
    HeckeCharacter,
    HeckeElement,
    NotOasiticError,
    discrete_series_characters,
    one_dimensional_characters,
)
from .formal_degree import (
    DegreeSeries,
    DivergentSeriesError,
    NotConvergedError,
    canonical_measure_constant,
    canonical_measure_monomial,
    character_series,
    degree_with_canonical_measure,
    formal_degree_inverse,
)
from .whittaker import (
    LinearWeylCharacter,
    WhittakerReport,
    fixed_point_count,
    linear_characters,
    resolve_character_convention,
    whittaker_dimension_bruteforce,
    whittaker_dimension_closed_form,
    whittaker_reports,
)

__all__ = [name for name in dir() if not name.startswith("_")]
