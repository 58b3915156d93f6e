import itertools

import pytest

from hecke_covers.cover_datum import build_cover, first_oasitic_values
from hecke_covers.hecke_algebra import NotOasiticError, discrete_series_characters
from hecke_covers.root_datum import CartanSpec, build_root_datum, enumerate_weyl_group
from hecke_covers.whittaker import (
    fixed_point_count,
    linear_characters,
    resolve_character_convention,
    whittaker_dimension_bruteforce,
    whittaker_dimension_closed_form,
    whittaker_reports,
)


def cover(letter, rank, n):
    return build_cover(build_root_datum(CartanSpec(letter, rank)), n)


def test_fixed_points_identity_and_trivial_modulus():
    datum = build_root_datum(CartanSpec("B", 2))
    elements = list(enumerate_weyl_group(datum))
    identity = elements[0]
    assert fixed_point_count(identity, 5) == 25
    for w in elements:
        assert fixed_point_count(w, 1) == 1


def test_fixed_points_a1_reflection():
    datum = build_root_datum(CartanSpec("A", 1))
    s = datum.simple_reflection(0)
    assert fixed_point_count(s, 5) == 1
    assert fixed_point_count(s, 4) == 2  # 2y = 0 mod 4 has two solutions


@pytest.mark.parametrize("letter,rank", [("A", 1), ("A", 2), ("B", 2), ("A", 3)])
def test_fixed_points_match_enumeration(letter, rank):
    datum = build_root_datum(CartanSpec(letter, rank))
    for w in enumerate_weyl_group(datum):
        for n in range(1, 7):
            brute = 0
            for vec in itertools.product(range(n), repeat=rank):
                if all((a - b) % n == 0 for a, b in zip(w.apply(vec), vec)):
                    brute += 1
            assert fixed_point_count(w, n) == brute


def test_steinberg_counts_orbits_g2():
    c = cover("G", 2, 5)
    sign = next(chi for chi in linear_characters(c.base) if chi.label == "sign")
    assert whittaker_dimension_bruteforce(c, sign) == 5


def test_g2_nonsteinberg_value():
    c = cover("G", 2, 5)
    sigma = discrete_series_characters(c)[1]
    chi = resolve_character_convention(c, sigma)
    assert whittaker_dimension_bruteforce(c, chi) == 2
    assert whittaker_dimension_closed_form(c, sigma) == 2


def test_trivial_cover_dimensions():
    for letter, rank in [("A", 2), ("B", 2), ("G", 2)]:
        c = cover(letter, rank, 1)
        for sigma in discrete_series_characters(c):
            want = 1 if sigma.is_steinberg else 0
            assert whittaker_dimension_closed_form(c, sigma) == want
            chi = resolve_character_convention(c, sigma)
            assert whittaker_dimension_bruteforce(c, chi) == want


def test_closed_form_spot_values():
    assert whittaker_dimension_closed_form(
        cover("F", 4, 7), discrete_series_characters(cover("F", 4, 7))[1]
    ) == 1
    assert whittaker_dimension_closed_form(
        cover("B", 2, 3), discrete_series_characters(cover("B", 2, 3))[0]
    ) == 3
    c35 = cover("C", 3, 5)
    by_label = {s.label: s for s in discrete_series_characters(c35)}
    assert whittaker_dimension_closed_form(c35, by_label["sigma2"]) == 4
    # the q-on-affine-class character shares the Steinberg closed form
    assert whittaker_dimension_closed_form(c35, by_label["sigma1"]) == 10


def test_closed_form_rejects_foreign_characters():
    c = cover("B", 2, 3)
    from hecke_covers.hecke_algebra import one_dimensional_characters

    trivial = next(x for x in one_dimensional_characters(c) if x.label == "trivial")
    with pytest.raises(ValueError):
        whittaker_dimension_closed_form(c, trivial)


def test_bruteforce_requires_oasitic():
    c = cover("A", 2, 3)
    chi = linear_characters(c.base)[0]
    with pytest.raises(NotOasiticError):
        whittaker_dimension_bruteforce(c, chi)


def test_steinberg_resolves_to_sign_character():
    for letter, rank, n in [("A", 2, 2), ("B", 3, 3), ("G", 2, 5)]:
        c = cover(letter, rank, n)
        st = discrete_series_characters(c)[0]
        assert resolve_character_convention(c, st).class_signs == (
            -1,
        ) * len(c.base.odd_classes)


def test_reports_agree_on_mixed_grid():
    for letter, rank, n in [("B", 2, 5), ("C", 3, 7), ("B", 4, 5), ("F", 4, 11), ("A", 4, 3)]:
        for rep in whittaker_reports(cover(letter, rank, n)):
            assert rep.agreement, rep


def test_integrality_and_nonnegativity_all_linear_characters():
    for letter, rank in [("A", 2), ("B", 2), ("B", 3), ("G", 2)]:
        spec = CartanSpec(letter, rank)
        datum = build_root_datum(spec)
        for n in first_oasitic_values(spec, 3):
            c = build_cover(datum, n)
            for chi in linear_characters(datum):
                dim = whittaker_dimension_bruteforce(c, chi)
                assert dim >= 0  # integrality enforced inside


def test_multiplicity_budget():
    # total one-dimensional multiplicity cannot exceed the module size n^r,
    # and at n = 1 it concentrates on the sign-matching character
    for letter, rank, n in [("B", 2, 3), ("G", 2, 5)]:
        c = cover(letter, rank, n)
        dims = [whittaker_dimension_bruteforce(c, chi) for chi in linear_characters(c.base)]
        assert sum(dims) <= n**rank
    c1 = cover("B", 2, 1)
    dims = {chi.label: whittaker_dimension_bruteforce(c1, chi)
            for chi in linear_characters(c1.base)}
    assert dims["sign"] == 1
    assert sum(v for k, v in dims.items() if k != "sign") == 0


def test_b2_full_profile_at_three():
    # the two non-Steinberg discrete characters restrict to the sign character
    # and to a mixed character: dimensions 3 and 1 at n = 3
    c = cover("B", 2, 3)
    reports = {r.character_label: r for r in whittaker_reports(c)}
    assert reports["steinberg"].closed_form_dimension == 3
    assert reports["sigma1"].closed_form_dimension == 3
    assert reports["sigma2"].closed_form_dimension == 1
    assert all(r.agreement for r in reports.values())
