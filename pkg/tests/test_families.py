import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from schreier import (CapExceeded, FamilyWindow, FVariant, OMEGA, ONE, ZERO,
                      Ordinal, add, admissible_subsets, can_extend,
                      can_extend_k, enumerate_window, finset, image_family,
                      is_maximal, member, mul_nat, omega_pow, pairing,
                      parse_ordinal, restrict, schreier_norm, strong_rank)
from schreier.lazysets import EVENS, NATURALS

from oracles import count_depth_one, member_oracle

LEVELS = [ZERO, ONE, Ordinal.natural(2), Ordinal.natural(3), OMEGA,
          add(OMEGA, ONE), omega_pow(Ordinal.natural(2))]


def subsets(window):
    universe = range(1, window + 1)
    for size in range(window + 1):
        yield from itertools.combinations(universe, size)


# -- membership -----------------------------------------------------------

@pytest.mark.parametrize("xi", LEVELS, ids=str)
def test_member_matches_exhaustive_oracle(xi):
    # greedy decomposition vs trying every block split
    for fs in subsets(8):
        assert member(xi, fs) == member_oracle(xi, fs), fs


def test_member_depth_one_closed_form():
    for fs in subsets(9):
        if fs:
            assert member(ONE, fs) == (len(fs) <= fs[0])


def test_member_examples():
    assert member(ZERO, ())
    assert member(ZERO, (5,)) and not member(ZERO, (1, 2))
    assert member(Ordinal.natural(2), (2, 3, 4, 5))
    assert not member(Ordinal.natural(2), (1, 2, 3))
    assert member(OMEGA, (2, 3, 4))  # routes through the rung picked by min
    assert not member(OMEGA, (1, 2))


def test_finset_validation():
    assert finset([2, 5, 9]) == (2, 5, 9)
    with pytest.raises(ValueError):
        finset([2, 2])
    with pytest.raises(ValueError):
        finset([3, 1])
    with pytest.raises(ValueError):
        finset([0, 1])


# -- extension and rank ---------------------------------------------------

@pytest.mark.parametrize("xi", LEVELS, ids=str)
def test_can_extend_is_membership_at_large_points(xi):
    # spreading: one far-out extension point decides them all
    for fs in subsets(6):
        expected = member(xi, fs + (10 ** 6,)) if member(xi, fs) else False
        assert can_extend(xi, fs) == expected, fs


@pytest.mark.parametrize("xi", LEVELS, ids=str)
def test_can_extend_k_matches_far_blocks(xi):
    base = 10 ** 6
    for fs in subsets(5):
        if not member(xi, fs):
            continue
        for k in range(4):
            block = tuple(base + 7 * i for i in range(k))
            assert can_extend_k(xi, fs, k) == member(xi, fs + block), (fs, k)


@pytest.mark.parametrize("xi", LEVELS, ids=str)
def test_strong_rank_agrees_with_can_extend_k(xi):
    for fs in subsets(6):
        if not member(xi, fs):
            with pytest.raises(ValueError):
                strong_rank(xi, fs)
            continue
        rank = strong_rank(xi, fs)
        for k in range(5):
            survives = Ordinal.natural(k) <= rank
            assert can_extend_k(xi, fs, k) == survives, (fs, k)


def test_strong_rank_examples():
    assert strong_rank(ONE, ()) == OMEGA
    assert strong_rank(ONE, (3,)) == Ordinal.natural(2)
    assert strong_rank(ONE, (2, 3)) == ZERO
    assert strong_rank(ZERO, (4,)) == ZERO
    # at level 2 the empty set sits at w^2
    assert strong_rank(Ordinal.natural(2), ()) == omega_pow(Ordinal.natural(2))


def test_is_maximal():
    assert is_maximal(ZERO, (7,))
    assert is_maximal(ONE, (2, 3))
    assert not is_maximal(ONE, (3, 4))
    with pytest.raises(ValueError):
        is_maximal(ONE, (1, 2))


# -- windows --------------------------------------------------------------

def test_depth_one_window_count_matches_formula():
    for window in range(4, 13):
        fam = enumerate_window(ONE, window)
        assert len(fam) == count_depth_one(window)


@pytest.mark.parametrize("xi", LEVELS, ids=str)
def test_windows_hereditary_and_spreading(xi):
    fam = enumerate_window(xi, 8)
    assert fam.hereditary_checked
    fam = fam.verify_spreading()
    assert fam.spreading_checked


def test_window_cap():
    with pytest.raises(CapExceeded):
        enumerate_window(ONE, 64)


def test_window_file_roundtrip():
    fam = enumerate_window(Ordinal.natural(2), 7)
    back = FamilyWindow.from_lines(fam.to_lines())
    assert back.window == fam.window
    assert back.members == fam.members
    assert back.tag == fam.tag


def test_restrict_and_image():
    fam = enumerate_window(ONE, 8)
    restricted = restrict(fam, EVENS)
    image = image_family(ONE, EVENS, 8)
    assert image.members <= restricted.members
    # (2,4) is a member on even coordinates but its index set (1,2) is not
    assert (2, 4) in restricted.members
    assert (2, 4) not in image.members
    assert (2,) in image.members and (4, 6) in image.members


def test_f_variant_relaxes_the_base():
    fv = FVariant(lambda n: 2 * n)
    assert fv.member(ONE, (1, 2))
    assert not member(ONE, (1, 2))
    assert fv.member(ONE, (2, 3, 4, 5))
    assert not fv.member(ONE, (2, 3, 4, 5, 6))
    for fs in subsets(6):
        if member(ONE, fs):
            assert fv.member(ONE, fs)


# -- pairing and norms ----------------------------------------------------

def test_pairing():
    v = {2: Fraction(1, 2), 3: Fraction(1, 3), 9: Fraction(1, 6)}
    assert pairing(v, (2, 3)) == Fraction(5, 6)
    assert pairing(v, ()) == 0
    assert pairing(v, (4,)) == 0


def test_admissible_subsets_are_members():
    support = (2, 3, 5, 8)
    for xi in LEVELS:
        found = admissible_subsets(xi, support)
        assert () in found
        for fs in found:
            assert member(xi, fs)
            assert set(fs) <= set(support)


coeffs = st.dictionaries(st.integers(1, 12),
                         st.fractions(min_value=-2, max_value=2,
                                      max_denominator=6),
                         min_size=1, max_size=7)


@settings(deadline=None)
@given(coeffs)
def test_depth_one_norm_matches_bruteforce(vals):
    support = tuple(sorted(n for n, v in vals.items() if v))
    brute = max(
        (sum((abs(vals[n]) for n in fs), Fraction(0))
         for fs in admissible_subsets(ONE, support)),
        default=Fraction(0))
    assert schreier_norm(ONE, vals) == brute


@settings(deadline=None)
@given(coeffs, st.sampled_from(LEVELS))
def test_norm_axioms(vals, xi):
    norm = schreier_norm(xi, vals)
    mass = sum((abs(v) for v in vals.values()), Fraction(0))
    peak = max((abs(v) for v in vals.values()), default=Fraction(0))
    assert peak <= norm <= mass
    flipped = {n: -v for n, v in vals.items()}
    assert schreier_norm(xi, flipped) == norm
    doubled = {n: 2 * v for n, v in vals.items()}
    assert schreier_norm(xi, doubled) == 2 * norm


@settings(deadline=None)
@given(coeffs, coeffs)
def test_norm_triangle(a, b):
    merged = dict(a)
    for n, v in b.items():
        merged[n] = merged.get(n, Fraction(0)) + v
    xi = Ordinal.natural(2)
    assert schreier_norm(xi, merged) \
        <= schreier_norm(xi, a) + schreier_norm(xi, b)


def test_norm_cap():
    big = {n: Fraction(1, 40) for n in range(1, 41)}
    with pytest.raises(CapExceeded):
        schreier_norm(Ordinal.natural(2), big)
    # the depth-one fast path has no support cap; best set here is
    # {20, ..., 39}: twenty coordinates starting at 20
    assert schreier_norm(ONE, big) == Fraction(1, 2)
