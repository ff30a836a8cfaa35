import math
from fractions import Fraction

import pytest

from scl import census, currents, geometry, graphs, mcg, words
from scl.errors import InputError, LemmaHypothesisError

W = words.word_from_str


def test_christoffel_words():
    assert words.word_to_str(census.christoffel_word(1, 0)) == "a"
    assert words.word_to_str(census.christoffel_word(0, 1)) == "b"
    assert words.word_to_str(census.christoffel_word(1, 1)) == "ab"
    assert words.word_to_str(census.christoffel_word(2, 1)) == "aab"
    assert words.word_to_str(census.christoffel_word(1, -1)) == "aB"
    assert words.word_to_str(census.christoffel_word(3, 2)) == "aabab"


def test_christoffel_sign_symmetry():
    for p, q in ((1, 0), (0, 1), (2, 1), (3, -2), (5, 3)):
        c1 = words.conj_class(census.christoffel_word(p, q))
        c2 = words.conj_class(census.christoffel_word(-p, -q))
        assert c1 == c2


def test_christoffel_rejects_bad_input():
    with pytest.raises(InputError):
        census.christoffel_word(0, 0)
    with pytest.raises(InputError):
        census.christoffel_word(2, 4)


def test_christoffel_words_are_primitive_and_distinct(torus):
    seen = set()
    for p in range(6):
        for q in range(-5, 6):
            if (p == 0 and q != 1) or (p > 0 and math.gcd(p, abs(q)) != 1):
                continue
            if p == 0 and q == 0:
                continue
            c = words.conj_class(census.christoffel_word(p, q))
            _, mult = words.primitive_root(c)
            assert mult == 1
            assert c not in seen
            seen.add(c)


def test_scc_census_anchors(torus):
    assert len(census.scc_classes(torus, 1.0)) == 0
    assert len(census.scc_classes(torus, 2.0)) == 3
    assert len(census.scc_classes(torus, 4.0)) == 6
    table = census.scc_census(torus, 4.0, [2.0, 4.0])
    assert table.rows == ((2.0, 3), (4.0, 6))


def test_scc_counts_match_orbit_ball(torus):
    h = graphs.subgroup_class([W("a")], surface=torus, rank=2)
    seed = currents.RationalSubsetCurrent.of_subgroup(h)
    ball = mcg.orbit_ball(seed, (1, 0), 15.0, margin=1.5, surface=torus)
    oracle = census.scc_classes(torus, 15.0)
    ball_classes = set()
    for _, _, b_key in ball.members():
        ((letters, weight),) = b_key
        assert weight == Fraction(1)
        ball_classes.add(letters)
    assert ball_classes == {c.letters for _, c, _ in oracle}


def test_scc_tree_pruning_loses_nothing(torus):
    # brute force over all coprime pairs in a box that safely contains
    # every slope of length <= 8 (word length grows with the slope height)
    limit = 8.0
    expect = set()
    for p in range(0, 31):
        for q in range(-30, 31):
            if p == 0 and q != 1:
                continue
            if p > 0 and math.gcd(p, abs(q)) != 1:
                continue
            if p == 0 and q == 0:
                continue
            c = words.conj_class(census.christoffel_word(p, q))
            if geometry.geodesic_length(c, torus) <= limit:
                expect.add(c)
    got = {c for _, c, _ in census.scc_classes(torus, limit)}
    assert got == expect


def test_fit_exponent_synthetic():
    quad = census.CensusTable(
        rows=tuple((L, L * L) for L in range(2, 40)), meta={})
    fit = census.fit_exponent(quad, (2, 40))
    assert abs(fit.slope - 2.0) <= 1e-9
    assert fit.r2 >= 1.0 - 1e-12
    lin = census.CensusTable(rows=tuple((L, L) for L in range(2, 40)), meta={})
    assert abs(census.fit_exponent(lin, (2, 40)).slope - 1.0) <= 1e-9


def test_fit_exponent_needs_rows():
    t = census.CensusTable(rows=((1.0, 1), (2.0, 4)), meta={})
    with pytest.raises(InputError):
        census.fit_exponent(t, (0.5, 3.0))


def test_count_by_length_grid_guard(torus):
    h = graphs.subgroup_class([W("a")], surface=torus, rank=2)
    ball = mcg.orbit_ball(currents.RationalSubsetCurrent.of_subgroup(h),
                          (1, 0), 4.0, surface=torus)
    with pytest.raises(InputError):
        census.count_by_length(ball, [2.0, 8.0])
    table = census.count_by_length(ball, [1.0, 2.0, 4.0])
    assert table.rows == ((1.0, 0), (2.0, 3), (4.0, 6))
    assert table.meta["exponent"] == 2


def test_fiber_histogram_cyclic_ball(torus):
    h = graphs.subgroup_class([W("a")], surface=torus, rank=2)
    ball = mcg.orbit_ball(currents.RationalSubsetCurrent.of_subgroup(h),
                          (1, 0), 6.0, surface=torus)
    hist = census.fiber_histogram(ball)
    assert set(hist) == {1}
    assert hist[1] == ball.count_leq(6.0)


def test_fiber_histogram_rejects_zero_seed(torus):
    cover = graphs.subgroup_class([W("a"), W("bb"), W("baB")], surface=torus)
    ball = mcg.orbit_ball(currents.RationalSubsetCurrent.of_subgroup(cover),
                          (1, 0), 5.0, surface=torus)
    with pytest.raises(LemmaHypothesisError):
        census.fiber_histogram(ball)


def test_mlz_census(torus):
    table, ratios = census.mlz_census(torus, 4.0, [4.0])
    assert table.rows == ((4.0, 9),)
    assert ratios == [9 / 16]
    below, _ = census.mlz_census(torus, 1.0, [1.0])
    assert below.rows == ((1.0, 0),)


def test_mlz_counts_dominate_scc(torus):
    scc = census.scc_census(torus, 12.0, [6.0, 12.0])
    mlz, _ = census.mlz_census(torus, 12.0, [6.0, 12.0])
    for (_, a), (_, b) in zip(scc.rows, mlz.rows):
        assert b >= a


def test_make_grid():
    assert census.make_grid(30.0, 3) == [10.0, 20.0, 30.0]
    with pytest.raises(InputError):
        census.make_grid(0.0, 3)
