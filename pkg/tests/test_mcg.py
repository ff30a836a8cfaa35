from fractions import Fraction

import pytest

from scl import currents, graphs, mcg, words
from scl.errors import ConfigError, InputError, ResourceLimitError
from conftest import random_mapping_class, random_multicurve, random_subgroup_class

W = words.word_from_str


@pytest.fixture(scope="module")
def twists(torus):
    return {t.generator_word: t for t in mcg.twist_generators(torus)}


def seed_of(torus, *gens):
    h = graphs.subgroup_class([W(g) for g in gens], surface=torus, rank=2)
    return currents.RationalSubsetCurrent.of_subgroup(h)


def test_twist_generators_act_as_expected(twists):
    ta = twists["ta"]
    assert words.word_to_str(words.apply(ta.auto, W("b"))) == "ab"
    tb = twists["tb"]
    assert words.apply(tb.auto, W("abAB")) == W("abAB")


def test_twist_abelianizations(twists):
    def abelianized(phi):
        # column j = exponent vector of the image of generator j
        cols = []
        for im in phi.auto.images:
            cols.append((sum(1 if l == 1 else -1 for l in im if abs(l) == 1),
                         sum(1 if l == 2 else -1 for l in im if abs(l) == 2)))
        return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))

    got = {abelianized(twists["ta"]), abelianized(twists["tb"])}
    # the standard unipotent shears, which generate SL(2, Z)
    assert got == {((1, 1), (0, 1)), ((1, 0), (1, 1))}
    for m in got:
        assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == 1


def test_twist_inverses_compose_to_identity(twists, rng):
    for name in ("ta", "tb"):
        phi = mcg.compose(twists[name], twists[name + "'"])
        for _ in range(20):
            w = words.reduce([rng.choice([1, -1, 2, -2]) for _ in range(10)])
            assert words.apply(phi.auto, w) == w


def test_mapping_class_rejects_non_surjective(torus):
    with pytest.raises(InputError):
        mcg.mapping_class([W("a"), W("a")], torus)
    with pytest.raises(InputError):
        mcg.mapping_class([W("aa"), W("b")], torus)


def test_twist_generators_need_config(torus):
    wide = torus.__class__(
        name="wide", genus=2, cusps=1, matrices=torus.matrices * 2,
        peripheral_words=torus.peripheral_words,
        ribbon_order=torus.ribbon_order)
    with pytest.raises(ConfigError):
        mcg.twist_generators(wide)


def test_act_on_subgroup_examples(torus, twists):
    ta = twists["ta"]
    ha = graphs.subgroup_class([W("a")], surface=torus, rank=2)
    assert mcg.act_on_subgroup(ta, ha, torus) == ha
    hb = graphs.subgroup_class([W("b")], surface=torus, rank=2)
    hab = graphs.subgroup_class([W("ab")], surface=torus, rank=2)
    assert mcg.act_on_subgroup(ta, hb, torus) == hab


def test_act_on_paper_subgroup(torus, twists):
    h = graphs.subgroup_class(
        [W(w) for w in ("aaaa", "ab", "bb", "aaba", "aaBa")], surface=torus)
    listed = graphs.subgroup_class(
        [W(w) for w in ("aaaa", "aab", "abab", "aaaba", "aaB")], surface=torus)
    acted = mcg.act_on_subgroup(twists["ta"], h, torus)
    assert acted == listed
    assert acted != h
    assert graphs.index(acted.graph) == 4


def test_act_on_multicurve(torus, twists):
    ta = twists["ta"]
    mc = currents.Multicurve.from_dict({words.conj_class(W("a")): 1})
    assert mcg.act_on_multicurve(ta, mc) == mc
    mb = currents.Multicurve.from_dict({words.conj_class(W("b")): Fraction(3, 2)})
    expect = currents.Multicurve.from_dict({words.conj_class(W("ab")): Fraction(3, 2)})
    assert mcg.act_on_multicurve(ta, mb) == expect


def test_action_laws(rng, torus):
    ident = mcg.identity(torus)
    for _ in range(25):
        phi = random_mapping_class(rng, torus, 4)
        psi = random_mapping_class(rng, torus, 4)
        h = random_subgroup_class(rng, torus, max_rank=3, max_len=8)
        assert mcg.act_on_subgroup(ident, h, torus) == h
        assert mcg.act_on_subgroup(mcg.compose(phi, psi), h, torus) == \
            mcg.act_on_subgroup(phi, mcg.act_on_subgroup(psi, h, torus), torus)


def test_equivariance_and_area_invariance(rng, torus):
    for _ in range(30):
        phi = random_mapping_class(rng, torus, 6)
        h = random_subgroup_class(rng, torus, max_rank=3, max_len=8)
        eta = currents.RationalSubsetCurrent.of_subgroup(h, Fraction(2, 3))
        acted = mcg.act_on_current(phi, eta, torus)
        left = currents.boundary_projection(acted, torus)
        right = mcg.act_on_multicurve(phi, currents.boundary_projection(eta, torus))
        assert left == right
        assert currents.euler_char(acted) == currents.euler_char(eta)


def test_action_preserves_primitivity(rng, torus):
    for _ in range(50):
        mc = random_multicurve(rng, torus)
        phi = random_mapping_class(rng, torus, 5)
        for c, _ in mcg.act_on_multicurve(phi, mc).items:
            _, mult = words.primitive_root(c)
            assert mult == 1


def test_orbit_ball_systoles(torus):
    ball = mcg.orbit_ball(seed_of(torus, "a"), (1, 0), 2.0, surface=torus)
    rows = ball.members()
    assert len(rows) == 3
    got = {b for _, _, b in rows}
    expect = {((words.conj_class(W(w)).letters, Fraction(1)),) for w in ("a", "b", "ab")}
    assert got == expect


def test_orbit_ball_depth_two(torus):
    ball = mcg.orbit_ball(seed_of(torus, "a"), (1, 0), 4.0, surface=torus)
    assert ball.count_leq(4.0) == 6
    assert ball.count_leq(2.0) == 3


def test_orbit_ball_finite_index_seed(torus):
    seed = seed_of(torus, "a", "bb", "baB")
    for L in (1.0, 5.0, 40.0):
        ball = mcg.orbit_ball(seed, (1, 0), L, surface=torus)
        assert len(ball.members()) == 3
        assert ball.frontier_exhausted


def test_orbit_ball_monotone_and_margin_stable(torus):
    seed = seed_of(torus, "aa", "b")
    small = mcg.orbit_ball(seed, (1, 0), 12.0, surface=torus)
    large = mcg.orbit_ball(seed, (1, 0), 20.0, surface=torus)
    small_keys = {k for k, _, _ in small.members()}
    large_keys_at_12 = {k for k, _, _ in large.members(12.0)}
    assert small_keys <= {k for k, _, _ in large.members()}
    assert small_keys == large_keys_at_12
    wider = mcg.orbit_ball(seed, (1, 0), 12.0, margin=2.0, surface=torus)
    assert small_keys == {k for k, _, _ in wider.members()}


def test_orbit_ball_cap_carries_partial(torus):
    with pytest.raises(ResourceLimitError) as info:
        mcg.orbit_ball(seed_of(torus, "a"), (1, 0), 6.0, surface=torus, cap=4)
    partial = info.value.partial
    assert partial is not None
    assert not partial.frontier_exhausted
    assert len(partial.elements) > 4


def test_orbit_ball_env_cap(torus, monkeypatch):
    monkeypatch.setenv(mcg.BALL_CAP_ENV, "4")
    with pytest.raises(ResourceLimitError):
        mcg.orbit_ball(seed_of(torus, "a"), (1, 0), 6.0, surface=torus)
    monkeypatch.setenv(mcg.BALL_CAP_ENV, "banana")
    with pytest.raises(InputError):
        mcg.orbit_ball(seed_of(torus, "a"), (1, 0), 6.0, surface=torus)


def test_orbit_ball_input_guards(torus):
    seed = seed_of(torus, "a")
    with pytest.raises(InputError):
        mcg.orbit_ball(seed, (0, 0), 2.0, surface=torus)
    with pytest.raises(InputError):
        mcg.orbit_ball(seed, (1, 0), -1.0, surface=torus)
    with pytest.raises(InputError):
        mcg.orbit_ball(seed, (1, 0), 2.0, margin=0.5, surface=torus)


def test_orbit_ball_modes(torus):
    h1 = graphs.subgroup_class([W("a")], surface=torus, rank=2)
    h2 = graphs.subgroup_class([W("ab")], surface=torus, rank=2)
    seed = currents.RationalSubsetCurrent.from_terms([(h1, 1), (h2, 1)])
    ball_eta = mcg.orbit_ball(seed, (1, 0), 4.5, surface=torus, mode="eta")
    ball_j = mcg.orbit_ball(seed.terms, (1, 0), 4.5, surface=torus, mode="J")
    assert ball_j.count_leq(4.5) >= ball_eta.count_leq(4.5)
