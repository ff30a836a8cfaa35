"""Mapping classes as peripheral-preserving automorphisms, their action on
subgroup classes and multicurves, and orbit-ball enumeration.

Orbit balls are grown breadth-first under an inverse-closed twist
generating set, exploring every element whose functional value stays
within ``margin * L`` and reporting those within ``L``.  The margin is a
completeness heuristic (the orbit graph restricted to a metric ball need
not be connected), so every ball carries a frontier-exhausted flag and
callers re-check stability under a larger margin where it matters.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import currents, graphs, words
from .currents import Multicurve, RationalSubsetCurrent
from .errors import ConfigError, InputError, ResourceLimitError
from .graphs import SubgroupClass

DEFAULT_BALL_CAP = 1_000_000
BALL_CAP_ENV = "SCL_MAX_BALL"


@dataclass(frozen=True)
class MappingClass:
    """Outer automorphism representing a mapping class.

    ``generator_word`` records provenance in the chosen twist generating
    set; it plays no algebraic role.
    """

    auto: words.Automorphism
    generator_word: str = ""


def mapping_class(images, surface, label="") -> MappingClass:
    """Validate generator images as a peripheral-preserving automorphism.

    Folding the images must give back the full bouquet (surjectivity; for
    a free group of finite rank that already forces bijectivity), and each
    peripheral class must map to a peripheral class.
    """
    images = tuple(words.reduce(im) for im in images)
    if len(images) != surface.rank:
        raise InputError(f"need {surface.rank} generator images, got {len(images)}")
    folded = graphs.fold(images, rank=surface.rank)
    if graphs.index(folded) != 1:
        raise InputError("images do not generate the whole group; not an automorphism")
    phi = words.Automorphism(images=images, label=label)
    for p in surface.peripheral_words:
        img = words.conj_class(words.apply(phi, p))
        peripheral, power = words.is_peripheral(img, surface)
        if not peripheral or power != 1:
            raise InputError("automorphism does not preserve the cusp set")
    return MappingClass(auto=phi, generator_word=label)


def compose(phi: MappingClass, psi: MappingClass) -> MappingClass:
    return MappingClass(
        auto=words.compose(phi.auto, psi.auto),
        generator_word=phi.generator_word + psi.generator_word,
    )


def identity(surface) -> MappingClass:
    return MappingClass(auto=words.identity_automorphism(surface.rank))


def twist_generators(surface):
    """Inverse-closed twist generating set for the mapping class group.

    Built-in for the once-punctured torus; user surfaces must supply an
    inverse-closed list in their config.
    """
    if surface.mcg_images:
        return [mapping_class(imgs, surface, label or f"t{i}")
                for i, (imgs, label) in enumerate(surface.mcg_images)]
    if (surface.genus, surface.cusps) == (1, 1) and surface.rank == 2:
        a, b = (1,), (2,)
        table = [
            ((a, (1, 2)), "ta"),    # a -> a,  b -> ab
            ((a, (-1, 2)), "ta'"),  # a -> a,  b -> Ab
            (((1, 2), b), "tb"),    # a -> ab, b -> b
            (((1, -2), b), "tb'"),  # a -> aB, b -> b
        ]
        return [mapping_class(imgs, surface, label) for imgs, label in table]
    raise ConfigError(
        f"surface {surface.name!r} has no configured mapping class generators")


def act_on_subgroup(phi: MappingClass, h: SubgroupClass, surface) -> SubgroupClass:
    """Push a subgroup class through a mapping class: map a free basis of
    the core graph and refold."""
    gens = graphs.spanning_generators(h.graph)
    return graphs.subgroup_class(
        [words.apply(phi.auto, w) for w in gens], surface=surface, rank=surface.rank)


def act_on_multicurve(phi: MappingClass, mc: Multicurve) -> Multicurve:
    acc = {}
    for c, w in mc.items:
        img = words.conj_class(words.apply(phi.auto, c.letters))
        acc[img] = acc.get(img, 0) + w
    return Multicurve.from_dict(acc)


def act_on_current(phi: MappingClass, eta: RationalSubsetCurrent,
                   surface) -> RationalSubsetCurrent:
    return RationalSubsetCurrent.from_terms(
        (act_on_subgroup(phi, h, surface), w) for h, w in eta.terms)


class _ClassData:
    """Per-subgroup-class shadow values shared across the ball."""

    __slots__ = ("cls", "b_items", "chi", "lsc")

    def __init__(self, h: SubgroupClass, surface):
        self.cls = h
        bnd = currents.subgroup_boundary(h, surface)
        self.b_items = bnd.items
        self.chi = h.euler_char
        self.lsc = currents.length_gc(bnd, surface)


@dataclass
class OrbitBall:
    """Explored region of a mapping-class orbit of rational currents.

    ``elements`` maps the canonical element key to ``(value, b_key)`` for
    everything *seen*; members of the ball proper are the keys with value
    at most ``cutoff``.  ``b_key`` is the canonical item tuple of the
    boundary image, shared verbatim by elements in the same fiber.
    """

    seed: RationalSubsetCurrent
    functional: tuple
    cutoff: float
    margin: float
    surface: object
    mode: str
    elements: dict
    frontier_exhausted: bool

    def member_values(self, limit=None):
        limit = self.cutoff if limit is None else limit
        if limit > self.cutoff:
            raise InputError(f"query {limit} beyond ball cutoff {self.cutoff}")
        return sorted(v for v, _ in self.elements.values() if v <= limit)

    def members(self, limit=None):
        """Deterministically ordered (key, value, b_key) rows inside the ball."""
        limit = self.cutoff if limit is None else limit
        if limit > self.cutoff:
            raise InputError(f"query {limit} beyond ball cutoff {self.cutoff}")
        rows = [(k, v, b) for k, (v, b) in self.elements.items() if v <= limit]
        rows.sort(key=lambda r: r[0])
        return rows

    def count_leq(self, limit) -> int:
        return len(self.member_values(limit))


def _ball_cap(cap):
    if cap is not None:
        return cap
    env = os.environ.get(BALL_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{BALL_CAP_ENV} must be an integer, got {env!r}")
    return DEFAULT_BALL_CAP


def orbit_ball(seed, functional, L, margin=1.5, *,
               surface, twists=None, cap=None, mode="eta") -> OrbitBall:
    """Breadth-first orbit ball around ``seed``.

    ``seed`` is a RationalSubsetCurrent, or an ordered (class, weight)
    sequence for "J" mode.  ``functional`` is an ``(alpha, beta)`` pair
    weighting generalized length and area.  Dedup key: the weighted
    multiset of term keys in "eta" mode, the ordered term tuple in "J"
    mode (the two orbit counts differ exactly by the term-permutation
    stabilizer).
    """
    alpha, beta = functional
    if alpha < 0 or beta < 0 or (alpha == 0 and beta == 0):
        raise InputError(f"functional spec must be nonnegative and nonzero: {functional}")
    if L <= 0:
        raise InputError(f"cutoff L must be positive, got {L}")
    if margin < 1:
        raise InputError(f"margin must be at least 1, got {margin}")
    if mode not in ("eta", "J"):
        raise InputError(f"mode must be 'eta' or 'J', got {mode!r}")
    cap = _ball_cap(cap)
    if twists is None:
        twists = twist_generators(surface)

    registry = {}   # class key -> _ClassData
    act_cache = {}  # (twist index, class key) -> class key

    def class_data(h: SubgroupClass) -> _ClassData:
        data = registry.get(h.key)
        if data is None:
            data = _ClassData(h, surface)
            registry[h.key] = data
        return data

    alpha_f, beta_f = float(alpha), float(beta)

    def evaluate(term_pairs):
        value = 0.0
        bacc = {}
        for key, w in term_pairs:
            data = registry[key]
            wf = float(w)
            if alpha_f:
                value += alpha_f * wf * data.lsc
            if beta_f:
                value += beta_f * wf * (-2.0 * math.pi * data.chi)
            for c, bw in data.b_items:
                bacc[c] = bacc.get(c, 0) + w * bw
        b_key = tuple(sorted(((c.letters, bw) for c, bw in bacc.items())))
        return value, b_key

    def canon(term_pairs):
        if mode == "J":
            return tuple(term_pairs)
        acc = {}
        for key, w in term_pairs:
            acc[key] = acc.get(key, 0) + w
        return tuple(sorted(acc.items()))

    term_source = seed.terms if isinstance(seed, RationalSubsetCurrent) \
        else tuple((h, Fraction(w)) for h, w in seed)
    if not isinstance(seed, RationalSubsetCurrent):
        seed = RationalSubsetCurrent.from_terms(term_source)
    seed_pairs = []
    for h, w in term_source:
        class_data(h)
        seed_pairs.append((h.key, Fraction(w)))
    seed_key = canon(seed_pairs)

    explore_bound = margin * L
    elements = {seed_key: evaluate(seed_pairs)}
    queue = deque()
    if elements[seed_key][0] <= explore_bound:
        queue.append(seed_key)

    def fail_partial():
        ball = OrbitBall(seed=seed, functional=functional, cutoff=L, margin=margin,
                         surface=surface, mode=mode, elements=elements,
                         frontier_exhausted=False)
        raise ResourceLimitError(
            f"orbit ball exceeded cap of {cap} elements", partial=ball)

    while queue:
        key = queue.popleft()
        for t_idx, phi in enumerate(twists):
            new_pairs = []
            for cls_key, w in key:
                img_key = act_cache.get((t_idx, cls_key))
                if img_key is None:
                    img = act_on_subgroup(phi, registry[cls_key].cls, surface)
                    class_data(img)
                    img_key = img.key
                    act_cache[(t_idx, cls_key)] = img_key
                new_pairs.append((img_key, w))
            new_key = canon(new_pairs)
            if new_key in elements:
                continue
            record = evaluate(new_pairs)
            elements[new_key] = record
            if len(elements) > cap:
                fail_partial()
            if record[0] <= explore_bound:
                queue.append(new_key)

    return OrbitBall(seed=seed, functional=functional, cutoff=L, margin=margin,
                     surface=surface, mode=mode, elements=elements,
                     frontier_exhausted=True)
