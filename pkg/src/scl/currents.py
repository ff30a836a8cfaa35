"""Rational geodesic and subset currents and their computable shadows.

A rational subset current is a finite positive-rational combination of
subgroup classes; a multicurve is the geodesic-current special case,
supported on primitive non-peripheral classes.  The current itself is
never materialized as a measure: everything downstream factors through
the boundary projection, the Euler characteristic, and lengths.

Weights are exact ``Fraction``s throughout.  The half weight each
boundary walk contributes is structural: it is what makes the projection
restrict to the identity on multicurves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import geometry, graphs, ribbon, words
from .errors import InputError
from .graphs import SubgroupClass


def _as_positive_fraction(w) -> Fraction:
    f = Fraction(w)
    if f <= 0:
        raise InputError(f"weights must be positive, got {w}")
    return f


@dataclass(frozen=True)
class Multicurve:
    """Rational weighted multicurve; zero is the empty sum.

    ``items`` is sorted by class letters, one entry per primitive class.
    """

    items: tuple  # ((ConjClass, Fraction), ...)

    @classmethod
    def from_dict(cls, weights: dict) -> "Multicurve":
        items = tuple(sorted(
            ((c, _as_positive_fraction(w)) for c, w in weights.items() if w != 0),
            key=lambda cw: cw[0].letters))
        return cls(items=items)

    @classmethod
    def zero(cls) -> "Multicurve":
        return cls(items=())

    def as_dict(self) -> dict:
        return dict(self.items)

    def is_zero(self) -> bool:
        return not self.items

    def scale(self, factor) -> "Multicurve":
        factor = _as_positive_fraction(factor)
        return Multicurve(items=tuple((c, w * factor) for c, w in self.items))

    def __add__(self, other: "Multicurve") -> "Multicurve":
        acc = dict(self.items)
        for c, w in other.items:
            acc[c] = acc.get(c, 0) + w
        return Multicurve.from_dict(acc)

    def __len__(self):
        return len(self.items)


def check_multicurve(mc: Multicurve, surface) -> None:
    """Raise unless every class is primitive, non-peripheral and canonical."""
    for c, w in mc.items:
        _, mult = words.primitive_root(c)
        if mult != 1:
            raise InputError(f"class {c} is a proper power; fold it into its root")
        if words.is_peripheral(c, surface)[0]:
            raise InputError(f"class {c} is peripheral; not a geodesic class")


@dataclass(frozen=True)
class RationalSubsetCurrent:
    """Finite positive-rational sum of subgroup classes (sorted by key)."""

    terms: tuple  # ((SubgroupClass, Fraction), ...)

    @classmethod
    def from_terms(cls, pairs) -> "RationalSubsetCurrent":
        acc = {}
        for h, w in pairs:
            acc[h] = acc.get(h, 0) + _as_positive_fraction(w)
        items = tuple(sorted(acc.items(), key=lambda hw: hw[0].key))
        return cls(terms=items)

    @classmethod
    def of_subgroup(cls, h: SubgroupClass, weight=1) -> "RationalSubsetCurrent":
        return cls.from_terms([(h, weight)])

    def scale(self, factor) -> "RationalSubsetCurrent":
        factor = _as_positive_fraction(factor)
        return RationalSubsetCurrent(terms=tuple((h, w * factor) for h, w in self.terms))

    def __add__(self, other) -> "RationalSubsetCurrent":
        return RationalSubsetCurrent.from_terms(self.terms + other.terms)

    def __len__(self):
        return len(self.terms)


@lru_cache(maxsize=None)
def boundary_report(h: SubgroupClass, surface) -> ribbon.BoundaryReport:
    return ribbon.classify_boundary(h.graph, surface.ribbon_order, surface)


@lru_cache(maxsize=None)
def subgroup_boundary(h: SubgroupClass, surface) -> Multicurve:
    """B(eta_H): half the boundary of the thickened core graph.

    A walk reading u^m puts weight m/2 on the primitive class u; cusp
    walks contribute nothing.  A cyclic subgroup has two mutually inverse
    walks, so it projects to its own class with full weight, and a
    complete cover has all-cusp boundary and projects to zero.
    """
    acc = {}
    for root, kind, power in boundary_report(h, surface).cycles:
        if kind == "cusp":
            continue
        acc[root] = acc.get(root, 0) + Fraction(power, 2)
    return Multicurve.from_dict(acc)


def boundary_projection(eta: RationalSubsetCurrent, surface) -> Multicurve:
    """Q-linear extension of the subgroup boundary map."""
    acc = {}
    for h, w in eta.terms:
        for c, bw in subgroup_boundary(h, surface).items:
            acc[c] = acc.get(c, 0) + w * bw
    return Multicurve.from_dict(acc)


def length_gc(mc: Multicurve, surface) -> float:
    """Weighted length of a multicurve (R-linear in the weights)."""
    return sum(float(w) * geometry.geodesic_length(c, surface) for c, w in mc.items)


def length_sc(eta: RationalSubsetCurrent, surface) -> float:
    """Generalized length: plain length after boundary projection."""
    return length_gc(boundary_projection(eta, surface), surface)


def euler_char(eta: RationalSubsetCurrent) -> Fraction:
    return sum((w * h.euler_char for h, w in eta.terms), Fraction(0))


def area(eta: RationalSubsetCurrent):
    """Gauss-Bonnet area of the convex cores, with the exact chi alongside.

    Zero exactly when every term is cyclic, i.e. when the current is a
    geodesic current.
    """
    chi = euler_char(eta)
    return -2.0 * math.pi * float(chi), chi


def evaluate_functional(spec, eta: RationalSubsetCurrent, surface) -> float:
    """alpha * length_sc + beta * area for spec = (alpha, beta) >= 0."""
    alpha, beta = spec
    if alpha < 0 or beta < 0 or (alpha == 0 and beta == 0):
        raise InputError(f"functional spec must be nonnegative and nonzero, got {spec}")
    value = 0.0
    if alpha:
        value += alpha * length_sc(eta, surface)
    if beta:
        value += beta * area(eta)[0]
    return value


FUNCTIONAL_PRESETS = {"lsc": (1, 0), "area": (0, 1), "la": (1, 1)}


def parse_functional(text: str):
    """'lsc' | 'area' | 'la' | 'alpha,beta' with nonnegative rationals."""
    if text in FUNCTIONAL_PRESETS:
        return FUNCTIONAL_PRESETS[text]
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"bad functional {text!r}; expected lsc|area|la|alpha,beta")
    try:
        alpha, beta = Fraction(parts[0]), Fraction(parts[1])
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad functional weights in {text!r}")
    if alpha < 0 or beta < 0 or (alpha == 0 and beta == 0):
        raise InputError(f"functional weights must be nonnegative and not both zero")
    return alpha, beta


def parse_current(text: str, surface) -> RationalSubsetCurrent:
    """Parse the CLI current literal: semicolon-separated "weight:w1,w2,..."
    terms, e.g. "1:aa,b;1/2:a"."""
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise InputError(f"bad current term {chunk!r}; expected weight:gens")
        wtext, gtext = chunk.split(":", 1)
        try:
            weight = Fraction(wtext.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad weight {wtext!r}")
        gens = [words.word_from_str(w.strip()) for w in gtext.split(",") if w.strip()]
        if not gens:
            raise InputError(f"term {chunk!r} lists no generators")
        h = graphs.subgroup_class(gens, surface=surface, rank=surface.rank)
        pairs.append((h, weight))
    if not pairs:
        raise InputError("empty current literal")
    return RationalSubsetCurrent.from_terms(pairs)


def multicurve_payload(mc: Multicurve):
    """JSON-ready form: [{class, weight}] with weights as p/q strings."""
    return [{"class": str(c), "weight": str(w)} for c, w in mc.items]
