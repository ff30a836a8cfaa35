"""Marked hyperbolic structures: holonomy, traces, translation lengths.

The built-in surface is the modular torus, the once-punctured torus with
a | -> [[1,1],[1,2]] and b |-> [[1,-1],[-1,2]].  Integer matrices keep
every trace exact (Python ints never overflow), so censuses stay honest
at any depth; lengths only pass through floats at the final arccosh.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

from . import graphs, ribbon, words
from .errors import (
    ConfigError,
    DiscretenessError,
    InputError,
    ParabolicError,
    TrivialWordError,
)

PARABOLIC_TOL = 1e-9  # only used for non-integer user surfaces


@dataclass(frozen=True)
class SurfaceStructure:
    """A marked cusped hyperbolic surface of genus g with r >= 1 cusps.

    ``matrices`` holds one determinant-1 2x2 matrix per generator as a
    ((a, b), (c, d)) tuple with int or float entries.
    """

    name: str
    genus: int
    cusps: int
    matrices: tuple
    peripheral_words: tuple
    ribbon_order: tuple
    mcg_images: tuple = ()  # optional ((word, ...), label) pairs for user surfaces

    @property
    def rank(self):
        return len(self.matrices)

    @cached_property
    def exact(self):
        return all(isinstance(x, int) for row_pair in self.matrices
                   for row in row_pair for x in row)

    @cached_property
    def _letter_matrices(self):
        mats = {}
        for i, ((a, b), (c, d)) in enumerate(self.matrices):
            mats[i + 1] = (a, b, c, d)
            mats[-(i + 1)] = (d, -b, -c, a)  # inverse, det 1
        return mats

    @cached_property
    def peripheral_roots(self):
        """(primitive root class, multiplicity) per peripheral word."""
        return tuple(words.primitive_root(words.conj_class(p))
                     for p in self.peripheral_words)


def modular_torus() -> SurfaceStructure:
    return SurfaceStructure(
        name="modular-torus",
        genus=1,
        cusps=1,
        matrices=(((1, 1), (1, 2)), ((1, -1), (-1, 2))),
        peripheral_words=(words.word_from_str("abAB"),),
        ribbon_order=((0, 1), (1, 1), (0, -1), (1, -1)),
    )


def validate(s: SurfaceStructure) -> list:
    """All invariant violations, each tagged with the offending field."""
    problems = []
    n = s.rank
    if n < 1 or n > 26:
        problems.append(f"matrices: rank {n} outside [1, 26]")
        return problems
    if s.cusps < 1:
        problems.append(f"cusps: need r >= 1, got {s.cusps}")
    if (s.genus, s.cusps) == (0, 3):
        problems.append("genus/cusps: (0, 3) excluded, its mapping class group is finite")
    if n != 2 * s.genus + s.cusps - 1:
        problems.append(
            f"matrices: rank {n} != 2g + r - 1 = {2 * s.genus + s.cusps - 1}")
    for i, ((a, b), (c, d)) in enumerate(s.matrices):
        det = a * d - b * c
        ok = det == 1 if s.exact else abs(det - 1) <= PARABOLIC_TOL
        if not ok:
            problems.append(f"matrices[{i}]: determinant {det} != 1")
    problems.extend("ribbon_order: " + p for p in ribbon.check_order(s.ribbon_order, n))
    if len(s.peripheral_words) != s.cusps:
        problems.append(
            f"peripheral_words: {len(s.peripheral_words)} words for {s.cusps} cusps")
    for j, p in enumerate(s.peripheral_words):
        if not p:
            problems.append(f"peripheral_words[{j}]: trivial word")
            continue
        t = holonomy_trace(p, s)
        ok = abs(t) == 2 if s.exact else abs(abs(t) - 2) <= PARABOLIC_TOL
        if not ok:
            problems.append(f"peripheral_words[{j}]: |trace| = {abs(t)}, not parabolic")
    if not problems:
        # the thickened bouquet must close up to this surface: one boundary
        # cycle per cusp, matching the peripheral classes up to inversion
        cycles = ribbon.boundary_cycles(graphs.bouquet(n), s.ribbon_order)
        got = sorted(words.conj_class(c).letters for c in cycles)
        want = sorted(words.conj_class(p).letters for p in s.peripheral_words)
        if got != want:
            problems.append(
                "ribbon_order: bouquet boundary does not reproduce the peripheral classes")
    return problems


def validated(s: SurfaceStructure) -> SurfaceStructure:
    problems = validate(s)
    if problems:
        raise ConfigError("; ".join(problems))
    return s


def holonomy_trace(w, s: SurfaceStructure):
    """Trace of the holonomy along ``w``; exact for integer surfaces."""
    words.check_rank(w, s.rank)
    mats = s._letter_matrices
    a, b, c, d = 1, 0, 0, 1
    for l in w:
        e, f, g, h = mats[l]
        a, b, c, d = a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h
    return a + d


def _is_parabolic_trace(t, exact: bool) -> bool:
    return abs(t) == 2 if exact else abs(abs(t) - 2) <= PARABOLIC_TOL


def classify(w, s: SurfaceStructure) -> str:
    """"parabolic" or "hyperbolic"; raises on the identity."""
    w = words.reduce(w)
    if not w:
        raise TrivialWordError("identity element has no type")
    t = holonomy_trace(w, s)
    if _is_parabolic_trace(t, s.exact):
        return "parabolic"
    if abs(t) < 2:
        raise DiscretenessError(
            f"|trace| = {abs(t)} < 2 for nontrivial word; representation not discrete")
    return "hyperbolic"


def trace_length(t) -> float:
    """2 arccosh(|t|/2) without overflow; relative error <= 1e-9.

    Traces grow like exp(length/2), so above 2**52 the arccosh collapses
    to 2 log|t| with correction below 2/t^2, far inside tolerance.
    """
    a = abs(t)
    if a <= 2.0 ** 52:
        return 2.0 * math.acosh(a / 2.0)
    return 2.0 * math.log(a)


def geodesic_length(c: words.ConjClass, s: SurfaceStructure) -> float:
    """Hyperbolic length of the closed geodesic in class ``c``."""
    t = holonomy_trace(c.letters, s)
    if _is_parabolic_trace(t, s.exact):
        raise ParabolicError(f"class {c} is parabolic; it has no geodesic length")
    if abs(t) < 2:
        raise DiscretenessError(f"|trace| = {abs(t)} < 2; surface configuration broken")
    return trace_length(t)


def _parse_matrix_entry(x):
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return int(x) if x.is_integer() else x
    raise InputError(f"matrix entry {x!r} is not a number")


def surface_from_dict(data: dict) -> SurfaceStructure:
    """Load the documented surface-config JSON object."""
    try:
        name = data.get("name", "user-surface")
        genus = int(data["genus"])
        cusps = int(data["cusps"])
        sigma = ribbon.order_from_strings(data["ribbon_order"])
        peripherals = tuple(words.word_from_str(p) for p in data["peripherals"])
        n = 2 * genus + cusps - 1
        mats = []
        for i in range(n):
            letter = chr(ord("a") + i)
            if letter not in data["matrices"]:
                raise InputError(f"matrices: missing generator {letter!r}")
            m = data["matrices"][letter]
            mats.append(tuple(tuple(_parse_matrix_entry(x) for x in row) for row in m))
        mcg_images = []
        for entry in data.get("mcg_generators", []):
            imgs = tuple(words.word_from_str(w) for w in entry["images"])
            mcg_images.append((imgs, entry.get("label", "")))
    except KeyError as exc:
        raise InputError(f"surface config missing field {exc.args[0]!r}")
    return SurfaceStructure(
        name=name, genus=genus, cusps=cusps, matrices=tuple(mats),
        peripheral_words=peripherals, ribbon_order=sigma,
        mcg_images=tuple(mcg_images),
    )


def surface_from_file(path: str) -> SurfaceStructure:
    with open(path) as fh:
        return surface_from_dict(json.load(fh))
