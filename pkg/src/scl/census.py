"""Counting experiments: census tables, exponent fits, fiber statistics,
and the independent slope oracle for the once-punctured torus.

The slope oracle parameterizes simple closed curves by coprime pairs via
Christoffel words and walks the Stern-Brocot tree, so it never touches
the orbit machinery it is used to cross-check.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from . import currents, geometry, words
from .errors import InputError, LemmaHypothesisError
from .mcg import OrbitBall


@dataclass(frozen=True)
class CensusTable:
    """(L, count) rows with nondecreasing counts, plus run metadata."""

    rows: tuple
    meta: dict

    def counts(self):
        return [n for _, n in self.rows]


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r2: float
    window: tuple


def make_grid(limit: float, points: int):
    if points < 1 or limit <= 0:
        raise InputError("grid needs a positive limit and at least one point")
    return [limit * (i + 1) / points for i in range(points)]


def count_by_length(ball: OrbitBall, grid) -> CensusTable:
    """Cumulative ball counts at each grid radius."""
    grid = sorted(grid)
    if grid and grid[-1] > ball.cutoff:
        raise InputError(
            f"grid reaches {grid[-1]} beyond the ball cutoff {ball.cutoff}")
    values = ball.member_values()
    rows = tuple((L, bisect_right(values, L)) for L in grid)
    return CensusTable(rows=rows, meta={
        "kind": "orbit",
        "functional": ball.functional,
        "margin": ball.margin,
        "surface": ball.surface.name,
        "exponent": 6 * ball.surface.genus - 6 + 2 * ball.surface.cusps,
        "frontier_exhausted": ball.frontier_exhausted,
    })


def fit_exponent(table: CensusTable, window) -> FitResult:
    """Least-squares slope of log N against log L over the window."""
    lo, hi = window
    pts = [(math.log(L), math.log(n)) for L, n in table.rows if lo <= L <= hi and n > 0]
    if len(pts) < 3:
        raise InputError(f"need at least 3 positive rows in window {window}")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    n = len(pts)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in pts)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0:
        raise InputError("window collapses to a single abscissa")
    slope = sxy / sxx
    intercept = my - slope * mx
    r2 = 1.0 if syy == 0 else (sxy * sxy) / (sxx * syy)
    return FitResult(slope=slope, intercept=intercept, r2=r2, window=(lo, hi))


def fiber_histogram(ball: OrbitBall) -> dict:
    """Sizes of the fibers of the boundary projection over the ball.

    Fibers are saturated for length-type functionals (the value factors
    through the boundary image), so a frontier-exhausted ball carries
    whole fibers and the histogram is meaningful.
    """
    seed_b = currents.boundary_projection(ball.seed, ball.surface)
    if seed_b.is_zero():
        raise LemmaHypothesisError(
            "fiber statistics need a seed with nonzero boundary image")
    if not ball.frontier_exhausted:
        raise InputError("fiber statistics need a frontier-exhausted ball")
    sizes = {}
    for _, _, b_key in ball.members():
        sizes[b_key] = sizes.get(b_key, 0) + 1
    hist = {}
    for size in sizes.values():
        hist[size] = hist.get(size, 0) + 1
    return hist


def christoffel_word(p: int, q: int):
    """Lower Christoffel word with p letters 'a' and q letters 'b'.

    Negative q swaps b for its inverse, so coprime pairs modulo total
    sign sweep the primitive unoriented classes of the punctured torus.
    """
    if p == 0 and q == 0:
        raise InputError("slope (0, 0) is not a curve")
    if math.gcd(abs(p), abs(q)) != 1:
        raise InputError(f"({p}, {q}) is not coprime")
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    b_letter = 2 if q >= 0 else -2
    qa = abs(q)
    n = p + qa
    out = []
    prev = 0
    for i in range(1, n + 1):
        cur = (i * qa) // n
        out.append(1 if cur == prev else b_letter)
        prev = cur
    return tuple(out)


def scc_classes(surface, limit: float):
    """Simple closed geodesics of length <= limit, via the slope oracle.

    Walks the Stern-Brocot tree of coprime pairs; a subtree is pruned
    only after both children of an over-limit node are also seen over the
    limit, so trace monotonicity is verified locally rather than assumed.
    Returns [(slope, class, length)] sorted by length then slope.
    """
    out = []

    def measure(p, q):
        c = words.conj_class(christoffel_word(p, q))
        return c, geometry.geodesic_length(c, surface)

    for p, q in ((1, 0), (0, 1)):
        c, ell = measure(p, q)
        if ell <= limit:
            out.append(((p, q), c, ell))

    stack = [((1, 0), (0, 1), False), ((1, 0), (0, -1), False)]
    while stack:
        left, right, over = stack.pop()
        p, q = left[0] + right[0], left[1] + right[1]
        c, ell = measure(p, q)
        if ell <= limit:
            out.append(((p, q), c, ell))
            stack.append((left, (p, q), False))
            stack.append(((p, q), right, False))
        elif not over:
            stack.append((left, (p, q), True))
            stack.append(((p, q), right, True))
    out.sort(key=lambda row: (row[2], row[0]))
    return out


def scc_census(surface, limit: float, grid=None) -> CensusTable:
    """Counts of simple closed geodesics up to each grid length."""
    if grid is None:
        grid = make_grid(limit, max(1, int(limit)))
    grid = sorted(grid)
    if grid[-1] > limit:
        raise InputError(f"grid reaches {grid[-1]} beyond limit {limit}")
    lengths = sorted(ell for _, _, ell in scc_classes(surface, limit))
    rows = tuple((L, bisect_right(lengths, L)) for L in grid)
    return CensusTable(rows=rows, meta={
        "kind": "scc",
        "surface": surface.name,
        "exponent": 6 * surface.genus - 6 + 2 * surface.cusps,
    })


def mlz_census(surface, limit: float, grid=None):
    """Integer-multicurve counts and their L^2-normalized ratios.

    On the punctured torus every integer simple multicurve is a positive
    multiple of a single curve, so N(L) is a sum of floor(L / length)
    over the curve census.  The ratio column estimates the Thurston
    measure of the unit length ball.
    """
    if grid is None:
        grid = make_grid(limit, max(1, int(limit)))
    grid = sorted(grid)
    if grid[-1] > limit:
        raise InputError(f"grid reaches {grid[-1]} beyond limit {limit}")
    lengths = [ell for _, _, ell in scc_classes(surface, limit)]
    rows = []
    ratios = []
    for L in grid:
        n = sum(int(L / ell) for ell in lengths if ell <= L)
        rows.append((L, n))
        ratios.append(n / (L * L))
    table = CensusTable(rows=tuple(rows), meta={
        "kind": "mlz",
        "surface": surface.name,
        "exponent": 6 * surface.genus - 6 + 2 * surface.cusps,
    })
    return table, ratios
