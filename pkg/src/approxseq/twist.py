"""The reflection ``f(x) -> f(a + b - x)`` on piecewise-linear functions.

Besides the operator itself this module classifies midpoint symmetry, tests
periodicity, evaluates the left-derivative slope function of the reflected
function, and runs a seeded battery over five equivalent forms of convexity.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .core import DomainError, InputError, PreconditionError, Scalar
from .plfunc import PLFunc, evaluate, is_convex_fn, segment_slope_at, slopes


def twist(f: PLFunc) -> PLFunc:
    """Return ``g`` with ``g(x) = f(a + b - x)`` on the same interval."""
    s = f.a + f.b
    return PLFunc(tuple(s - x for x in reversed(f.xs)), tuple(reversed(f.ys)), f.mode)


class SymmetryClass(enum.Enum):
    EVEN = "even_about_midpoint"
    ODD = "odd_about_midpoint"
    NONE = "none"


def _clamp(f: PLFunc, x: Scalar) -> Scalar:
    return min(max(x, f.a), f.b)


def check_symmetry(f: PLFunc) -> SymmetryClass:
    """Classify ``f`` as even or odd about the midpoint of its domain.

    Both ``f`` and its reflection are piecewise linear, so comparing them on
    the union of their breakpoints decides the question. The zero function is
    reported as even.
    """
    g = twist(f)
    grid = sorted({_clamp(f, x) for x in f.xs + g.xs})
    eq = f.mode.eq
    if all(eq(evaluate(f, x), evaluate(g, x)) for x in grid):
        return SymmetryClass.EVEN
    if all(eq(evaluate(f, x) + evaluate(g, x), 0) for x in grid):
        return SymmetryClass.ODD
    return SymmetryClass.NONE


def recenter(f: PLFunc) -> PLFunc:
    """Shift the domain to ``[-(b-a)/2, (b-a)/2]``: ``g(t) = f((a+b)/2 + t)``."""
    mid = (f.a + f.b) / 2
    return PLFunc(tuple(x - mid for x in f.xs), f.ys, f.mode)


def is_periodic(f: PLFunc, period) -> bool:
    """True iff ``f(x) = f(x + L)`` whenever both points are in the domain.

    ``x -> f(x + L) - f(x)`` is piecewise linear on ``[a, b - L]`` with kinks
    only at breakpoints of ``f`` and their ``-L`` translates, so checking those
    points (plus the two ends) is exact.
    """
    L = f.mode.coerce(period)
    if not 0 < L < f.b - f.a:
        raise InputError(f"period must lie strictly between 0 and {f.b - f.a}, got {L}")
    hi = f.b - L
    grid = {f.a, hi}
    grid.update(x for x in f.xs if x <= hi)
    grid.update(x - L for x in f.xs if x - L >= f.a)
    return all(f.mode.eq(evaluate(f, x), evaluate(f, _clamp(f, x + L))) for x in grid)


def slope_function(f: PLFunc, u) -> Scalar:
    """Left derivative at ``u`` of the reflected function ``twist(f)``.

    This is the supremum of left chord slopes of ``twist(f)`` at ``u``; for a
    convex piecewise-linear function it is the slope of the segment ending at
    or containing ``u``.

    Raises:
        DomainError: ``u`` is the left end of the domain or outside it.
        PreconditionError: ``twist(f)`` (equivalently ``f``) is not convex.
    """
    g = twist(f)
    if not is_convex_fn(g):
        raise PreconditionError("slope function needs a convex function")
    u = f.mode.coerce(u)
    if not g.a < u <= g.b:
        raise DomainError(f"no left chords at u = {u} on [{g.a}, {g.b}]")
    return segment_slope_at(g, u, "left")


def _phi(g: PLFunc, u: Scalar) -> Scalar:
    # at the left end any value not above the first slope supports g; use that slope
    if u == g.a:
        return slopes(g)[0]
    return segment_slope_at(g, u, "left")


CONDITIONS = ("i", "ii", "iii", "iv", "v")


@dataclass(frozen=True)
class Thm11Report:
    """Outcome of the five convexity conditions for ``f`` and ``twist(f)``.

    The constructor does not force agreement; disagreements are what tests
    look for. ``violations`` holds at most one sample per failed condition.
    """

    i: bool
    ii: bool
    iii: bool
    iv: bool
    v: bool
    violations: Tuple[Tuple[str, tuple], ...] = ()
    seed: int = 0
    samples: int = 0

    @property
    def conditions(self) -> dict:
        return {c: getattr(self, c) for c in CONDITIONS}

    @property
    def consistent(self) -> bool:
        return len(set(self.conditions.values())) == 1


class _Sampler:
    def __init__(self, f: PLFunc, rng: random.Random, grain: int = 1009):
        self.f, self.rng, self.grain = f, rng, grain
        self._grid = {}

    def point(self) -> Scalar:
        k = self.rng.randint(0, self.grain)
        if k not in self._grid:
            f, t = self.f, Fraction(k, self.grain)
            self._grid[k] = f.a + (f.b - f.a) * (t if f.mode.is_exact else float(t))
        return self._grid[k]

    def distinct(self, k: int) -> List[Scalar]:
        pts = set()
        while len(pts) < k:
            pts.add(self.point())
        return sorted(pts)

    def weights(self, k: int) -> List[Scalar]:
        raw = [self.rng.randint(0, 12) for _ in range(k)]
        if not any(raw):
            raw[self.rng.randrange(k)] = 1
        total = sum(raw)
        w = [Fraction(r, total) for r in raw]
        return w if self.f.mode.is_exact else [float(x) for x in w]


def verify_thm11(f: PLFunc, sample_count: int, seed: int) -> Thm11Report:
    """Evaluate the five equivalent conditions for convexity of ``f``.

    (i) ``f`` convex. (ii) three-point chord inequality for ``g = twist(f)``.
    (iii) support inequality ``g(u) + (x - u) phi(u) <= g(x)`` with ``phi`` the
    left derivative of ``g``. (iv) Jensen's inequality for ``g`` with up to
    four points. (v) ``g`` convex.

    Conditions (ii)-(iv) are checked deterministically at breakpoint
    configurations of ``g`` and then at ``sample_count`` random exact-rational
    configurations drawn from ``random.Random(seed)``.
    """
    if sample_count < 1:
        raise InputError("sample_count must be at least 1")
    g = twist(f)
    mode = f.mode
    rng = random.Random(seed)
    draw = _Sampler(g, rng)
    bx = list(g.xs)
    violations = []
    seen = {}

    def G(x):
        # sample points repeat often, so remember values of g
        if x not in seen:
            seen[x] = evaluate(g, x)
        return seen[x]

    def first(name, configs, holds):
        for cfg in configs:
            if not holds(*cfg):
                violations.append((name, tuple(cfg)))
                return False
        return True

    def chord_ok(x, u, y):
        return mode.le((G(u) - G(x)) / (u - x), (G(y) - G(u)) / (y - u))

    def triples():
        for k in range(1, len(bx) - 1):
            yield bx[k - 1], bx[k], bx[k + 1]
        for _ in range(sample_count):
            yield draw.distinct(3)

    def support_ok(u, x):
        return mode.le(G(u) + (x - u) * _phi(g, u), G(x))

    def pairs():
        for u in bx:
            for x in bx:
                yield u, x
        for _ in range(sample_count):
            yield draw.point(), draw.point()

    def jensen_ok(xs, ts):
        centre = sum(t * x for t, x in zip(ts, xs))
        centre = min(max(centre, g.a), g.b)
        return mode.le(G(centre), sum(t * G(x) for t, x in zip(ts, xs)))

    def combos():
        for k in range(1, len(bx) - 1):
            x0, x1, x2 = bx[k - 1], bx[k], bx[k + 1]
            t = (x2 - x1) / (x2 - x0)
            yield (x0, x2), (t, 1 - t)
        for _ in range(sample_count):
            n = rng.randint(1, 4)
            yield tuple(draw.point() for _ in range(n)), tuple(draw.weights(n))

    c1 = is_convex_fn(f)
    if not c1:
        s = slopes(f)
        k = next(k for k in range(1, len(s)) if not mode.le(s[k - 1], s[k]))
        violations.append(("i", (f.xs[k - 1], f.xs[k], f.xs[k + 1])))
    c2 = first("ii", triples(), chord_ok)
    c3 = first("iii", pairs(), support_ok)
    c4 = first("iv", combos(), jensen_ok)
    c5 = is_convex_fn(g)
    if not c5:
        s = slopes(g)
        k = next(k for k in range(1, len(s)) if not mode.le(s[k - 1], s[k]))
        violations.append(("v", (g.xs[k - 1], g.xs[k], g.xs[k + 1])))
    return Thm11Report(c1, c2, c3, c4, c5, tuple(violations), seed, sample_count)
