"""Piecewise-linear functions on a compact interval and sequence extensions."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import EXACT, DomainError, InputError, Mode, Scalar, Seq, infer_mode


def _normalize(xs: List[Scalar], ys: List[Scalar]) -> Tuple[tuple, tuple]:
    # drop interior breakpoints lying exactly on the chord of their neighbours
    out_x, out_y = [xs[0]], [ys[0]]
    for i in range(1, len(xs)):
        out_x.append(xs[i])
        out_y.append(ys[i])
        while len(out_x) >= 3:
            x0, x1, x2 = out_x[-3:]
            y0, y1, y2 = out_y[-3:]
            if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
                break
            del out_x[-2], out_y[-2]
    return tuple(out_x), tuple(out_y)


@dataclass(frozen=True)
class PLFunc:
    """Continuous piecewise-linear function given by its breakpoints.

    The stored form is normalized: abscissae strictly increase and no interior
    breakpoint is collinear with its neighbours, so two functions are equal
    exactly when their graphs coincide on the same domain.
    """

    xs: Tuple[Scalar, ...]
    ys: Tuple[Scalar, ...]
    mode: Mode = EXACT

    def __post_init__(self):
        xs = [self.mode.coerce(x) for x in self.xs]
        ys = [self.mode.coerce(y) for y in self.ys]
        if len(xs) != len(ys):
            raise InputError("breakpoint abscissae and ordinates differ in length")
        if len(xs) < 2:
            raise InputError("a piecewise-linear function needs at least two breakpoints")
        for i in range(1, len(xs)):
            if not xs[i - 1] < xs[i]:
                raise InputError(f"abscissae not strictly increasing at index {i}")
        xs, ys = _normalize(xs, ys)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        # cached outside the dataclass fields, so equality and repr ignore it
        object.__setattr__(self, "_slopes", tuple(
            (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]) for i in range(1, len(xs))
        ))

    @classmethod
    def from_points(cls, points: Iterable[Sequence], mode: Optional[Mode] = None) -> "PLFunc":
        points = [tuple(p) for p in points]
        if any(len(p) != 2 for p in points):
            raise InputError("breakpoints must be (x, y) pairs")
        if mode is None:
            mode = infer_mode([c for p in points for c in p])
        return cls(tuple(p[0] for p in points), tuple(p[1] for p in points), mode)

    @property
    def points(self) -> List[Tuple[Scalar, Scalar]]:
        return list(zip(self.xs, self.ys))

    @property
    def a(self) -> Scalar:
        return self.xs[0]

    @property
    def b(self) -> Scalar:
        return self.xs[-1]

    @property
    def segments(self) -> int:
        return len(self.xs) - 1

    def __call__(self, x) -> Scalar:
        return evaluate(self, x)

    def __neg__(self) -> "PLFunc":
        return PLFunc(self.xs, tuple(-y for y in self.ys), self.mode)

    def __add__(self, other: "PLFunc") -> "PLFunc":
        """Pointwise sum; both functions must share domain and mode."""
        if self.mode != other.mode or (self.a, self.b) != (other.a, other.b):
            raise InputError("sum needs functions on the same domain and mode")
        xs = sorted(set(self.xs) | set(other.xs))
        return PLFunc(tuple(xs), tuple(self(x) + other(x) for x in xs), self.mode)


def evaluate(f: PLFunc, x) -> Scalar:
    """Linear interpolation on the segment containing ``x``.

    Raises:
        DomainError: ``x`` lies outside ``[a, b]``.
    """
    x = f.mode.coerce(x)
    xs, ys = f.xs, f.ys
    if x < xs[0] or x > xs[-1]:
        raise DomainError(f"x = {x} outside [{xs[0]}, {xs[-1]}]")
    i = bisect_left(xs, x)
    if xs[i] == x:
        return ys[i]
    return ys[i - 1] + f._slopes[i - 1] * (x - xs[i - 1])


def extend(u: Seq) -> PLFunc:
    """Interpolate ``u`` at ``0 .. N-1`` by straight segments."""
    u.require_length(2, "extend")
    return PLFunc(tuple(range(len(u))), u.values, u.mode)


def slopes(f: PLFunc) -> Tuple[Scalar, ...]:
    """Segment slopes ``s_1 .. s_K``."""
    return f._slopes


def segment_slope_at(f: PLFunc, x, side: str = "left") -> Scalar:
    """Slope of the segment touching ``x`` from the given side.

    At a breakpoint the left and right segments differ; in the interior of a
    segment both sides agree.
    """
    x = f.mode.coerce(x)
    s = slopes(f)
    if side == "left":
        if not f.a < x <= f.b:
            raise DomainError(f"no segment to the left of {x}")
        return s[bisect_left(f.xs, x) - 1]
    if side == "right":
        if not f.a <= x < f.b:
            raise DomainError(f"no segment to the right of {x}")
        return s[bisect_right(f.xs, x) - 1]
    raise InputError(f"side must be 'left' or 'right', got {side!r}")


def chord_slope(f: PLFunc, x, y) -> Scalar:
    x, y = f.mode.coerce(x), f.mode.coerce(y)
    if x == y:
        raise InputError("chord slope needs two distinct points")
    return (evaluate(f, y) - evaluate(f, x)) / (y - x)


def is_convex_fn(f: PLFunc) -> bool:
    s = slopes(f)
    return all(f.mode.le(s[i - 1], s[i]) for i in range(1, len(s)))


def is_nondecreasing_fn(f: PLFunc) -> bool:
    return all(f.mode.le(0, s) for s in slopes(f))


def _max_forward_drop(values: Sequence[Scalar], zero: Scalar) -> Scalar:
    best = zero
    run_max = values[0]
    for v in values[1:]:
        if run_max - v > best:
            best = run_max - v
        if v > run_max:
            run_max = v
    return best


def eps_monotone_deficit_fn(f: PLFunc) -> Scalar:
    """Least ``eps`` with ``f(x) <= f(y) + eps`` for all ``x < y``.

    Extremes of a piecewise-linear function sit at breakpoints, so the scan
    runs over breakpoint values only.
    """
    return _max_forward_drop(f.ys, f.mode.zero())


def eps_convex_deficit_fn(f: PLFunc) -> Scalar:
    """Largest drop ``s_i - s_j`` among segment slopes with ``i < j``.

    This matches the increment form used for sequences, so it agrees with
    ``convex_deficit`` on extensions. It bounds the three-point chord gap
    ``chord(x,u) - chord(u,y)`` from above, and the two vanish together.
    """
    s = slopes(f)
    if len(s) < 2:
        return f.mode.zero()
    return _max_forward_drop(s, f.mode.zero())


def mediant_bounds(numerators: Sequence, denominators: Sequence, mode: Optional[Mode] = None):
    """Return ``(min a_i/b_i, sum a / sum b, max a_i/b_i)``; the middle lies between.

    Raises:
        InputError: lengths differ, are zero, or a denominator is not positive.
    """
    if len(numerators) != len(denominators) or not numerators:
        raise InputError("need equally many numerators and denominators, at least one")
    if mode is None:
        mode = infer_mode(list(numerators) + list(denominators))
    a = [mode.coerce(x) for x in numerators]
    b = [mode.coerce(x) for x in denominators]
    for i, d in enumerate(b):
        if not d > 0:
            raise InputError(f"denominator b_{i} = {d} is not positive")
    ratios = [x / d for x, d in zip(a, b)]
    return min(ratios), sum(a) / sum(b), max(ratios)
