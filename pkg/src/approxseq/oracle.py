"""Brute-force reference deficits, seeded generators and a falsification harness.

Nothing here imports :mod:`approxseq.analyze` or :mod:`approxseq.decompose`;
the exhaustive scans are the yardstick the fast implementations are held to.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from .core import EXACT, InputError, Scalar, Seq
from .plfunc import PLFunc

CLASSES = (
    "arbitrary",
    "monotone",
    "convex",
    "eps_monotone",
    "eps_convex",
    "positive_decreasing_convex",
    "log_convex",
)
_NEEDS_THREE = {"convex", "eps_convex", "positive_decreasing_convex", "log_convex"}
_NEEDS_EPS = {"eps_monotone", "eps_convex"}


@dataclass(frozen=True)
class GenSpec:
    kind: str
    length: int
    seed: int = 0
    value_bound: int = 10
    eps: Optional[Fraction] = None

    def rng(self) -> random.Random:
        return random.Random(f"{self.kind}|{self.length}|{self.seed}|{self.value_bound}|{self.eps}")


def _validate(spec: GenSpec) -> Fraction:
    if spec.kind not in CLASSES:
        raise InputError(f"unknown sequence class {spec.kind!r}")
    if not isinstance(spec.length, int) or spec.length < 1:
        raise InputError("length must be a positive integer")
    if spec.kind in _NEEDS_THREE and spec.length < 3:
        raise InputError(f"class {spec.kind} needs length at least 3")
    if not isinstance(spec.value_bound, int) or spec.value_bound < 1:
        raise InputError("value_bound must be a positive integer")
    if spec.kind in _NEEDS_EPS:
        if spec.eps is None:
            raise InputError(f"class {spec.kind} needs eps")
        eps = Fraction(spec.eps)
        if eps < 0:
            raise InputError("eps must be nonnegative")
        return eps
    return Fraction(0)


def _steps(rng: random.Random, n: int, bound: int) -> List[int]:
    # zero steps are drawn half the time so flat stretches (and ties) are common
    return [0 if rng.random() < 0.5 else rng.randint(1, bound) for _ in range(n)]


def _cumulative(start, steps) -> List[Fraction]:
    out = [Fraction(start)]
    for s in steps:
        out.append(out[-1] + s)
    return out


def _convex_values(rng: random.Random, n: int, bound: int) -> List[Fraction]:
    d = Fraction(rng.randint(-bound, bound))
    incs = []
    for bump in _steps(rng, n - 1, bound):
        d += bump
        incs.append(d)
    return _cumulative(rng.randint(-bound, bound), incs)


def _wobble(rng: random.Random, half_eps: Fraction) -> Fraction:
    return half_eps * Fraction(rng.randint(-4, 4), 4)


def generate(spec: GenSpec) -> Seq:
    """Deterministic exact-mode sequence of the requested class.

    ``eps_monotone`` adds an oscillation within ``eps/2`` of zero to a
    nondecreasing sequence; ``eps_convex`` adds a sequence whose consecutive
    steps are at most ``eps/2`` to a convex one.
    """
    eps = _validate(spec)
    rng, n, B = spec.rng(), spec.length, spec.value_bound
    if spec.kind == "arbitrary":
        vals = [Fraction(rng.randint(-B, B)) for _ in range(n)]
    elif spec.kind == "monotone":
        vals = _cumulative(rng.randint(-B, B), _steps(rng, n - 1, B))
    elif spec.kind == "convex":
        vals = _convex_values(rng, n, B)
    elif spec.kind == "eps_monotone":
        base = _cumulative(rng.randint(-B, B), _steps(rng, n - 1, B))
        vals = [x + _wobble(rng, eps / 2) for x in base]
    elif spec.kind == "eps_convex":
        base = _convex_values(rng, n, B)
        h = [Fraction(0)]
        for _ in range(n - 1):
            h.append(h[-1] + _wobble(rng, eps / 2))
        vals = [x + y for x, y in zip(base, h)]
    elif spec.kind == "positive_decreasing_convex":
        # increments d_1 <= ... <= d_{N-1} <= 0, built from the right end
        incs = [Fraction(-rng.randint(0, B))]
        for _ in range(n - 2):
            incs.append(incs[-1] - rng.randint(0, B))
        incs.reverse()
        vals = [Fraction(rng.randint(1, B))]
        for d in reversed(incs):
            vals.append(vals[-1] - d)
        vals.reverse()
    else:  # log_convex: nondecreasing ratios u_n / u_{n-1}
        ratio = Fraction(rng.randint(1, B), rng.randint(1, B))
        vals = [Fraction(rng.randint(1, B))]
        for _ in range(n - 1):
            vals.append(vals[-1] * ratio)
            ratio += Fraction(rng.randint(0, 2), 4)
    return Seq(tuple(vals), EXACT)


def _zero(u: Seq) -> Scalar:
    return Fraction(0) if u.mode.is_exact else 0.0


def brute_deficit(u: Seq, prop: str, k: int = 2) -> Scalar:
    """Minimal epsilon for ``prop`` by exhaustive scan over index pairs.

    ``prop`` is one of ``monotone``, ``convex``, ``holder``, ``lipschitz`` or
    ``order_k`` (with order ``k``).
    """
    v, N = u.values, len(u)
    best = _zero(u)
    if prop == "monotone":
        for m in range(N):
            for n in range(m + 1, N):
                best = max(best, v[m] - v[n])
    elif prop == "convex":
        if N < 3:
            raise InputError("convex deficit needs at least 3 terms")
        for i in range(1, N):
            for j in range(i + 1, N):
                best = max(best, (v[i] - v[i - 1]) - (v[j] - v[j - 1]))
    elif prop == "holder":
        for m in range(N):
            for n in range(N):
                best = max(best, abs(v[n] - v[m]))
    elif prop == "lipschitz":
        if N < 2:
            raise InputError("Lipschitz modulus needs at least 2 terms")
        for m in range(N):
            for n in range(m + 1, N):
                gap = Fraction(n - m) if u.mode.is_exact else float(n - m)
                best = max(best, abs(v[n] - v[m]) / gap)
    elif prop in ("order_k", "order-k"):
        if not isinstance(k, int) or k < 1:
            raise InputError("order must be a positive integer")
        if N < k + 1:
            raise InputError(f"order-{k} deficit needs at least {k + 1} terms")
        for m in range(N - k):
            total = sum((-1) ** r * comb(k, r) * v[m + k - r] for r in range(k + 1))
            best = max(best, -total)
    else:
        raise InputError(f"unknown property {prop!r}")
    return best


# -- falsification ---------------------------------------------------------

PROPOSITIONS = ("P1", "P2_forward", "P2_reverse", "P20000", "T9999")


@dataclass(frozen=True)
class Counterexample:
    """Input on which a proposition's hypothesis holds and its conclusion fails.

    ``context`` carries any extra data the proposition quantifies over (the
    added sequence for P20000, the function breakpoints for T9999).
    """

    proposition: str
    input: Seq
    violation: str
    context: Dict[str, object] = field(default_factory=dict)


def _nonincreasing(v) -> bool:
    return all(v[i] <= v[i - 1] for i in range(1, len(v)))


def _nondecreasing(v) -> bool:
    return all(v[i - 1] <= v[i] for i in range(1, len(v)))


def _second_diff_failure(v, sign: int) -> Optional[str]:
    # sign=+1 tests 2 v_n <= v_{n-1} + v_{n+1}; sign=-1 the reverse
    for n in range(1, len(v) - 1):
        lhs, rhs = 2 * v[n], v[n - 1] + v[n + 1]
        if sign * (rhs - lhs) < 0:
            op = "<=" if sign > 0 else ">="
            return f"2*u_{n} {op} u_{n - 1} + u_{n + 1} fails: {lhs} vs {rhs}"
    return None


def _check_p1(v, ctx) -> Optional[str]:
    if any(x < 0 for x in v):
        return None
    if any(v[n] * v[n] > v[n - 1] * v[n + 1] for n in range(1, len(v) - 1)):
        return None
    return _second_diff_failure(v, +1)


def _check_p2_forward(v, ctx) -> Optional[str]:
    if any(x <= 0 for x in v) or not _nonincreasing(v) or _second_diff_failure(v, +1):
        return None
    r = [1 / x for x in v]
    if not _nondecreasing(r):
        return f"reciprocal [{', '.join(map(str, r))}] is not nondecreasing"
    bad = _second_diff_failure(r, -1)
    return _reciprocal_message(r, bad) if bad else None


def _reciprocal_message(r, bad: str) -> str:
    shown = ", ".join(str(x) for x in r)
    return f"reciprocal [{shown}]: " + bad.replace("u_", "v_")


def _check_p2_reverse(v, ctx) -> Optional[str]:
    if any(x <= 0 for x in v) or not _nondecreasing(v) or _second_diff_failure(v, -1):
        return None
    r = [1 / x for x in v]
    if not _nonincreasing(r):
        return f"reciprocal [{', '.join(map(str, r))}] is not nonincreasing"
    bad = _second_diff_failure(r, +1)
    return _reciprocal_message(r, bad) if bad else None


def _check_p20000(v, ctx) -> Optional[str]:
    h, eps = ctx["h"], ctx["eps"]
    if _second_diff_failure(v, +1):
        return None
    if any(abs(a - b) > eps / 2 for a in h for b in h):
        return None
    w = [a + b for a, b in zip(v, h)]
    for i in range(1, len(w)):
        for j in range(i + 1, len(w)):
            lhs, rhs = w[i] - w[i - 1], w[j] - w[j - 1] + eps
            if lhs > rhs:
                return f"w_{i} - w_{i - 1} <= w_{j} - w_{j - 1} + eps fails: {lhs} > {rhs}"
    return None


def _interp(points, x):
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise InputError(f"{x} outside the breakpoint range")


def _check_t9999(v, ctx) -> Optional[str]:
    pts = ctx["f"]
    ss = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
    if any(s < 0 for s in ss) or not _nondecreasing(ss):
        return None
    if not _nondecreasing(v) or _second_diff_failure(v, +1):
        return None
    if any(not pts[0][0] <= x <= pts[-1][0] for x in v):
        return None
    fu = [_interp(pts, x) for x in v]
    bad = _second_diff_failure(fu, +1)
    return bad.replace("u_", "f(u)_") if bad else None


_CHECKS = {
    "P1": _check_p1,
    "P2_forward": _check_p2_forward,
    "P2_reverse": _check_p2_reverse,
    "P20000": _check_p20000,
    "T9999": _check_t9999,
}


def recheck(cx: Counterexample) -> bool:
    """True iff the stored counterexample still violates its proposition."""
    return _CHECKS[cx.proposition](cx.input.values, cx.context) is not None


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def _random_case(prop: str, rng: random.Random) -> Tuple[List[Fraction], dict]:
    n = rng.randint(3, 12)
    spec_seed = rng.randrange(2**31)
    if prop == "P1":
        if rng.random() < 0.8:
            return list(generate(GenSpec("log_convex", n, spec_seed, 6)).values), {}
        return [Fraction(rng.randint(0, 9)) for _ in range(n)], {}
    if prop == "P2_forward":
        return list(generate(GenSpec("positive_decreasing_convex", n, spec_seed, 9)).values), {}
    if prop == "P2_reverse":
        vals = list(generate(GenSpec("positive_decreasing_convex", n, spec_seed, 9)).values)
        top = max(vals) + 1
        # negating a decreasing convex sequence gives an increasing concave one
        return [top - x + 1 for x in vals], {}
    if prop == "P20000":
        eps = rng.choice([Fraction(1, 2), Fraction(1), Fraction(3), Fraction(rng.randint(0, 8), 3)])
        base = list(generate(GenSpec("convex", n, spec_seed, 9)).values)
        c = Fraction(rng.randint(-5, 5))
        h = [c + eps / 2 * Fraction(rng.randint(0, 6), 6) for _ in range(n)]
        return base, {"h": h, "eps": eps}
    if prop == "T9999":
        k = rng.randint(1, 5)
        s = Fraction(rng.randint(0, 4), rng.randint(1, 3))
        pts = [(Fraction(0), Fraction(rng.randint(-5, 5)))]
        for _ in range(k):
            x = pts[-1][0] + rng.randint(1, 4)
            pts.append((x, pts[-1][1] + s * (x - pts[-1][0])))
            s += Fraction(rng.randint(0, 3), rng.randint(1, 3))
        hi = pts[-1][0]
        # nondecreasing convex u squeezed into [0, hi]
        incs = sorted(Fraction(rng.randint(0, 6)) for _ in range(n - 1))
        raw = [Fraction(0)]
        for d in incs:
            raw.append(raw[-1] + d)
        scale = hi / raw[-1] if raw[-1] else Fraction(0)
        return [x * scale for x in raw], {"f": pts}
    raise InputError(f"unknown proposition {prop!r}")


_ENUMERATED = {"P1", "P2_forward", "P2_reverse"}


def falsify(prop: str, trials: int, seed: int, bound: int = 6, max_len: int = 5) -> Optional[Counterexample]:
    """Search for a counterexample to ``prop``; ``None`` if none is found.

    Sequence-only propositions first enumerate every integer sequence with
    entries in ``[1, bound]`` and lengths ``3 .. max_len`` in lexicographic
    order, then run ``trials`` random cases, trial ``t`` seeded from
    ``(seed, t)``. The first violation wins.
    """
    if prop not in _CHECKS:
        raise InputError(f"unknown proposition {prop!r}; expected one of {PROPOSITIONS}")
    if trials < 0:
        raise InputError("trials must be nonnegative")
    check = _CHECKS[prop]
    if prop in _ENUMERATED:
        for n in range(3, max_len + 1):
            for combo in itertools.product(range(1, bound + 1), repeat=n):
                vals = [Fraction(x) for x in combo]
                bad = check(vals, {})
                if bad:
                    return Counterexample(prop, Seq(tuple(vals), EXACT), bad)
    for t in range(trials):
        vals, ctx = _random_case(prop, _trial_rng(seed, t))
        bad = check(vals, ctx)
        if bad:
            return Counterexample(prop, Seq(tuple(vals), EXACT), bad, ctx)
    return None


# -- random piecewise-linear functions --------------------------------------

PL_KINDS = ("any", "convex", "nonconvex", "nondecreasing", "periodic")


def _rat(rng: random.Random, lo: int, hi: int, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def _from_slopes(rng, a, widths, slopes_, y0) -> PLFunc:
    xs, ys = [a], [y0]
    for w, s in zip(widths, slopes_):
        xs.append(xs[-1] + w)
        ys.append(ys[-1] + s * w)
    return PLFunc(tuple(xs), tuple(ys), EXACT)


def random_plfunc(rng: random.Random, kind: str = "any", max_segments: int = 6):
    """Random exact piecewise-linear function of the requested kind.

    ``periodic`` returns a pair ``(f, L)``: one random period pattern tiled
    and cut at a domain end that need not be a multiple of ``L``.
    """
    if kind not in PL_KINDS:
        raise InputError(f"unknown PL kind {kind!r}")
    a = _rat(rng, -5, 5)
    y0 = _rat(rng, -5, 5)
    k = rng.randint(1, max_segments)
    widths = [Fraction(rng.randint(1, 8), rng.randint(1, 4)) for _ in range(k)]
    if kind == "any":
        return _from_slopes(rng, a, widths, [_rat(rng, -4, 4) for _ in range(k)], y0)
    if kind == "convex":
        ss = sorted(_rat(rng, -4, 4) for _ in range(k))
        return _from_slopes(rng, a, widths, ss, y0)
    if kind == "nondecreasing":
        return _from_slopes(rng, a, widths, [_rat(rng, 0, 4) for _ in range(k)], y0)
    if kind == "nonconvex":
        k = max(k, 2)
        widths = [Fraction(rng.randint(1, 8), rng.randint(1, 4)) for _ in range(k)]
        ss = [_rat(rng, -4, 4) for _ in range(k)]
        i = rng.randrange(1, k)
        if ss[i - 1] <= ss[i]:
            ss[i - 1], ss[i] = ss[i] + _rat(rng, 0, 2) + Fraction(1, 4), ss[i - 1]
        return _from_slopes(rng, a, widths, ss, y0)
    # periodic
    L = Fraction(rng.randint(1, 6), rng.randint(1, 2))
    m = rng.randint(1, 3)
    inner = sorted({Fraction(rng.randint(1, 11), 12) * L for _ in range(m)})
    pattern = [(Fraction(0), y0)] + [(t, _rat(rng, -5, 5)) for t in inner]
    reps = rng.randint(2, 4)
    pts = []
    for r in range(reps):
        pts.extend((a + r * L + t, y) for t, y in pattern)
    pts.append((a + reps * L, y0))
    cut = a + L * reps - L * Fraction(rng.randint(0, 8), 12)
    full = PLFunc(tuple(p[0] for p in pts), tuple(p[1] for p in pts), EXACT)
    kept = [(x, y) for x, y in zip(full.xs, full.ys) if x < cut]
    kept.append((cut, full(cut)))
    return PLFunc.from_points(kept, EXACT), L
