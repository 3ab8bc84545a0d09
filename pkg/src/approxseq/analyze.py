"""Minimal-epsilon deficits for approximate monotonicity, convexity and friends.

Each deficit is computed in linear time (order-k in ``O(N k)``) and comes with
the lexicographically smallest index tuple at which the maximum is attained.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .core import DeficitReport, InputError, PreconditionError, Scalar, Seq


def _first_max_drop(values: Sequence[Scalar], zero: Scalar) -> Tuple[Scalar, Tuple[int, int]]:
    """Largest ``values[m] - values[n]`` over ``m < n`` clipped at zero.

    Returns the value and the lexicographically smallest maximising pair, or an
    empty pair when the clipped value is zero.
    """
    n = len(values)
    if n < 2:
        return zero, ()
    best = None
    run_max = values[0]
    for k in range(1, n):
        drop = run_max - values[k]
        if best is None or drop > best:
            best = drop
        if values[k] > run_max:
            run_max = values[k]
    if best <= 0:
        return zero, ()
    # smallest m whose suffix minimum realises the drop, then smallest n for it
    suffix_min: List[Scalar] = [values[-1]] * n
    for k in range(n - 2, -1, -1):
        suffix_min[k] = min(values[k], suffix_min[k + 1])
    for m in range(n - 1):
        if values[m] - suffix_min[m + 1] == best:
            for k in range(m + 1, n):
                if values[m] - values[k] == best:
                    return best, (m, k)
    raise AssertionError("maximising pair not found")  # pragma: no cover


def monotone_deficit(u: Seq) -> DeficitReport:
    """Smallest ``eps`` with ``u_m <= u_n + eps`` for every ``m < n``."""
    eps, witness = _first_max_drop(u.values, u.mode.zero())
    return DeficitReport("monotone", eps, witness, u.mode)


def convex_deficit(u: Seq) -> DeficitReport:
    """Smallest ``eps`` with ``D_i <= D_j + eps`` for all ``1 <= i < j <= N-1``.

    Here ``D_i = u_i - u_{i-1}``. The witness ``(i, j)`` uses these increment
    indices, so ``[0, 2, 3]`` reports ``(1, 2)``.
    """
    u.require_length(3, "convex_deficit")
    v = u.values
    deltas = [v[i] - v[i - 1] for i in range(1, len(v))]
    eps, pair = _first_max_drop(deltas, u.mode.zero())
    witness = tuple(k + 1 for k in pair)
    return DeficitReport("convex", eps, witness, u.mode)


def holder_deficit(u: Seq) -> DeficitReport:
    """Oscillation ``max(u) - min(u)``: the least ``eps`` making ``u`` eps-Hoelder."""
    v = u.values
    hi, lo = max(v), min(v)
    eps = hi - lo
    if eps == 0:
        return DeficitReport("holder", u.mode.zero(), (), u.mode)
    first_hi, first_lo = v.index(hi), v.index(lo)
    m = min(first_hi, first_lo)
    other = lo if m == first_hi else hi
    n = v.index(other, m + 1)
    return DeficitReport("holder", eps, (m, n), u.mode)


def lipschitz_modulus(u: Seq) -> DeficitReport:
    """Least ``l`` with ``|u_n - u_m| <= l |n - m|``.

    By the triangle inequality this is the largest absolute increment, and the
    smallest maximising pair is always a consecutive one.
    """
    u.require_length(2, "lipschitz_modulus")
    v = u.values
    steps = [abs(v[i] - v[i - 1]) for i in range(1, len(v))]
    best = max(steps)
    if best == 0:
        return DeficitReport("lipschitz", u.mode.zero(), (), u.mode)
    i = steps.index(best) + 1
    return DeficitReport("lipschitz", best, (i - 1, i), u.mode)


def forward_differences(u: Seq, k: int) -> List[Scalar]:
    """k-th forward differences by repeated differencing."""
    row = list(u.values)
    for _ in range(k):
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return row


def order_k_deficit(u: Seq, k: int) -> DeficitReport:
    """Deficit of k-th order convexity, ``max(0, -min_m (D^k u)_m)``.

    Every window ``m = 0 .. N-1-k`` is required to be nonnegative. The witness
    is the one-element tuple ``(m,)`` of the first most negative window.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InputError(f"order must be a positive integer, got {k!r}")
    u.require_length(k + 1, f"order-{k} deficit")
    diffs = forward_differences(u, k)
    low = min(diffs)
    name = f"order_{k}"
    if low >= 0:
        return DeficitReport(name, u.mode.zero(), (), u.mode)
    return DeficitReport(name, -low, (diffs.index(low),), u.mode)


def geometric_mean_test(u: Seq) -> bool:
    """True iff ``u_n**2 <= u_{n-1} u_{n+1}`` at every interior index.

    Nonnegative input is required; such sequences are convex.
    """
    u.require_length(3, "geometric_mean_test")
    v = u.values
    for i, x in enumerate(v):
        if x < 0:
            raise InputError(f"negative entry u_{i} = {x}")
    return all(u.mode.le(v[n] * v[n], v[n - 1] * v[n + 1]) for n in range(1, len(v) - 1))


def cauchy_epsilon(u: Seq, r: int, delta) -> Scalar:
    """Monotonicity bound ``gamma + delta`` for a sequence settled after index ``r``.

    ``gamma`` is the larger of ``delta`` and the oscillation of ``u_0 .. u_r``.
    The tail ``u_r .. u_{N-1}`` must oscillate by at most ``delta``.

    Raises:
        PreconditionError: the tail oscillates by more than ``delta``; the
            witness is the extreme pair found.
    """
    mode = u.mode
    delta = mode.coerce(delta)
    if not 0 <= r < len(u):
        raise InputError(f"index r={r} outside 0..{len(u) - 1}")
    if delta < 0:
        raise InputError("delta must be nonnegative")
    tail = u.values[r:]
    hi, lo = max(tail), min(tail)
    if not mode.le(hi - lo, delta):
        pair = sorted((r + tail.index(hi), r + tail.index(lo)))
        raise PreconditionError(
            f"tail condition fails: |u_{pair[0]} - u_{pair[1]}| = {hi - lo} > delta = {delta}",
            tuple(pair),
        )
    head = u.values[: r + 1]
    gamma = max(max(head) - min(head), delta)
    return gamma + delta


PROPERTIES = ("monotone", "convex", "holder", "lipschitz")


def deficit(u: Seq, prop: str, k: int = 2) -> DeficitReport:
    """Dispatch on a property name; ``order_k`` (or ``order-k``) uses ``k``."""
    table = {
        "monotone": monotone_deficit,
        "convex": convex_deficit,
        "holder": holder_deficit,
        "lipschitz": lipschitz_modulus,
    }
    if prop in table:
        return table[prop](u)
    if prop in ("order_k", "order-k"):
        return order_k_deficit(u, k)
    raise InputError(f"unknown property {prop!r}")
