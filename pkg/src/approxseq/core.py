"""Scalars, sequences, reports and certificates shared by every other module.

Two scalar modes exist. In exact mode every value is a :class:`fractions.Fraction`
and all comparisons are decided without slack. In float mode values are Python
floats and ``a <= b`` is read as ``a <= b + tol``. A single computation never
mixes the two.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Optional, Tuple, Union

Scalar = Union[Fraction, float]

DEFAULT_TOL = 1e-9


class ApproxSeqError(Exception):
    """Base class for every error raised by this package."""


class InputError(ApproxSeqError, ValueError):
    """Malformed or too-short input."""


class ModeError(ApproxSeqError, TypeError):
    """Exact and float scalars were mixed."""


class DomainError(ApproxSeqError, ValueError):
    """A point lies outside the domain of a function."""


class PreconditionError(ApproxSeqError, ValueError):
    """A mathematical hypothesis of an operation does not hold.

    ``witness`` carries the offending indices (or a short label) when one exists.
    """

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = tuple(witness)


@dataclass(frozen=True)
class Mode:
    """Arithmetic mode: ``exact`` (rationals) or ``float`` with a tolerance."""

    kind: str = "exact"
    tol: float = 0.0

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise InputError(f"unknown mode {self.kind!r}")
        if self.kind == "exact" and self.tol != 0:
            raise InputError("exact mode carries no tolerance")
        if self.tol < 0:
            raise InputError("tolerance must be nonnegative")

    @classmethod
    def floating(cls, tol: float = DEFAULT_TOL) -> "Mode":
        return cls("float", float(tol))

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def coerce(self, x) -> Scalar:
        """Convert ``x`` into this mode's scalar type.

        Integers are accepted by both modes. A float in exact mode, or a
        non-integral rational in float mode, raises :class:`ModeError`.
        ``bool`` is rejected outright.
        """
        if isinstance(x, bool):
            raise InputError(f"not a number: {x!r}")
        if self.is_exact:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, Rational):
                return Fraction(x)
            if isinstance(x, float):
                raise ModeError(f"float {x!r} in exact mode")
        else:
            if isinstance(x, float):
                return x
            if isinstance(x, int):
                return float(x)
            if isinstance(x, Rational):
                if x.denominator == 1:
                    return float(x)
                raise ModeError(f"rational {x} in float mode")
        raise InputError(f"not a number: {x!r}")

    # comparisons are one-sided: a <= b means a <= b + tol
    def le(self, a: Scalar, b: Scalar) -> bool:
        return a <= b + self.tol if self.tol else a <= b

    def ge(self, a: Scalar, b: Scalar) -> bool:
        return self.le(b, a)

    def eq(self, a: Scalar, b: Scalar) -> bool:
        return abs(a - b) <= self.tol

    def zero(self) -> Scalar:
        return Fraction(0) if self.is_exact else 0.0

    def __str__(self) -> str:
        return "exact" if self.is_exact else f"float:{self.tol!r}"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        if text == "exact":
            return EXACT
        if text == "float":
            return cls.floating()
        if text.startswith("float:"):
            try:
                return cls.floating(float(text[len("float:"):]))
            except ValueError:
                pass
        raise InputError(f"unknown mode {text!r}")


EXACT = Mode()


def infer_mode(values: Iterable, tol: Optional[float] = None) -> Mode:
    """Pick the mode implied by a collection of raw numbers.

    Floats select float mode, non-integral rationals select exact mode, plain
    integers are neutral (exact when nothing else decides). Both kinds present
    raise :class:`ModeError`.
    """
    saw_float = saw_rational = False
    for x in values:
        if isinstance(x, float):
            saw_float = True
        elif isinstance(x, Fraction) and x.denominator != 1:
            saw_rational = True
    if saw_float and saw_rational:
        raise ModeError("exact rationals and floats mixed in one sequence")
    if saw_float or tol is not None:
        if saw_rational:
            raise ModeError("tolerance given for exact rational input")
        return Mode.floating(DEFAULT_TOL if tol is None else tol)
    return EXACT


@dataclass(frozen=True)
class Seq(Sequence):
    """Finite prefix ``u_0 .. u_{N-1}`` of a real sequence.

    Build with :func:`seq_from_values`; the constructor itself only validates.
    """

    values: Tuple[Scalar, ...]
    mode: Mode = EXACT

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.mode.coerce(x) for x in self.values))
        if not self.values:
            raise InputError("a sequence needs at least one term")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.values)

    def require_length(self, n: int, what: str = "this operation") -> None:
        if len(self.values) < n:
            raise InputError(f"{what} needs at least {n} terms, got {len(self.values)}")

    def map(self, fn) -> "Seq":
        return Seq(tuple(fn(x) for x in self.values), self.mode)

    def __neg__(self) -> "Seq":
        return self.map(lambda x: -x)

    def scale(self, c) -> "Seq":
        c = self.mode.coerce(c)
        return self.map(lambda x: c * x)

    def shift(self, c) -> "Seq":
        c = self.mode.coerce(c)
        return self.map(lambda x: x + c)


def seq_from_values(values: Iterable, mode: Optional[Mode] = None) -> Seq:
    """Build a :class:`Seq` from raw numbers, inferring the mode when not given.

    Raises:
        InputError: ``values`` is empty.
        ModeError: floats and exact rationals are mixed.
    """
    values = list(values)
    if not values:
        raise InputError("a sequence needs at least one term")
    if mode is None:
        mode = infer_mode(values)
    return Seq(tuple(values), mode)


def same_mode(*seqs: Seq) -> Mode:
    modes = {s.mode for s in seqs}
    if len(modes) != 1:
        raise ModeError("operands carry different scalar modes")
    return modes.pop()


@dataclass(frozen=True)
class DifferenceProfile:
    """Consecutive increments ``deltas[i] = u_{i+1} - u_i``."""

    deltas: Tuple[Scalar, ...]
    mode: Mode = EXACT

    def integrate(self, start) -> Seq:
        """Prefix-sum the increments from ``start``; inverts :func:`differences`."""
        acc = self.mode.coerce(start)
        out = [acc]
        for d in self.deltas:
            acc = acc + d
            out.append(acc)
        return Seq(tuple(out), self.mode)


def differences(u: Seq) -> DifferenceProfile:
    u.require_length(2, "differences")
    v = u.values
    return DifferenceProfile(tuple(v[i + 1] - v[i] for i in range(len(v) - 1)), u.mode)


@dataclass(frozen=True)
class DeficitReport:
    """Minimal epsilon for an approximate property plus a witnessing index tuple.

    ``witness`` is empty exactly when ``epsilon_min`` is zero.
    """

    property: str
    epsilon_min: Scalar
    witness: Tuple[int, ...] = ()
    mode: Mode = EXACT

    @property
    def holds_exactly(self) -> bool:
        return self.epsilon_min == 0


@dataclass(frozen=True)
class Attestation:
    name: str
    holds: bool


@dataclass(frozen=True)
class Certificate:
    """Record of a decomposition: input, components and property claims.

    Checks are re-run by :func:`approxseq.decompose.verify_certificate`, which
    never repeats the construction.
    """

    kind: str
    input: Seq
    components: Tuple[Tuple[str, Seq], ...]
    attestations: Tuple[Attestation, ...]
    epsilon: Optional[Scalar] = None
    mode: Mode = field(default=EXACT)

    def component(self, name: str) -> Seq:
        for key, s in self.components:
            if key == name:
                return s
        raise KeyError(name)

    @property
    def v(self) -> Seq:
        return self.component("v")

    @property
    def w(self) -> Seq:
        return self.component("w")

    @property
    def valid(self) -> bool:
        return all(a.holds for a in self.attestations)
