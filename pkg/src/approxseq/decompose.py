"""Constructive decompositions of sequences, each returned as a Certificate.

The certificate stores the components together with named property claims.
:func:`verify_certificate` re-checks those claims from the stored data alone.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from .analyze import convex_deficit, lipschitz_modulus, monotone_deficit
from .core import (
    Attestation,
    Certificate,
    InputError,
    Mode,
    ModeError,
    PreconditionError,
    Scalar,
    Seq,
    same_mode,
)
from .plfunc import PLFunc, evaluate, is_convex_fn, is_nondecreasing_fn


def _nondecreasing(s: Seq) -> bool:
    v, le = s.values, s.mode.le
    return all(le(v[i - 1], v[i]) for i in range(1, len(v)))


def _convex(s: Seq) -> bool:
    if len(s) < 3:
        return True
    return s.mode.le(convex_deficit(s).epsilon_min, 0)


def _pointwise(pred, *seqs: Seq) -> bool:
    return all(pred(*vals) for vals in zip(*(s.values for s in seqs)))


Check = Callable[[Seq, Optional[Scalar], Dict[str, Seq]], bool]


def _jordan_checks(mode: Mode) -> List[Tuple[str, Check]]:
    le, eq = mode.le, mode.eq
    return [
        ("v_nondecreasing", lambda u, e, c: _nondecreasing(c["v"])),
        ("v_majorizes_u", lambda u, e, c: _pointwise(lambda a, b: le(b, a), c["v"], u)),
        ("w_nonnegative", lambda u, e, c: _pointwise(lambda a: le(0, a), c["w"])),
        ("w_nondecreasing", lambda u, e, c: _nondecreasing(c["w"])),
        ("u_equals_v_minus_w",
         lambda u, e, c: _pointwise(lambda x, a, b: eq(x, a - b), u, c["v"], c["w"])),
    ]


def _monotone_approx_checks(mode: Mode) -> List[Tuple[str, Check]]:
    le = mode.le
    return [
        ("v_nondecreasing", lambda u, e, c: _nondecreasing(c["v"])),
        ("within_half_eps",
         lambda u, e, c: _pointwise(lambda x, a: le(abs(x - a), e / 2), u, c["v"])),
    ]


def _tail_infimum_checks(mode: Mode) -> List[Tuple[str, Check]]:
    le, eq = mode.le, mode.eq
    return [
        ("v_nondecreasing", lambda u, e, c: _nondecreasing(c["v"])),
        ("v_below_u", lambda u, e, c: _pointwise(le, c["v"], u)),
        ("final_values_agree", lambda u, e, c: eq(c["v"][-1], u[-1])),
    ]


def _convex_split_checks(mode: Mode) -> List[Tuple[str, Check]]:
    le, eq = mode.le, mode.eq
    return [
        ("v_convex", lambda u, e, c: _convex(c["v"])),
        ("w_nondecreasing", lambda u, e, c: _nondecreasing(c["w"])),
        ("w_lipschitz_within_eps",
         lambda u, e, c: len(u) < 2 or le(lipschitz_modulus(c["w"]).epsilon_min, e)),
        ("u_equals_v_plus_w",
         lambda u, e, c: _pointwise(lambda x, a, b: eq(x, a + b), u, c["v"], c["w"])),
    ]


KINDS = {
    "jordan": (("v", "w"), False, _jordan_checks),
    "monotone_approx": (("v",), True, _monotone_approx_checks),
    "tail_infimum": (("v",), False, _tail_infimum_checks),
    "convex_split": (("v", "w"), True, _convex_split_checks),
}


def _attest(kind: str, u: Seq, eps: Optional[Scalar], comps: Dict[str, Seq]) -> Tuple[Attestation, ...]:
    _, _, checks = KINDS[kind]
    return tuple(Attestation(name, bool(fn(u, eps, comps))) for name, fn in checks(u.mode))


def _certify(kind: str, u: Seq, eps: Optional[Scalar], comps: Dict[str, Seq]) -> Certificate:
    names, _, _ = KINDS[kind]
    return Certificate(
        kind=kind,
        input=u,
        components=tuple((n, comps[n]) for n in names),
        attestations=_attest(kind, u, eps, comps),
        epsilon=eps,
        mode=u.mode,
    )


def verify_certificate(cert: Certificate) -> Tuple[Attestation, ...]:
    """Re-run every property check of ``cert`` on its stored components.

    Raises:
        InputError: unknown kind, missing epsilon, or components whose length
            or mode does not match the input.
    """
    if cert.kind not in KINDS:
        raise InputError(f"unknown certificate kind {cert.kind!r}")
    names, needs_eps, _ = KINDS[cert.kind]
    comps = dict(cert.components)
    if set(comps) != set(names):
        raise InputError(f"{cert.kind} certificate needs components {names}")
    if needs_eps and cert.epsilon is None:
        raise InputError(f"{cert.kind} certificate needs an epsilon")
    for name, s in comps.items():
        if len(s) != len(cert.input):
            raise InputError(f"component {name} has length {len(s)}, input has {len(cert.input)}")
        if s.mode != cert.input.mode:
            raise ModeError(f"component {name} is in a different mode from the input")
    return _attest(cert.kind, cert.input, cert.epsilon, comps)


def certificate_holds(cert: Certificate) -> bool:
    """True iff the stored claims are all true and re-verification agrees."""
    fresh = verify_certificate(cert)
    return cert.valid and all(a.holds for a in fresh) and fresh == cert.attestations


def jordan_split(u: Seq) -> Certificate:
    """Write ``u = v - w`` with ``v`` the running total variation above ``u_0``.

    ``v`` is a nondecreasing majorant of ``u`` and ``w = v - u`` is
    nonnegative and nondecreasing.
    """
    vals = u.values
    acc = vals[0]
    v = [acc]
    for i in range(1, len(vals)):
        acc = acc + abs(vals[i] - vals[i - 1])
        v.append(acc)
    w = [a - x for a, x in zip(v, vals)]
    return _certify("jordan", u, None, {"v": Seq(tuple(v), u.mode), "w": Seq(tuple(w), u.mode)})


def _check_eps(u: Seq, eps, bound: Scalar, witness: tuple, what: str) -> Scalar:
    eps = u.mode.coerce(eps)
    if eps < 0:
        raise PreconditionError(f"epsilon must be nonnegative, got {eps}")
    if not u.mode.le(bound, eps):
        raise PreconditionError(
            f"epsilon {eps} is below the {what} deficit {bound} (witness {witness})", witness
        )
    return eps


def monotone_approx(u: Seq, eps) -> Certificate:
    """Nondecreasing ``v`` with ``|u_n - v_n| <= eps/2``: running max minus ``eps/2``.

    Raises:
        PreconditionError: ``u`` is not ``eps``-monotone.
    """
    rep = monotone_deficit(u)
    eps = _check_eps(u, eps, rep.epsilon_min, rep.witness, "monotone")
    half = eps / 2
    run = u.values[0]
    v = []
    for x in u.values:
        if x > run:
            run = x
        v.append(run - half)
    return _certify("monotone_approx", u, eps, {"v": Seq(tuple(v), u.mode)})


def tail_infimum(u: Seq) -> Certificate:
    """Suffix minima ``v_n = min(u_n .. u_{N-1})``, a nondecreasing minorant."""
    vals = u.values
    v = list(vals)
    for k in range(len(v) - 2, -1, -1):
        v[k] = min(vals[k], v[k + 1])
    return _certify("tail_infimum", u, None, {"v": Seq(tuple(v), u.mode)})


def convex_split(u: Seq, eps) -> Certificate:
    """Split an ``eps``-convex ``u`` into convex ``v`` plus ``w`` with steps in ``[0, eps]``.

    ``v`` starts at ``u_0`` and climbs by ``M_j - eps`` where ``M_j`` is the
    running maximum of the increments of ``u``. For two-term input the split
    is ``v = u``, ``w = 0``.

    Raises:
        PreconditionError: ``u`` is not ``eps``-convex.
    """
    u.require_length(2, "convex_split")
    vals, mode = u.values, u.mode
    if len(u) == 2:
        eps = _check_eps(u, eps, mode.zero(), (), "convex")
        v = list(vals)
    else:
        rep = convex_deficit(u)
        eps = _check_eps(u, eps, rep.epsilon_min, rep.witness, "convex")
        v = [vals[0]]
        top = None
        for j in range(1, len(vals)):
            d = vals[j] - vals[j - 1]
            top = d if top is None or d > top else top
            v.append(v[-1] + (top - eps))
    w = [x - a for x, a in zip(vals, v)]
    return _certify("convex_split", u, eps, {"v": Seq(tuple(v), mode), "w": Seq(tuple(w), mode)})


def reciprocal(u: Seq) -> Seq:
    for i, x in enumerate(u.values):
        if x == 0:
            raise InputError(f"u_{i} is zero")
    one = u.mode.coerce(1)
    return u.map(lambda x: one / x)


def seq_sum(u: Seq, v: Seq) -> Seq:
    """Elementwise ``u + v``.

    Raises:
        InputError: lengths or modes differ.
    """
    if len(u) != len(v):
        raise InputError(f"length mismatch: {len(u)} vs {len(v)}")
    try:
        mode = same_mode(u, v)
    except ModeError as exc:
        raise InputError(str(exc)) from exc
    return Seq(tuple(a + b for a, b in zip(u.values, v.values)), mode)


def compose_convex(f: PLFunc, u: Seq) -> Seq:
    """``<f(u_n)>`` for nondecreasing convex ``f`` and nondecreasing convex ``u``.

    The result is convex whenever the hypotheses hold.

    Raises:
        PreconditionError: a hypothesis fails; ``witness`` names which.
        ModeError: ``f`` and ``u`` use different scalar modes.
    """
    if f.mode != u.mode:
        raise ModeError("function and sequence use different scalar modes")
    if not is_nondecreasing_fn(f):
        raise PreconditionError("f is not nondecreasing", ("f_nondecreasing",))
    if not is_convex_fn(f):
        raise PreconditionError("f is not convex", ("f_convex",))
    if not _nondecreasing(u):
        raise PreconditionError("u is not nondecreasing", ("u_nondecreasing",))
    if not _convex(u):
        raise PreconditionError("u is not convex", ("u_convex",))
    for i, x in enumerate(u.values):
        if not f.a <= x <= f.b:
            raise PreconditionError(f"u_{i} = {x} outside [{f.a}, {f.b}]", ("u_in_domain",))
    return u.map(lambda x: evaluate(f, x))
