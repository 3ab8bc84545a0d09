from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from approxseq import EXACT, InputError, Mode, ModeError, PLFunc, PreconditionError, Seq
from approxseq.analyze import convex_deficit, holder_deficit, lipschitz_modulus, monotone_deficit
from approxseq.core import Attestation
from approxseq.decompose import (
    certificate_holds,
    compose_convex,
    convex_split,
    jordan_split,
    monotone_approx,
    reciprocal,
    seq_sum,
    tail_infimum,
    verify_certificate,
)
from approxseq.oracle import GenSpec, generate

from conftest import int_seqs, rational_seqs

epsilons = st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3)])


def _vals(s):
    return list(s.values)


def test_jordan_examples(S):
    c = jordan_split(S(1, 3, 2))
    assert _vals(c.v) == [1, 3, 4] and _vals(c.w) == [0, 0, 2]
    c = jordan_split(S(0, -1, 1))
    assert _vals(c.v) == [0, 1, 3] and _vals(c.w) == [0, 2, 2]
    c = jordan_split(S(7, 7, 7))
    assert _vals(c.v) == [7, 7, 7] and _vals(c.w) == [0, 0, 0]
    assert c.valid and len(c.attestations) == 5


def test_monotone_approx_examples(S):
    c = monotone_approx(S(3, 1, 2), 2)
    assert _vals(c.v) == [2, 2, 2]
    assert _vals(monotone_approx(S(1, 2, 2, 5), 0).v) == [1, 2, 2, 5]
    u = Seq((0.0, 1.0, 0.5), Mode.floating())
    assert list(monotone_approx(u, 0.5).v) == [-0.25, 0.75, 0.75]
    with pytest.raises(PreconditionError) as info:
        monotone_approx(S(3, 1, 2), 1)
    assert info.value.witness == (0, 1)
    with pytest.raises(PreconditionError):
        monotone_approx(S(1, 2), -1)


def test_tail_infimum_examples(S):
    u = Seq((1.0, 0.0, 2.0, 1.5), Mode.floating())
    assert list(tail_infimum(u).v) == [0, 0, 1.5, 1.5]
    assert _vals(tail_infimum(S(1, 2, 4)).v) == [1, 2, 4]
    assert _vals(tail_infimum(S(3, 3)).v) == [3, 3]


def test_convex_split_examples(S):
    c = convex_split(S(0, 2, 3, 5), 1)
    assert _vals(c.v) == [0, 1, 2, 3] and _vals(c.w) == [0, 1, 1, 2]
    c = convex_split(S(0, 1, 1, 2), 1)
    assert _vals(c.v) == [0, 0, 0, 0] and _vals(c.w) == [0, 1, 1, 2]
    c = convex_split(S(0, 1, 3), 0)
    assert _vals(c.v) == [0, 1, 3] and _vals(c.w) == [0, 0, 0]
    c = convex_split(S(4, -2), 0)
    assert _vals(c.v) == [4, -2] and _vals(c.w) == [0, 0]
    assert c.valid
    with pytest.raises(PreconditionError) as info:
        convex_split(S(0, 2, 3), Fraction(1, 2))
    assert info.value.witness == (1, 2)
    with pytest.raises(InputError):
        convex_split(S(1), 1)


def test_reciprocal_and_sum(S):
    assert _vals(reciprocal(S(4, 2, 1))) == [Fraction(1, 4), Fraction(1, 2), 1]
    assert _vals(reciprocal(S(1, 1))) == [1, 1]
    with pytest.raises(InputError):
        reciprocal(S(2, 0, 1))
    assert _vals(seq_sum(S(1, 2), S(0, 0))) == [1, 2]
    f = Mode.floating()
    total = seq_sum(Seq((0.0, 1.0, 3.0), f), Seq((0.4, 0.0, 0.4), f))
    assert list(total) == pytest.approx([0.4, 1.0, 3.4])
    assert f.le(convex_deficit(total).epsilon_min, 0.8)
    with pytest.raises(InputError):
        seq_sum(S(1, 2), S(1, 2, 3))
    with pytest.raises(InputError):
        seq_sum(S(1, 2), Seq((1.0, 2.0), f))


def test_compose_convex_examples(S):
    ident = PLFunc.from_points([(0, 0), (10, 10)])
    assert _vals(compose_convex(ident, S(0, 1, 3))) == [0, 1, 3]
    kink = PLFunc.from_points([(0, 0), (1, 1), (2, 3)])
    out = compose_convex(kink, S(0, 1, 2))
    assert _vals(out) == [0, 1, 3] and convex_deficit(out).epsilon_min == 0
    double = PLFunc.from_points([(0, 0), (20, 40)])
    assert _vals(compose_convex(double, S(0, 1, 3, 6))) == [0, 2, 6, 12]


@pytest.mark.parametrize("f, u, label", [
    ([(0, 1), (1, 0)], [0, 0, 1], "f_nondecreasing"),
    ([(0, 0), (1, 2), (2, 3)], [0, 1, 2], "f_convex"),
    ([(0, 0), (5, 5)], [2, 1, 3], "u_nondecreasing"),
    ([(0, 0), (5, 5)], [0, 2, 3], "u_convex"),
    ([(0, 0), (5, 5)], [0, 3, 6], "u_in_domain"),
])
def test_compose_convex_names_failed_hypothesis(S, f, u, label):
    with pytest.raises(PreconditionError) as info:
        compose_convex(PLFunc.from_points(f), S(*u))
    assert info.value.witness == (label,)


def test_compose_convex_mode_mismatch(S):
    with pytest.raises(ModeError):
        compose_convex(PLFunc.from_points([(0.0, 0.0), (1.0, 1.0)]), S(0, 1))


# -- certificates ------------------------------------------------------------


def test_verify_detects_tampered_component(S):
    c = jordan_split(S(1, 3, 2))
    bad_w = Seq((Fraction(0), Fraction(1), Fraction(2)), EXACT)
    forged = replace(c, components=(("v", c.v), ("w", bad_w)))
    fresh = dict((a.name, a.holds) for a in verify_certificate(forged))
    assert not fresh["u_equals_v_minus_w"]
    assert not certificate_holds(forged)


def test_verify_detects_false_claim(S):
    c = tail_infimum(S(2, 1, 3))
    lied = replace(c, attestations=c.attestations[:-1] + (Attestation(c.attestations[-1].name, False),))
    assert all(a.holds for a in verify_certificate(lied))
    assert not certificate_holds(lied)


def test_verify_rejects_malformed(S):
    c = convex_split(S(0, 2, 3, 5), 1)
    with pytest.raises(InputError):
        verify_certificate(replace(c, kind="nope"))
    with pytest.raises(InputError):
        verify_certificate(replace(c, epsilon=None))
    with pytest.raises(InputError):
        verify_certificate(replace(c, components=c.components[:1]))
    with pytest.raises(InputError):
        verify_certificate(replace(c, components=(("v", S(0, 1)), ("w", c.w))))


@given(rational_seqs())
def test_jordan_attestations(u):
    c = jordan_split(u)
    assert certificate_holds(c)
    assert all(a - b == x for x, a, b in zip(u, c.v, c.w))


@given(st.integers(2, 30), st.integers(0, 10**6), epsilons)
def test_monotone_approx_on_generated(n, seed, eps):
    u = generate(GenSpec("eps_monotone", n, seed, 10, eps))
    c = monotone_approx(u, eps)
    assert certificate_holds(c)
    gaps = [abs(x - y) for x, y in zip(u, c.v)]
    assert max(gaps) == eps / 2


@given(rational_seqs(min_size=2))
def test_monotone_approx_at_exact_deficit(u):
    eps = monotone_deficit(u).epsilon_min
    c = monotone_approx(u, eps)
    assert certificate_holds(c)
    i, j = monotone_deficit(u).witness or (0, 0)
    assert abs(u[j] - c.v[j]) == eps / 2


@given(rational_seqs())
def test_tail_infimum_attestations(u):
    assert certificate_holds(tail_infimum(u))


@given(rational_seqs(max_size=8), st.integers(1, 6))
def test_tail_infimum_constant_tail_limit(head, tail_len):
    tail = (head[-1],) * tail_len
    u = Seq(head.values + tail, EXACT)
    v = tail_infimum(u).v
    assert v[-1] == u[-1]
    assert all(v[k] == min(u.values[k:]) for k in range(len(u)))


@given(st.integers(3, 30), st.integers(0, 10**6), epsilons)
def test_convex_split_on_generated(n, seed, eps):
    u = generate(GenSpec("eps_convex", n, seed, 10, eps))
    c = convex_split(u, eps)
    assert certificate_holds(c)
    assert convex_deficit(c.v).epsilon_min == 0
    assert lipschitz_modulus(c.w).epsilon_min <= eps
    assert all(a + b == x for x, a, b in zip(u, c.v, c.w))


@given(int_seqs(min_size=3))
def test_convex_split_at_exact_deficit(u):
    c = convex_split(u, convex_deficit(u).epsilon_min)
    assert certificate_holds(c)


@given(st.integers(3, 20), st.integers(0, 10**6), epsilons)
def test_holder_perturbation_of_convex_is_eps_convex(n, seed, eps):
    base = generate(GenSpec("convex", n, seed, 10))
    h = generate(GenSpec("arbitrary", n, seed + 1, 6))
    lo, hi = min(h), max(h)
    if hi > lo:
        h = h.map(lambda x: (x - lo) / (hi - lo) * eps / 2)
    else:
        h = h.map(lambda x: x - lo)
    assert holder_deficit(h).epsilon_min <= eps / 2
    assert convex_deficit(seq_sum(base, h)).epsilon_min <= eps


@given(int_seqs(min_size=3, max_size=10), st.data())
def test_compose_convex_preserves_convexity(u, data):
    ss = sorted(data.draw(st.lists(st.fractions(0, 5, max_denominator=4), min_size=1, max_size=4)))
    incs = sorted(abs(x) for x in u.values[1:])
    vals = [Fraction(0)]
    for d in incs:
        vals.append(vals[-1] + d)
    u = Seq(tuple(vals), EXACT)
    hi = max(vals[-1], Fraction(1))
    xs = [Fraction(0)] + [hi * Fraction(k + 1, len(ss)) for k in range(len(ss))]
    ys = [Fraction(0)]
    for s, x0, x1 in zip(ss, xs, xs[1:]):
        ys.append(ys[-1] + s * (x1 - x0))
    f = PLFunc(tuple(xs), tuple(ys), EXACT)
    assert convex_deficit(compose_convex(f, u)).epsilon_min == 0
