from fractions import Fraction
from math import comb

import pytest
from hypothesis import assume, given, strategies as st

from approxseq import EXACT, InputError, PreconditionError, Seq
from approxseq.analyze import (
    cauchy_epsilon,
    convex_deficit,
    deficit,
    geometric_mean_test,
    holder_deficit,
    lipschitz_modulus,
    monotone_deficit,
    order_k_deficit,
)
from approxseq.oracle import GenSpec, brute_deficit, generate

from conftest import int_seqs, rational_seqs


# -- frozen examples ---------------------------------------------------------


def test_monotone_examples(S):
    rep = monotone_deficit(S(3, 1, 2))
    assert rep.epsilon_min == 2 and rep.witness == (0, 1)
    assert brute_deficit(S(3, 1, 2), "monotone") == 2
    assert monotone_deficit(S(1, 2, 3)).epsilon_min == 0
    assert monotone_deficit(S(5, 5, 5)).witness == ()


def test_convex_examples(S):
    rep = convex_deficit(S(0, 2, 3))
    assert rep.epsilon_min == 1 and rep.witness == (1, 2)
    assert convex_deficit(S(0, 1, 3)).epsilon_min == 0
    assert convex_deficit(S(0, 2, 3, 5)).epsilon_min == 1
    with pytest.raises(InputError):
        convex_deficit(S(0, 1))


def test_holder_examples(S):
    assert holder_deficit(S(0, 1, 0)).epsilon_min == 1
    assert holder_deficit(S(5, 3, 4)).epsilon_min == 2
    assert holder_deficit(S(7, 7)).epsilon_min == 0


def test_lipschitz_examples(S):
    assert lipschitz_modulus(S(0, 2, 3)).epsilon_min == 2
    assert lipschitz_modulus(S(0, -3)).epsilon_min == 3
    assert lipschitz_modulus(S(4, 4, 4)).epsilon_min == 0
    with pytest.raises(InputError):
        lipschitz_modulus(S(1))


def test_order_k_examples(S):
    assert order_k_deficit(S(1, 2, 3), 1).epsilon_min == 0
    rep = order_k_deficit(S(0, 2, 3), 2)
    assert rep.epsilon_min == 1 and rep.witness == (0,)
    assert (rep.epsilon_min == 0) == (convex_deficit(S(0, 2, 3)).epsilon_min == 0)
    cubes = S(0, 1, 8, 27, 64)
    third = [sum((-1) ** r * comb(3, r) * cubes[m + 3 - r] for r in range(4)) for m in range(2)]
    assert third == [6, 6]
    assert order_k_deficit(cubes, 3).epsilon_min == 0
    with pytest.raises(InputError):
        order_k_deficit(S(1, 2), 2)
    with pytest.raises(InputError):
        order_k_deficit(S(1, 2), 0)


def test_geometric_mean_examples(S):
    assert geometric_mean_test(S(1, 2, 4))
    assert convex_deficit(S(1, 2, 4)).epsilon_min == 0
    assert not geometric_mean_test(S(1, 3, 4))
    assert geometric_mean_test(S(3, 3, 3))
    with pytest.raises(InputError):
        geometric_mean_test(S(1, -1, 2))


def test_cauchy_examples(S):
    u = S(0, 2, 1, 1)
    assert cauchy_epsilon(u, 2, 0) == 2
    assert monotone_deficit(u).epsilon_min == 1
    assert cauchy_epsilon(S(4, 4, 4), 1, 0) == 0
    v = S(0, 2, 1, "3/2")
    assert cauchy_epsilon(v, 2, Fraction(1, 2)) == Fraction(5, 2)


def test_cauchy_tail_violation_reports_pair(S):
    with pytest.raises(PreconditionError) as info:
        cauchy_epsilon(S(0, 2, 1, 3), 2, 1)
    assert info.value.witness == (2, 3)


def test_dispatch(S):
    assert deficit(S(3, 1, 2), "monotone").epsilon_min == 2
    assert deficit(S(0, 1, 8, 27), "order-k", 3).property == "order_3"
    with pytest.raises(InputError):
        deficit(S(1, 2), "concave")


# -- properties ------------------------------------------------------------


def _holds(prop, u, eps, k=2):
    v, N = u.values, len(u)
    if prop == "monotone":
        return all(v[m] <= v[n] + eps for m in range(N) for n in range(m + 1, N))
    if prop == "convex":
        return all(v[i] - v[i - 1] <= v[j] - v[j - 1] + eps
                   for i in range(1, N) for j in range(i + 1, N))
    if prop == "holder":
        return all(abs(v[m] - v[n]) <= eps for m in range(N) for n in range(N))
    if prop == "lipschitz":
        return all(abs(v[n] - v[m]) <= eps * (n - m) for m in range(N) for n in range(m + 1, N))
    raise AssertionError(prop)


def _fails_at(prop, u, eps, w):
    v = u.values
    if prop == "monotone":
        m, n = w
        return v[m] > v[n] + eps
    if prop == "convex":
        i, j = w
        return v[i] - v[i - 1] > v[j] - v[j - 1] + eps
    if prop == "holder":
        m, n = w
        return abs(v[m] - v[n]) > eps
    m, n = w
    return abs(v[n] - v[m]) > eps * (n - m)


FAST = {
    "monotone": monotone_deficit,
    "convex": convex_deficit,
    "holder": holder_deficit,
    "lipschitz": lipschitz_modulus,
}


@pytest.mark.parametrize("prop", sorted(FAST))
@given(u=int_seqs(min_size=3, max_size=40))
def test_matches_brute_force(prop, u):
    assert FAST[prop](u).epsilon_min == brute_deficit(u, prop)


@given(u=int_seqs(min_size=3, max_size=30), k=st.integers(1, 4))
def test_order_k_matches_binomial_sums(u, k):
    assume(len(u) >= k + 1)
    assert order_k_deficit(u, k).epsilon_min == brute_deficit(u, "order_k", k)


@pytest.mark.parametrize("prop", sorted(FAST))
@given(u=rational_seqs(min_size=3), slack=st.fractions(0, 3))
def test_threshold_soundness(prop, u, slack):
    rep = FAST[prop](u)
    assert rep.epsilon_min >= 0
    assert _holds(prop, u, rep.epsilon_min + slack)
    if rep.epsilon_min > 0:
        below = rep.epsilon_min - min(slack, rep.epsilon_min) if slack else rep.epsilon_min / 2
        assert _fails_at(prop, u, below, rep.witness)
    else:
        assert rep.witness == ()


@pytest.mark.parametrize("prop", sorted(FAST))
@given(u=int_seqs(min_size=3, max_size=20))
def test_witness_is_lexicographically_first(prop, u):
    rep = FAST[prop](u)
    if rep.epsilon_min == 0:
        return
    N = len(u)
    if prop == "convex":
        pairs = [(i, j) for i in range(1, N) for j in range(i + 1, N)]
    else:
        pairs = [(m, n) for m in range(N) for n in range(m + 1, N)]
    achieving = [p for p in pairs if not _fails_at(prop, u, rep.epsilon_min, p)
                 and _fails_at(prop, u, rep.epsilon_min - Fraction(1, 10**6), p)]
    assert rep.witness == min(achieving)


@given(u=int_seqs(min_size=3), c=st.integers(-10, 10), scale=st.integers(1, 5))
def test_shift_and_scale(u, c, scale):
    shifted = u.shift(c)
    for fn in (convex_deficit, holder_deficit, lipschitz_modulus):
        assert fn(shifted).epsilon_min == fn(u).epsilon_min
    scaled = u.scale(scale)
    for fn in FAST.values():
        assert fn(scaled).epsilon_min == scale * fn(u).epsilon_min


@given(n=st.integers(3, 12), seed=st.integers(0, 10**6))
def test_geometric_mean_implies_convex(n, seed):
    u = generate(GenSpec("log_convex", n, seed, 6))
    assert geometric_mean_test(u)
    assert convex_deficit(u).epsilon_min == 0


@given(head=st.lists(st.integers(-20, 20), min_size=1, max_size=10),
       tail_len=st.integers(1, 8), level=st.integers(-20, 20))
def test_cauchy_bound_dominates_monotone_deficit(head, tail_len, level):
    u = Seq(tuple(Fraction(x) for x in head + [level] * tail_len), EXACT)
    r = len(head)
    assert cauchy_epsilon(u, r, 0) >= monotone_deficit(u).epsilon_min
