import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from weylgroupoid import NotComparable, poset
from weylgroupoid.order import is_unimodal, q_integer_factorization
from weylgroupoid.groupoid import subsets

from conftest import bruhat_groupoid, word


def prefix_order(G, a):
    """u <= v iff some reduced word of v (read left to right) starts with one of u."""
    P = poset(G, a)
    words = {w: G.reduced_words(w) for w in P.elements}
    out = set()
    for u, v in itertools.product(P.elements, repeat=2):
        if any(rw[:u.length] in words[u] for rw in words[v]):
            out.add((u, v))
    return out


def test_weak_order_matches_prefix_oracle(a2, bruhat):
    for G, a in ((a2.G, "a"), (bruhat.G, "c")):
        P = poset(G, a)
        oracle = prefix_order(G, a)
        for u, v in itertools.product(P.elements, repeat=2):
            assert P.leq(u, v) == ((u, v) in oracle)


def test_rank_sizes(bruhat, a2, a1):
    assert poset(bruhat.G, "c").rank_sizes() == (1, 3, 6, 7, 6, 7, 6, 3, 1)
    assert poset(a2.G, "a").rank_sizes() == (1, 2, 2, 1)
    P = poset(a1.G, "a")
    assert P.rank_sizes() == (1, 1) and P.leq(P.bottom, P.top) and P.bottom != P.top


def test_a2_hexagon(a2):
    P = poset(a2.G, "a")
    assert len(P.covers) == 6
    assert P.maximal_chain_lengths() == {3}


def test_descent_examples(bruhat):
    G = bruhat.G
    P = poset(G, "a")
    d = P.descents(P.bottom)
    assert d.I_L == frozenset() and list(d.bar_D_L.values()) == [P.bottom]
    d = P.descents(P.top)
    assert d.I_L == frozenset(range(3)) and len(d.bar_D_L) == 8
    for w in P.elements:
        assert P.leq(G.longest_word("a", P.descents(w).I_L), w)


def test_meet_examples(bruhat):
    G = bruhat.G
    for a in "abcde":
        P = poset(G, a)
        for u in P.elements:
            assert P.meet(u, P.bottom) == P.bottom
            assert P.join(u, P.bottom) == u
        for J, K in itertools.product(subsets(3), repeat=2):
            assert P.meet(G.longest_word(a, J), G.longest_word(a, K)) == G.longest_word(a, J & K)
            assert P.join(G.longest_word(a, J), G.longest_word(a, K)) == G.longest_word(a, J | K)


def test_meet_join_bruteforce_a(bruhat):
    P = poset(bruhat.G, "a")
    for u, v in itertools.product(P.elements, repeat=2):
        assert P.meet(u, v) == P.meet_bruteforce(u, v)
        assert P.join(u, v) == P.join_bruteforce(u, v)


def test_join_of_simples(bruhat):
    G = bruhat.G
    P = poset(G, "d")
    for J in subsets(3):
        assert P.join_all(G.simple_to(i, "d") for i in J) == G.longest_word("d", J)


def test_ortho_examples(bruhat):
    G = bruhat.G
    P = poset(G, "a")
    assert P.ortho(P.bottom) == P.top
    for w in P.elements:
        assert w.length + P.ortho(w).length == 8
        for i in range(3):
            assert (i in G.left_descents(w)) != (i in G.left_descents(P.ortho(w)))


def test_interval_examples(bruhat):
    G = bruhat.G
    P = poset(G, "a")
    assert P.interval(P.bottom, P.bottom) == [P.bottom]
    s = G.simple_to(0, "a")
    assert P.interval(P.bottom, s, closed=False) == []
    inside = P.interval(P.bottom, P.top, closed=False)
    cx = P.order_complex(inside)
    assert cx.is_pure() and cx.dimension == 6
    with pytest.raises(NotComparable):
        P.interval(G.simple_to(0, "a"), G.simple_to(1, "a"))


def test_classify_examples(bruhat):
    G = bruhat.G
    P = poset(G, "a")
    c = P.classify_interval(P.bottom, P.top)
    assert str(c) == "Sphere(1)" and c.expected_reduced_euler == -1
    assert P.interval_report(P.bottom, P.top).consistent
    v = word(G, [1, 2], "c")
    assert v != G.longest_word("a", G.left_descents(v))
    r = P.interval_report(P.bottom, v)
    assert str(r.classification) == "Contractible" and r.reduced_euler == 0
    with pytest.raises(ValueError):
        P.classify_interval(P.bottom, G.simple_to(0, "a"))
    with pytest.raises(NotComparable):
        P.classify_interval(P.top, P.bottom)


def test_zero_spheres_have_two_elements(bruhat):
    G = bruhat.G
    for a in "abcde":
        P = poset(G, a)
        for u, v in itertools.product(P.elements, repeat=2):
            if P.leq(u, v) and v.length - u.length == 2:
                c = P.classify_interval(u, v)
                if c.kind == "sphere":
                    assert c.dim == 0 and len(P.interval(u, v, closed=False)) == 2


def test_poincare(bruhat, a1):
    c = poset(bruhat.G, "c").poincare_polynomial()
    assert c.coefficients == (1, 3, 6, 7, 6, 7, 6, 3, 1)
    assert not c.unimodal and c.factors is None
    for a in "ab":
        p = poset(bruhat.G, a).poincare_polynomial()
        assert p.factors == (4, 3, 1)
        assert _expand(p.factors) == list(p.coefficients)
    r1 = poset(a1.G, "a").poincare_polynomial()
    assert r1.coefficients == (1, 1) and r1.factors == (1,)


def _expand(exponents):
    poly = [1]
    for e in exponents:
        out = [0] * (len(poly) + e)
        for k, c in enumerate(poly):
            for m in range(e + 1):
                out[k + m] += c
        poly = out
    return poly


@given(st.lists(st.integers(1, 5), max_size=5))
def test_factorization_recovers_product(exponents):
    poly = _expand(exponents)
    assert q_integer_factorization(poly) == tuple(sorted(exponents, reverse=True))


@given(st.lists(st.integers(0, 5), min_size=1, max_size=9))
def test_unimodal_matches_definition(seq):
    expected = any(all(seq[k] <= seq[k + 1] for k in range(p)) and
                   all(seq[k] >= seq[k + 1] for k in range(p, len(seq) - 1))
                   for p in range(len(seq)))
    assert is_unimodal(seq) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from("abcde"))
def test_fold_order_independent(seed, a):
    P = poset(bruhat_groupoid(), a)
    rng = random.Random(seed)
    S = rng.sample(P.elements, rng.randint(2, 7))
    T = list(S)
    rng.shuffle(T)
    assert P.meet_all(S) == P.meet_all(T)
    assert P.join_all(S) == P.join_all(T)
