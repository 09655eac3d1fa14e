"""Right weak order on Hom(-> a)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .groupoid import HomSet, Morphism, WeylGroupoid, subsets
from .simplicial import SimplicialComplex, order_complex

DEFAULT_CHAIN_LIMIT = 5000


class NotComparable(ValueError):
    pass


def poset(G: WeylGroupoid, a: str) -> "WeakOrderPoset":
    """Cached weak order poset of Hom(-> a)."""
    cache = G.cache.setdefault("posets", {})
    if a not in cache:
        cache[a] = WeakOrderPoset(G, G.hom_to(a))
    return cache[a]


def build_poset(G: WeylGroupoid, homset: HomSet) -> "WeakOrderPoset":
    return poset(G, homset.target)


def meet_recursive(G: WeylGroupoid, u: Morphism, v: Morphism) -> Morphism:
    """Meet by peeling off the longest word of the common left descents."""
    if u.target != v.target:
        raise ValueError("meet needs a common target")
    J = G.left_descents(u) & G.left_descents(v)
    if not J:
        return G.identity(u.target)
    wJ = G.longest_word(u.target, J)
    inv = G.inverse(wJ)
    return G.compose(wJ, meet_recursive(G, G.compose(inv, u), G.compose(inv, v)))


def ortho(G: WeylGroupoid, w: Morphism) -> Morphism:
    """w w_I, with w_I the longest element of Hom(-> source(w))."""
    return G.compose(w, G.longest_word(w.source, range(G.rank)))


def join_via_ortho(G: WeylGroupoid, u: Morphism, v: Morphism) -> Morphism:
    return ortho(G, meet_recursive(G, ortho(G, u), ortho(G, v)))


@dataclass(frozen=True)
class Descents:
    I_L: frozenset[int]
    D_L: tuple[Morphism, ...]
    bar_D_L: dict[frozenset[int], Morphism]


@dataclass(frozen=True)
class IntervalClass:
    kind: str  # "sphere" or "contractible"
    dim: int | None
    J: frozenset[int]

    @property
    def expected_reduced_euler(self) -> int:
        return (-1) ** self.dim if self.kind == "sphere" else 0

    def __str__(self) -> str:
        return f"Sphere({self.dim})" if self.kind == "sphere" else "Contractible"


@dataclass(frozen=True)
class IntervalReport:
    classification: IntervalClass
    size: int  # elements in the open interval
    chains: int | None
    reduced_euler: int | None
    reduced_betti: tuple[int, ...] | None

    @property
    def consistent(self) -> bool:
        c = self.classification
        if self.reduced_euler is not None and self.reduced_euler != c.expected_reduced_euler:
            return False
        if self.reduced_betti is not None:
            expected = [0] * len(self.reduced_betti)
            if c.kind == "sphere":
                if c.dim >= len(expected):
                    return False
                expected[c.dim] = 1
            if list(self.reduced_betti) != expected:
                return False
        return True


@dataclass(frozen=True)
class PoincareData:
    coefficients: tuple[int, ...]
    unimodal: bool
    factors: tuple[int, ...] | None  # exponents e with factor 1 + t + ... + t^e

    def factor_string(self) -> str:
        if self.factors is None:
            return "none"
        return "".join("(" + "+".join(["1", "t"] + [f"t^{k}" for k in range(2, e + 1)]) + ")"
                       for e in self.factors)


def is_unimodal(seq: Sequence[int]) -> bool:
    k = 0
    while k + 1 < len(seq) and seq[k] <= seq[k + 1]:
        k += 1
    while k + 1 < len(seq) and seq[k] >= seq[k + 1]:
        k += 1
    return k == len(seq) - 1


def _divide(p: list[int], e: int) -> list[int] | None:
    """Exact division of p by 1 + t + ... + t^e over Z, or None."""
    d = len(p) - 1
    if d < e:
        return None
    rem = list(p)
    q = [0] * (d - e + 1)
    for k in range(d - e, -1, -1):
        c = rem[k + e]
        q[k] = c
        for m in range(e + 1):
            rem[k + m] -= c
    return q if not any(rem) else None


def q_integer_factorization(coeffs: Sequence[int]) -> tuple[int, ...] | None:
    """Exponents (descending) of a factorization into 1 + t + ... + t^e, or None.

    Tries the largest feasible exponent first and backtracks, so a ``None``
    certifies that no such factorization exists.
    """
    def search(p: list[int], bound: int) -> tuple[int, ...] | None:
        if p == [1]:
            return ()
        for e in range(min(bound, len(p) - 1), 0, -1):
            q = _divide(p, e)
            if q is not None and all(c >= 0 for c in q):
                rest = search(q, e)
                if rest is not None:
                    return (e,) + rest
        return None

    return search(list(coeffs), len(coeffs) - 1)


class WeakOrderPoset:
    """Hom(-> a) under u <= uv iff l(u) + l(v) = l(uv)."""

    def __init__(self, G: WeylGroupoid, homset: HomSet):
        self.G = G
        self.homset = homset
        self.target = homset.target
        self.elements = homset.elements
        self.index = homset.index
        n = len(self.elements)
        self.covers: list[tuple[int, int, int]] = []  # (lower, upper, i)
        up_covers: list[list[int]] = [[] for _ in range(n)]
        for k, w in enumerate(self.elements):
            for i in range(G.rank):
                x = G.right(w, i)
                if x.length == w.length + 1:
                    m = self.index[x]
                    self.covers.append((k, m, i))
                    up_covers[k].append(m)
        # upset bitmasks by reverse length order
        up = [0] * n
        for k in sorted(range(n), key=lambda k: -self.elements[k].length):
            mask = 1 << k
            for m in up_covers[k]:
                mask |= up[m]
            up[k] = mask
        self._up = up
        self._down = [0] * n
        for k in range(n):
            m = up[k]
            while m:
                low = m & -m
                self._down[low.bit_length() - 1] |= 1 << k
                m ^= low
        # cover reachability must agree with length additivity
        for k, u in enumerate(self.elements):
            uinv = G.inverse(u)
            for m, v in enumerate(self.elements):
                additive = u.length + G.compose(uinv, v).length == v.length
                assert additive == bool(up[k] >> m & 1), (k, m)

    def __len__(self) -> int:
        return len(self.elements)

    def _i(self, w: Morphism | int) -> int:
        return w if isinstance(w, int) else self.index[w]

    def leq(self, u: Morphism | int, v: Morphism | int) -> bool:
        return bool(self._up[self._i(u)] >> self._i(v) & 1)

    def less(self, u, v) -> bool:
        return self._i(u) != self._i(v) and self.leq(u, v)

    def down_set(self, w) -> list[int]:
        return _bits(self._down[self._i(w)])

    def up_set(self, w) -> list[int]:
        return _bits(self._up[self._i(w)])

    @property
    def bottom(self) -> Morphism:
        return self.elements[0]

    @property
    def top(self) -> Morphism:
        return self.G.longest_word(self.target, range(self.G.rank))

    def rank_sizes(self) -> tuple[int, ...]:
        return self.homset.level_sizes

    def label(self, w) -> str:
        return self.G.label(self.elements[self._i(w)])

    # descents ----------------------------------------------------------

    def descents(self, w: Morphism) -> Descents:
        G = self.G
        a = self.target
        simples = {i: G.simple_to(i, a) for i in range(G.rank)}
        I_L = frozenset(i for i, s in simples.items() if self.leq(s, w))
        assert I_L == G.left_descents(w)
        bar = {}
        for J in subsets(G.rank):
            wJ = G.longest_word(a, J)
            if self.leq(wJ, w):
                bar[J] = wJ
        return Descents(I_L, tuple(simples[i] for i in sorted(I_L)), bar)

    # lattice operations -----------------------------------------------

    def meet(self, u: Morphism, v: Morphism) -> Morphism:
        return meet_recursive(self.G, u, v)

    def join(self, u: Morphism, v: Morphism) -> Morphism:
        return join_via_ortho(self.G, u, v)

    def ortho(self, w: Morphism) -> Morphism:
        return ortho(self.G, w)

    def meet_all(self, ws: Iterable[Morphism]) -> Morphism:
        return reduce(self.meet, ws)

    def join_all(self, ws: Iterable[Morphism]) -> Morphism:
        return reduce(self.join, ws, self.bottom)

    def meet_bruteforce(self, u: Morphism, v: Morphism) -> Morphism:
        common = self._down[self._i(u)] & self._down[self._i(v)]
        return self._unique_extreme(common, maximal=True)

    def join_bruteforce(self, u: Morphism, v: Morphism) -> Morphism:
        common = self._up[self._i(u)] & self._up[self._i(v)]
        return self._unique_extreme(common, maximal=False)

    def _unique_extreme(self, mask: int, maximal: bool) -> Morphism:
        members = _bits(mask)
        if maximal:
            ext = [k for k in members if not (self._up[k] & mask) & ~(1 << k)]
        else:
            ext = [k for k in members if not (self._down[k] & mask) & ~(1 << k)]
        if len(ext) != 1:
            raise AssertionError(f"{len(ext)} extreme elements, expected exactly one")
        return self.elements[ext[0]]

    # intervals ------------------------------------------------------------

    def interval(self, u: Morphism, v: Morphism, closed: bool = True) -> list[Morphism]:
        """Elements of [u, v] (or (u, v)), with the translation w -> u^-1 w checked."""
        if not self.leq(u, v):
            raise NotComparable(f"{self.label(u)} is not below {self.label(v)}")
        ku, kv = self._i(u), self._i(v)
        members = _bits(self._up[ku] & self._down[kv])
        if not closed:
            members = [k for k in members if k not in (ku, kv)]
        out = [self.elements[k] for k in members]
        # [u, v] is isomorphic to [id, u^-1 v] in Hom(-> source(u))
        G = self.G
        other = poset(G, u.source)
        uinv = G.inverse(u)
        image = [G.compose(uinv, w) for w in out]
        x = G.compose(uinv, v)
        for w, y in zip(out, image):
            assert other.leq(y, x) and other.leq(other.bottom, y)
        expected = len(_bits(other._down[other._i(x)])) - (0 if closed else 2)
        assert len(set(image)) == len(out) == expected
        for w1, y1 in zip(out, image):
            for w2, y2 in zip(out, image):
                assert self.leq(w1, w2) == other.leq(y1, y2)
        return out

    def order_complex(self, elements: Sequence[Morphism], limit: int | None = None) -> SimplicialComplex | None:
        idx = [self._i(w) for w in elements]
        return order_complex(idx, self.less, limit)

    def classify_interval(self, u: Morphism, v: Morphism) -> IntervalClass:
        if not self.leq(u, v):
            raise NotComparable(f"{self.label(u)} is not below {self.label(v)}")
        if v.length - u.length < 2:
            raise ValueError("open interval is empty; classification needs a length gap >= 2")
        G = self.G
        x = G.compose(G.inverse(u), v)
        J = G.left_descents(x)
        if x == G.longest_word(x.target, J):
            return IntervalClass("sphere", len(J) - 2, J)
        return IntervalClass("contractible", None, J)

    def interval_report(self, u: Morphism, v: Morphism,
                        chain_limit: int = DEFAULT_CHAIN_LIMIT) -> IntervalReport:
        """Classification plus the topological certificates of the open interval.

        The reduced Euler characteristic is always computed (by counting
        chains); GF(2) homology only when the order complex has at most
        ``chain_limit`` faces.
        """
        cls = self.classify_interval(u, v)
        inside = self.interval(u, v, closed=False)
        chi = self._reduced_euler_by_count(inside)
        cx = self.order_complex(inside, limit=chain_limit)
        if cx is None:
            return IntervalReport(cls, len(inside), None, chi, None)
        assert cx.reduced_euler_characteristic() == chi
        betti = cx.betti_gf2(reduced=True) if cx.faces else ()
        return IntervalReport(cls, len(inside), len(cx), chi, betti)

    def _reduced_euler_by_count(self, inside: Sequence[Morphism]) -> int:
        # signed chain count by dynamic programming over the order
        idx = sorted((self._i(w) for w in inside), key=lambda k: self.elements[k].length)
        # ends[k] = sum over chains ending at k of (-1)^(len-1)
        ends = {}
        for k in idx:
            ends[k] = 1 - sum(ends[m] for m in ends if m != k and self.less(m, k))
        return sum(ends.values()) - 1

    # Poincare polynomial ---------------------------------------------------

    def poincare_polynomial(self) -> PoincareData:
        c = self.rank_sizes()
        return PoincareData(c, is_unimodal(c), q_integer_factorization(c))

    # maximal chains ------------------------------------------------------

    def maximal_chain_lengths(self) -> set[int]:
        """Lengths (number of covers) of all maximal chains from the bottom."""
        ups: dict[int, list[int]] = {}
        for k, m, _ in self.covers:
            ups.setdefault(k, []).append(m)
        out: set[int] = set()
        memo: dict[int, set[int]] = {}

        def rec(k: int) -> set[int]:
            if k not in memo:
                nxt = ups.get(k, [])
                memo[k] = {0} if not nxt else {1 + d for m in nxt for d in rec(m)}
            return memo[k]

        out |= rec(0)
        return out


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
