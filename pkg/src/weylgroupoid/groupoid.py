"""Morphisms of the Weyl groupoid of a Cartan scheme with finite real roots."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .cartan import CartanScheme, simple_reflection_matrix
from .linalg import Matrix, identity, is_nonneg, is_nonpos, matmul, matvec, unit
from .roots import NotFinite, RootSystemData


class ObjectMismatch(ValueError):
    pass


class NotInParabolic(ValueError):
    pass


@dataclass(frozen=True)
class Morphism:
    """An element of Hom(source, target), identified by its integer action."""

    source: str
    target: str
    action: Matrix
    length: int = field(compare=False)
    inverse_action: Matrix = field(compare=False, repr=False)

    @property
    def key(self) -> tuple[str, Matrix]:
        return (self.source, self.action)

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return matvec(self.action, v)


def subsets(n: int) -> Iterator[frozenset[int]]:
    """All subsets of range(n), by size then lexicographically."""
    for k in range(n + 1):
        for c in combinations(range(n), k):
            yield frozenset(c)


@dataclass(frozen=True)
class HomSet:
    """All morphisms with a fixed target, in breadth-first (length) order."""

    target: str
    elements: tuple[Morphism, ...]

    @cached_property
    def index(self) -> dict[Morphism, int]:
        return {w: k for k, w in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w) -> bool:
        return w in self.index

    @cached_property
    def level_sizes(self) -> tuple[int, ...]:
        top = max(w.length for w in self.elements)
        sizes = [0] * (top + 1)
        for w in self.elements:
            sizes[w.length] += 1
        return tuple(sizes)


class WeylGroupoid:
    """The Weyl groupoid of ``scheme`` with its finite real root system.

    Words are sequences of index positions ``(i_1, ..., i_k)`` read as
    sigma_{i_1} ... sigma_{i_k} applied to a source object, so ``i_k`` acts
    first.
    """

    def __init__(self, scheme: CartanScheme, roots: RootSystemData):
        if isinstance(roots, NotFinite) or not roots.finite:
            raise ValueError(f"Weyl groupoid needs a finite root system: {roots}")
        self.scheme = scheme
        self.roots = roots
        self.rank = scheme.rank
        self._sigma = {(i, a): simple_reflection_matrix(scheme, i, a)
                       for i in range(self.rank) for a in scheme.objects}
        self._hom: dict[str, HomSet] = {}
        self._longest: dict[tuple[str, frozenset[int]], Morphism] = {}
        # memo tables; morphisms hash by (source, target, action)
        self._products: dict[tuple[Morphism, Morphism], Morphism] = {}
        self._descents: dict[Morphism, frozenset[int]] = {}
        self._words: dict[Morphism, tuple[int, ...]] = {}
        self.cache: dict = {}

    # construction -------------------------------------------------------

    def _make(self, source: str, target: str, action: Matrix, inverse_action: Matrix) -> Morphism:
        return Morphism(source, target, action, self._root_length(source, target, action),
                        inverse_action)

    def _root_length(self, source: str, target: str, action: Matrix) -> int:
        n = 0
        for alpha in self.roots.positive[source]:
            image = matvec(action, alpha)
            if is_nonpos(image):
                n += 1
            elif not is_nonneg(image):
                raise ValueError(f"{image} is not a root at {target}")
        return n

    def identity(self, a: str) -> Morphism:
        e = identity(self.rank)
        return Morphism(a, a, e, 0, e)

    def simple(self, i: int, a: str) -> Morphism:
        """sigma_i^a in Hom(a, rho_i(a))."""
        s = self._sigma[i, a]
        return Morphism(a, self.scheme.rho(i, a), s, 1, s)

    def simple_to(self, i: int, a: str) -> Morphism:
        """id^a sigma_i, the simple reflection with target ``a``."""
        return self.simple(i, self.scheme.rho(i, a))

    def compose(self, u: Morphism, v: Morphism) -> Morphism:
        """uv: first v, then u."""
        if u.source != v.target:
            raise ObjectMismatch(f"cannot compose: source {u.source} != target {v.target}")
        uv = self._products.get((u, v))
        if uv is None:
            uv = self._make(v.source, u.target, matmul(u.action, v.action),
                            matmul(v.inverse_action, u.inverse_action))
            self._products[u, v] = uv
        return uv

    def inverse(self, w: Morphism) -> Morphism:
        return Morphism(w.target, w.source, w.inverse_action, w.length, w.action)

    def right(self, w: Morphism, i: int) -> Morphism:
        """w sigma_i (changes the source)."""
        return self.compose(w, self.simple_to(i, w.source))

    def left(self, i: int, w: Morphism) -> Morphism:
        """sigma_i w (changes the target)."""
        return self.compose(self.simple(i, w.target), w)

    def from_word(self, word: Iterable[int], source: str) -> Morphism:
        w = self.identity(source)
        for i in reversed(list(word)):
            if not 0 <= i < self.rank:
                raise IndexError(f"index position {i} out of range")
            w = self.left(i, w)
        return w

    # length and descents ---------------------------------------------------

    def length(self, w: Morphism) -> int:
        return self._root_length(w.source, w.target, w.action)

    def length_J(self, w: Morphism, J: Iterable[int]) -> int:
        """Shortest word length using only letters from ``J``.

        Computed by a breadth-first search inside the parabolic subgroupoid,
        and asserted equal to the ordinary length.
        """
        J = sorted(set(J))
        if not self.content(w) <= set(J):
            raise NotInParabolic(f"content {sorted(self.content(w))} not inside {J}")
        start = self.identity(w.target)
        seen = {start.key: 0}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            if x == w:
                d = seen[x.key]
                assert d == w.length, (d, w.length)
                return d
            for j in J:
                y = self.right(x, j)
                if y.key not in seen:
                    seen[y.key] = seen[x.key] + 1
                    queue.append(y)
        raise AssertionError("morphism not reached inside its parabolic")

    def ascends_right(self, w: Morphism, i: int) -> bool:
        """l(w sigma_i) = l(w) + 1, i.e. w(alpha_i) is positive."""
        return is_nonneg(matvec(w.action, unit(self.rank, i)))

    def left_descents(self, w: Morphism) -> frozenset[int]:
        """I_L(w): indices i with l(sigma_i w) = l(w) - 1."""
        d = self._descents.get(w)
        if d is None:
            d = frozenset(i for i in range(self.rank)
                          if is_nonpos(matvec(w.inverse_action, unit(self.rank, i))))
            self._descents[w] = d
        return d

    def right_descents(self, w: Morphism) -> frozenset[int]:
        return frozenset(i for i in range(self.rank) if not self.ascends_right(w, i))

    def word(self, w: Morphism) -> tuple[int, ...]:
        """Lexicographically smallest reduced word."""
        if w not in self._words:
            out = []
            x = w
            while x.length:
                i = min(self.left_descents(x))
                out.append(i)
                x = self.left(i, x)
            self._words[w] = tuple(out)
        return self._words[w]

    def reduced_words(self, w: Morphism) -> set[tuple[int, ...]]:
        memo: dict[Morphism, set[tuple[int, ...]]] = {}

        def rec(x: Morphism) -> set[tuple[int, ...]]:
            if x.length == 0:
                return {()}
            if x not in memo:
                memo[x] = {(i,) + rest for i in sorted(self.left_descents(x))
                           for rest in rec(self.left(i, x))}
            return memo[x]

        return rec(w)

    def content(self, w: Morphism) -> frozenset[int]:
        """J(w), the letters of any reduced word."""
        return frozenset(self.word(w))

    def label(self, w: Morphism) -> str:
        """``word^source`` as in the weak order diagrams, e.g. ``12^c``."""
        labels = [str(self.scheme.labels[i]) for i in self.word(w)]
        sep = "" if all(len(s) == 1 for s in labels) else ","
        return f"{sep.join(labels) or 'id'}^{w.source}"

    # enumeration --------------------------------------------------------

    def hom_to(self, a: str) -> HomSet:
        """Breadth-first enumeration of Hom(-> a) from id^a by w -> w sigma_i."""
        if a not in self._hom:
            start = self.identity(a)
            seen = {start.key: 0}
            order = [start]
            queue = deque([start])
            while queue:
                w = queue.popleft()
                for i in range(self.rank):
                    x = self.right(w, i)
                    if x.key not in seen:
                        seen[x.key] = seen[w.key] + 1
                        assert x.length == seen[x.key], "root length disagrees with word length"
                        order.append(x)
                        queue.append(x)
            assert max(w.length for w in order) == self.roots.count(a)
            self._hom[a] = HomSet(a, tuple(order))
        return self._hom[a]

    # parabolic structure ------------------------------------------------

    def longest_word(self, a: str, J: Iterable[int]) -> Morphism:
        """w_J at target ``a``: greedy ascent by right multiplication."""
        J = frozenset(J)
        if (a, J) not in self._longest:
            w = self.identity(a)
            while True:
                j = next((j for j in sorted(J) if self.ascends_right(w, j)), None)
                if j is None:
                    break
                w = self.right(w, j)
            self._longest[a, J] = w
        return self._longest[a, J]

    def parabolic_decompose(self, w: Morphism, J: Iterable[int]) -> tuple[Morphism, Morphism]:
        """w = uv with u minimal in its coset wW_J and v in W_J."""
        J = sorted(set(J))
        u = w
        while True:
            j = next((j for j in J if not self.ascends_right(u, j)), None)
            if j is None:
                break
            u = self.right(u, j)
        v = self.compose(self.inverse(u), w)
        return u, v

    def is_minimal_in_coset(self, w: Morphism, J: Iterable[int]) -> bool:
        return all(self.ascends_right(w, j) for j in J)

    # the longest element and its symmetries ------------------------------

    def tau(self, a: str) -> str:
        """Source of the longest element of Hom(-> a)."""
        return self.longest_word(a, range(self.rank)).source

    def tau_I(self, a: str) -> tuple[int, ...]:
        """Permutation with w_I id^a (alpha_j) = -alpha_{tau_I(j)}.

        Here w_I has source ``a``: it is the longest element of Hom(-> tau(a)).
        """
        w = self.longest_word(self.tau(a), range(self.rank))
        assert w.source == a
        perm = []
        for j in range(self.rank):
            image = matvec(w.action, unit(self.rank, j))
            k = next(k for k, x in enumerate(image) if x)
            assert image == tuple(-int(m == k) for m in range(self.rank)), image
            perm.append(k)
        return tuple(perm)

    def t_map(self, w: Morphism) -> Morphism:
        """w_I w w_I, a morphism into tau(target(w))."""
        a, b = w.target, w.source
        left = self.longest_word(self.tau(a), range(self.rank))
        right_ = self.longest_word(b, range(self.rank))
        return self.compose(self.compose(left, w), right_)


def enumerate_hom_to(scheme: CartanScheme, roots: RootSystemData, a: str) -> HomSet:
    return WeylGroupoid(scheme, roots).hom_to(a)
