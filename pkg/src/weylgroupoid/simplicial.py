"""Finite abstract simplicial complexes: f-vectors, Euler characteristic,
GF(2) homology, pseudomanifold and shelling checks, order complexes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

Face = frozenset


def gf2_rank(columns: Iterable[int]) -> int:
    """Rank over GF(2) of vectors given as integer bitmasks."""
    basis: dict[int, int] = {}  # leading bit -> vector
    r = 0
    for v in columns:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                r += 1
                break
            v ^= basis[top]
    return r


@dataclass(frozen=True)
class PseudomanifoldReport:
    pure: bool
    dimension: int
    ridge_degrees: tuple[int, ...]  # degree of each ridge, ridges in canonical order
    facet_graph_connected: bool

    @property
    def pseudomanifold(self) -> bool:
        return self.pure and all(d <= 2 for d in self.ridge_degrees)

    @property
    def closed(self) -> bool:
        """Every ridge lies in exactly two facets."""
        return self.pseudomanifold and all(d == 2 for d in self.ridge_degrees)


@dataclass(frozen=True)
class ShellingResult:
    ok: bool
    position: int | None = None  # index in the order of the first bad facet
    facet: Face | None = None

    def __bool__(self) -> bool:
        return self.ok


class SimplicialComplex:
    """A downward closed family of non-empty vertex sets."""

    def __init__(self, faces: Iterable[Iterable[Hashable]]):
        fs = {Face(f) for f in faces}
        fs.discard(Face())
        for f in list(fs):
            if len(f) > 1:
                for v in f:
                    if f - {v} not in fs:
                        raise ValueError(f"not downward closed: {set(f)} lacks {set(f - {v})}")
        self.faces = fs

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]]) -> "SimplicialComplex":
        faces: set[Face] = set()
        stack = [Face(f) for f in facets]
        while stack:
            f = stack.pop()
            if f in faces or not f:
                continue
            faces.add(f)
            stack.extend(f - {v} for v in f)
        obj = cls.__new__(cls)
        obj.faces = faces
        return obj

    def __len__(self) -> int:
        return len(self.faces)

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(v for f in self.faces for v in f)

    @cached_property
    def dimension(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        c = Counter(len(f) - 1 for f in self.faces)
        return tuple(c[k] for k in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def reduced_euler_characteristic(self) -> int:
        return self.euler_characteristic() - 1

    @cached_property
    def facets(self) -> tuple[Face, ...]:
        maximal = [f for f in self.faces if not any(f < g for g in self._cofaces(f))]
        return tuple(sorted(maximal, key=_face_key))

    def _cofaces(self, f: Face) -> Iterable[Face]:
        return (f | {v} for v in self.vertices - f if f | {v} in self.faces)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def betti_gf2(self, reduced: bool = False) -> tuple[int, ...]:
        """Betti numbers over GF(2) via boundary matrix ranks."""
        by_dim: dict[int, list[Face]] = {}
        for f in self.faces:
            by_dim.setdefault(len(f) - 1, []).append(f)
        index = {k: {f: n for n, f in enumerate(sorted(fs, key=_face_key))} for k, fs in by_dim.items()}
        ranks = {}
        for k in range(1, self.dimension + 1):
            lower = index[k - 1]
            cols = []
            for f in index[k]:
                mask = 0
                for v in f:
                    mask |= 1 << lower[f - {v}]
                cols.append(mask)
            ranks[k] = gf2_rank(cols)
        ranks[0] = 1 if (reduced and self.faces) else 0
        ranks[self.dimension + 1] = 0
        betti = tuple(len(index.get(k, ())) - ranks[k] - ranks[k + 1]
                      for k in range(self.dimension + 1))
        return betti

    def pseudomanifold_report(self) -> PseudomanifoldReport:
        d = self.dimension
        ridges = Counter()
        for f in self.facets:
            for v in f:
                ridges[f - {v}] += 1
        # ridges not contained in any facet of top dimension have degree 0
        ridge_faces = [f for f in self.faces if len(f) == d]
        degrees = tuple(ridges.get(r, 0) for r in sorted(ridge_faces, key=_face_key))
        return PseudomanifoldReport(self.is_pure(), d, degrees, self.facet_graph_connected())

    def facet_graph_connected(self) -> bool:
        """Facets adjacent when they share a ridge; is that graph connected?"""
        facets = self.facets
        if not facets:
            return True
        by_ridge: dict[Face, list[int]] = {}
        for n, f in enumerate(facets):
            for v in f:
                by_ridge.setdefault(f - {v}, []).append(n)
        seen, stack = {0}, [0]
        while stack:
            n = stack.pop()
            for v in facets[n]:
                for m in by_ridge[facets[n] - {v}]:
                    if m not in seen:
                        seen.add(m)
                        stack.append(m)
        return len(seen) == len(facets)

    def shelling_check(self, order: Sequence[Iterable[Hashable]] | None = None) -> ShellingResult:
        """Check that ``order`` (default: canonical facet order) is a shelling.

        For every j > 0 the facets before F_j must meet F_j inside the union of
        the ridges F_j - {w} that some earlier facet contains, and that union
        must be non-empty.
        """
        facets = [Face(f) for f in (self.facets if order is None else order)]
        if sorted(facets, key=_face_key) != sorted(self.facets, key=_face_key):
            raise ValueError("order is not a permutation of the facets")
        if not self.is_pure():
            raise ValueError("shelling needs a pure complex")
        for j in range(1, len(facets)):
            fj = facets[j]
            ridges = [fj - {w} for w in fj if any(fj - {w} <= facets[m] for m in range(j))]
            for i in range(j):
                meet = facets[i] & fj
                if not any(meet <= r for r in ridges):
                    return ShellingResult(False, j, fj)
        return ShellingResult(True)


def _face_key(f: Face):
    return (len(f), sorted(map(repr, f)))


def order_complex(elements: Sequence[Hashable], less: Callable[[Hashable, Hashable], bool],
                  limit: int | None = None) -> SimplicialComplex | None:
    """Complex of chains of a finite poset; ``None`` if more than ``limit`` chains."""
    elements = list(elements)
    above = {x: [y for y in elements if less(x, y)] for x in elements}
    faces: list[Face] = []

    def extend(chain: tuple, tail) -> bool:
        faces.append(Face(chain))
        if limit is not None and len(faces) > limit:
            return False
        for y in above[tail]:
            if not extend(chain + (y,), y):
                return False
        return True

    for x in elements:
        if not extend((x,), x):
            return None
    obj = SimplicialComplex.__new__(SimplicialComplex)
    obj.faces = set(faces)
    return obj
