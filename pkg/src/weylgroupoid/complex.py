"""Coxeter complex at an object: parabolic cosets, the face stratification
of the root hyperplane arrangement, and the comparison between the two."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .groupoid import Morphism, WeylGroupoid, subsets
from .linalg import column, dot, inverse, rank
from .simplicial import SimplicialComplex


@dataclass(frozen=True, order=True)
class ParabolicCoset:
    """The left coset rep * W_J, keyed by its minimal-length representative."""

    J: tuple[int, ...]
    rep_index: int  # position of rep in the breadth-first Hom(-> a) order
    rep: Morphism = field(compare=False)

    @property
    def Jset(self) -> frozenset[int]:
        return frozenset(self.J)


class CosetTable:
    """Canonical cosets of every parabolic W_J at target ``a``."""

    def __init__(self, G: WeylGroupoid, a: str):
        self.G = G
        self.target = a
        self.hom = G.hom_to(a)
        self.canon: dict[tuple[frozenset[int], int], ParabolicCoset] = {}
        self.members: dict[ParabolicCoset, list[int]] = {}
        for J in subsets(G.rank):
            for k, w in enumerate(self.hom):
                c = self._canonical(w, J)
                self.canon[J, k] = c
                self.members.setdefault(c, []).append(k)

    def _canonical(self, w: Morphism, J: frozenset[int]) -> ParabolicCoset:
        u, v = self.G.parabolic_decompose(w, J)
        assert self.G.is_minimal_in_coset(u, J) and u.length + v.length == w.length
        return ParabolicCoset(tuple(sorted(J)), self.hom.index[u], u)

    def coset(self, w: Morphism, J) -> ParabolicCoset:
        return self.canon[frozenset(J), self.hom.index[w]]

    def elements(self, c: ParabolicCoset) -> list[Morphism]:
        return [self.hom.elements[k] for k in self.members[c]]

    def all_cosets(self) -> list[ParabolicCoset]:
        return sorted(self.members)

    def intersection(self, c1: ParabolicCoset, c2: ParabolicCoset) -> ParabolicCoset | None:
        """c1 and c2 as sets of morphisms; their intersection is one coset or empty."""
        common = set(self.members[c1]) & set(self.members[c2])
        if not common:
            return None
        K = c1.Jset & c2.Jset
        results = {self.canon[K, k] for k in common}
        assert len(results) == 1, "intersection is not a single coset"
        (c,) = results
        assert set(self.members[c]) == common, "intersection is not a whole coset"
        return c


def coset_table(G: WeylGroupoid, a: str) -> CosetTable:
    cache = G.cache.setdefault("cosets", {})
    if a not in cache:
        cache[a] = CosetTable(G, a)
    return cache[a]


def canonical_coset(G: WeylGroupoid, w: Morphism, J) -> ParabolicCoset:
    return coset_table(G, w.target).coset(w, J)


def coset_intersection(G: WeylGroupoid, c1: ParabolicCoset, c2: ParabolicCoset) -> ParabolicCoset | None:
    if c1.rep.target != c2.rep.target:
        raise ValueError("cosets live at different targets")
    return coset_table(G, c1.rep.target).intersection(c1, c2)


@dataclass
class CoxeterComplexData:
    target: str
    vertices: list[ParabolicCoset]
    facets: list[frozenset[int]]  # facets[k] belongs to Hom(-> a) element k
    face_cosets: dict[frozenset[int], ParabolicCoset]
    complex: SimplicialComplex
    table: CosetTable = field(repr=False)

    @property
    def dimension(self) -> int:
        return self.complex.dimension


def coxeter_complex(G: WeylGroupoid, a: str) -> CoxeterComplexData:
    """Vertices are cosets of corank-one parabolics; faces are the vertex sets
    with a common element. Each face is tagged with the coset it cuts out."""
    if G.rank < 2:
        raise ValueError("the Coxeter complex needs rank >= 2")
    table = coset_table(G, a)
    n = G.rank
    corank_one = [frozenset(J) for J in combinations(range(n), n - 1)]
    vertices = sorted({table.canon[J, k] for J in corank_one for k in range(len(table.hom))})
    vindex = {c: m for m, c in enumerate(vertices)}
    facets = [frozenset(vindex[table.canon[J, k]] for J in corank_one) for k in range(len(table.hom))]
    cx = SimplicialComplex.from_facets(facets)
    face_cosets = {}
    for face in cx.faces:
        cosets = [vertices[m] for m in face]
        # every element in the common intersection must cut out the same coset
        common = set.intersection(*(set(table.members[c]) for c in cosets))
        assert common, "face with empty intersection"
        K = frozenset.intersection(*(c.Jset for c in cosets))
        tags = {table.canon[K, k] for k in common}
        assert len(tags) == 1 and set(table.members[next(iter(tags))]) == common
        face_cosets[face] = tags.pop()
    return CoxeterComplexData(a, vertices, facets, face_cosets, cx, table)


@dataclass(frozen=True)
class GeometricFace:
    coset: ParabolicCoset
    witness: tuple[Fraction, ...]
    signs: tuple[int, ...]  # against the positive roots at a, in canonical order

    @property
    def zeros(self) -> frozenset[int]:
        return frozenset(k for k, s in enumerate(self.signs) if s == 0)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def geometric_faces(G: WeylGroupoid, a: str) -> list[GeometricFace]:
    """One face per coset (u, J), witnessed by the sum of dual basis vectors
    to u(alpha_i) over i outside J."""
    table = coset_table(G, a)
    positives = G.roots.positive[a]
    n = G.rank
    faces = []
    for c in table.all_cosets():
        u = c.rep
        dual = inverse(u.action)  # row i pairs to 1 with u(alpha_i), to 0 with the others
        lam = tuple(sum((dual[i][k] for i in range(n) if i not in c.Jset), Fraction(0))
                    for k in range(n))
        for i in range(n):
            value = dot(lam, column(u.action, i))
            assert value == (0 if i in c.Jset else 1)
        faces.append(GeometricFace(c, lam, tuple(sign(dot(lam, beta)) for beta in positives)))
    seen: dict[tuple[int, ...], ParabolicCoset] = {}
    for f in faces:
        assert f.signs not in seen, f"cosets {seen.get(f.signs)} and {f.coset} share a face"
        seen[f.signs] = f.coset
    return faces


def in_closure(lower: Sequence[int], upper: Sequence[int]) -> bool:
    """Face with sign vector ``lower`` lies in the closure of face ``upper``."""
    return all(s == 0 or s == t for s, t in zip(lower, upper))


@dataclass(frozen=True)
class IsomorphismResult:
    ok: bool
    counterexample: tuple = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_isomorphism(cx: CoxeterComplexData, faces: Sequence[GeometricFace]) -> IsomorphismResult:
    """Compare the coset complex with the sign-vector face poset.

    Faces of the complex correspond to cosets (J != I); geometric faces are
    keyed independently by sign vector. Inclusion of simplices must match
    closure inclusion of cones, and reverse inclusion of cosets.
    """
    n = len(next(iter(cx.vertices)).J) + 1
    by_coset = {f.coset: f for f in faces if len(f.coset.J) < n}
    signs = [f.signs for f in by_coset.values()]
    if len(set(signs)) != len(signs):
        dup = next(s for s in signs if signs.count(s) > 1)
        pair = tuple(c for c, f in by_coset.items() if f.signs == dup)[:2]
        return IsomorphismResult(False, pair, "two cosets share a sign vector")
    tagged = set(cx.face_cosets.values())
    if tagged != set(by_coset):
        extra = sorted(tagged ^ set(by_coset))[0]
        return IsomorphismResult(False, (extra,), "coset without a matching face")
    table = cx.table
    items = sorted(cx.face_cosets.items(), key=lambda kv: kv[1])
    for f1, c1 in items:
        for f2, c2 in items:
            simplex = f1 <= f2
            cone = in_closure(by_coset[c1].signs, by_coset[c2].signs)
            if simplex != cone:
                return IsomorphismResult(False, (c1, c2), "simplex and cone inclusion disagree")
            contains = c1.Jset >= c2.Jset and table.canon[c1.Jset, c2.rep_index] == c1
            if simplex != contains:
                return IsomorphismResult(False, (c1, c2), "simplex inclusion and coset containment disagree")
    return IsomorphismResult(True)


@dataclass
class Arrangement:
    normals: tuple[tuple[int, ...], ...]
    chambers: list[GeometricFace]
    walls: list[frozenset[int]]  # per chamber: hyperplane indices bounding it
    rays: list[list[GeometricFace]]  # per chamber: one-dimensional faces in its closure
    regions_by_formula: int

    @property
    def simplicial(self) -> bool:
        n = len(self.normals[0])
        return all(len(w) == n for w in self.walls) and all(
            len(r) == n and rank([f.witness for f in r]) == n for r in self.rays)


def face_dimension(face: GeometricFace, normals: Sequence[Sequence[int]]) -> int:
    n = len(normals[0])
    return n - rank([normals[k] for k in face.zeros])


def count_regions(normals: Sequence[Sequence[int]]) -> int:
    """Regions of a central arrangement: sum over subsets S of (-1)^(|S| - rank S)."""
    total = 0
    m = len(normals)
    for k in range(m + 1):
        for S in combinations(range(m), k):
            total += (-1) ** ((k - rank([normals[i] for i in S])) % 2)
    return total


def arrangement(G: WeylGroupoid, a: str, faces: Sequence[GeometricFace] | None = None) -> Arrangement:
    if faces is None:
        faces = geometric_faces(G, a)
    normals = G.roots.positive[a]
    n = G.rank
    dims = {f.coset: face_dimension(f, normals) for f in faces}
    chambers = [f for f in faces if not f.zeros]
    walls, rays = [], []
    for ch in chambers:
        closure = [f for f in faces if in_closure(f.signs, ch.signs)]
        walls.append(frozenset(k for f in closure if dims[f.coset] == n - 1 for k in f.zeros))
        rays.append([f for f in closure if dims[f.coset] == 1])
    return Arrangement(tuple(normals), chambers, walls, rays, count_regions(normals))
