"""Real roots by reflection closure, finiteness detection and axioms (R1)-(R4)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cartan import CartanScheme, simple_reflection_matrix
from .linalg import Vector, is_nonneg, is_nonpos, matvec, neg, unit


def root_sort_key(v: Vector) -> tuple:
    # by height, then simple-root order: (1,0) before (0,1)
    return (sum(v), tuple(-x for x in v))


@dataclass(frozen=True)
class NotFinite:
    """Closure left the cap: the real roots are (presumably) infinite."""

    obj: str
    vector: Vector
    cap: int

    finite = False

    def __str__(self) -> str:
        return f"root {self.vector} at object {self.obj} exceeds coordinate-sum cap {self.cap}"


@dataclass(frozen=True)
class RootSystemData:
    """All real roots per object; ``positive`` is derived canonically."""

    roots: Mapping[str, frozenset[Vector]]
    finite: bool = True
    positive: Mapping[str, tuple[Vector, ...]] = field(init=False, compare=False)

    def __post_init__(self):
        pos = {a: tuple(sorted((v for v in rs if is_nonneg(v)), key=root_sort_key))
               for a, rs in self.roots.items()}
        object.__setattr__(self, "positive", pos)

    def count(self, a: str) -> int:
        return len(self.positive[a])

    def is_positive(self, a: str, v: Vector) -> bool:
        return v in self.roots[a] and is_nonneg(v)

    def is_negative(self, a: str, v: Vector) -> bool:
        return v in self.roots[a] and is_nonpos(v)

    def m(self, a: str, i: int, j: int) -> int:
        """Number of roots at ``a`` in N_0 alpha_i + N_0 alpha_j."""
        return sum(1 for v in self.positive[a]
                   if all(x == 0 for k, x in enumerate(v) if k not in (i, j)))

    def with_root(self, a: str, v: Vector) -> "RootSystemData":
        """Copy with one extra vector at ``a`` (fault injection for tests)."""
        roots = dict(self.roots)
        roots[a] = roots[a] | {tuple(v)}
        return RootSystemData(roots, self.finite)


def default_cap(scheme: CartanScheme) -> int:
    return 10 * scheme.rank * len(scheme.objects)


def generate_roots(scheme: CartanScheme, cap: int | None = None) -> RootSystemData | NotFinite:
    """Worklist closure of the simple roots under all sigma_i^b.

    A root at ``b`` maps under sigma_i^b to a root at rho_i(b). The closure
    stops with :class:`NotFinite` as soon as a vector's coordinate sum (in
    absolute value) exceeds ``cap``.
    """
    if cap is None:
        cap = default_cap(scheme)
    n = scheme.rank
    sigma = {(i, b): simple_reflection_matrix(scheme, i, b)
             for i in range(n) for b in scheme.objects}
    roots: dict[str, set[Vector]] = {b: set() for b in scheme.objects}
    work: deque[tuple[str, Vector]] = deque()
    for b in scheme.objects:
        for j in range(n):
            e = unit(n, j)
            roots[b].add(e)
            work.append((b, e))
    while work:
        b, v = work.popleft()
        for i in range(n):
            c = scheme.rho(i, b)
            w = matvec(sigma[i, b], v)
            if w in roots[c]:
                continue
            if sum(abs(x) for x in w) > cap:
                return NotFinite(c, w, cap)
            roots[c].add(w)
            work.append((c, w))
    return RootSystemData({b: frozenset(rs) for b, rs in roots.items()})


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    obj: str
    detail: str
    witness: tuple = ()

    def as_dict(self) -> dict:
        return {"axiom": self.axiom, "object": self.obj, "detail": self.detail,
                "witness": [list(w) if isinstance(w, tuple) else w for w in self.witness]}


@dataclass(frozen=True)
class AxiomReport:
    failures: tuple[AxiomFailure, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def passed(self, axiom: str) -> bool:
        return not any(f.axiom == axiom for f in self.failures)

    def __bool__(self) -> bool:
        return self.ok


def check_axioms(scheme: CartanScheme, roots: RootSystemData) -> AxiomReport:
    n = scheme.rank
    out: list[AxiomFailure] = []
    for a in scheme.objects:
        ra = roots.roots[a]
        # (R1)
        for v in sorted(ra):
            if not (is_nonneg(v) or is_nonpos(v)):
                out.append(AxiomFailure("R1", a, f"root {v} is neither positive nor negative", (v,)))
            elif neg(v) not in ra:
                out.append(AxiomFailure("R1", a, f"root {v} present but {neg(v)} missing", (v,)))
        # (R2)
        for i in range(n):
            on_line = {v for v in ra if all(x == 0 for k, x in enumerate(v) if k != i)}
            expected = {unit(n, i), neg(unit(n, i))}
            for v in sorted(on_line ^ expected):
                out.append(AxiomFailure("R2", a, f"R^{a} meets Z alpha_{scheme.labels[i]} in {v}",
                                        (scheme.labels[i], v)))
        # (R3)
        for i in range(n):
            b = scheme.rho(i, a)
            s = simple_reflection_matrix(scheme, i, a)
            image = {matvec(s, v) for v in ra}
            if image != roots.roots[b]:
                bad = sorted(image ^ roots.roots[b])[0]
                out.append(AxiomFailure("R3", a, f"sigma_{scheme.labels[i]}^{a}(R^{a}) != R^{b}",
                                        (scheme.labels[i], bad)))
        # (R4)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                m = roots.m(a, i, j)
                x = a
                for _ in range(m):
                    x = scheme.rho(i, scheme.rho(j, x))
                if x != a:
                    out.append(AxiomFailure(
                        "R4", a, f"(rho_{scheme.labels[i]} rho_{scheme.labels[j]})^{m}({a}) = {x}",
                        (scheme.labels[i], scheme.labels[j], m)))
    return AxiomReport(tuple(out))


def is_indecomposable(matrix: Iterable[Iterable[int]]) -> bool:
    """True iff the graph on indices with an edge where c_jk != 0 is connected."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return False
    seen, stack = {0}, [0]
    while stack:
        j = stack.pop()
        for k in range(n):
            if k != j and m[j][k] != 0 and k not in seen:
                seen.add(k)
                stack.append(k)
    return len(seen) == n
