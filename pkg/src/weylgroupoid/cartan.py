"""Cartan schemes: validation, restriction and simple reflections."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .linalg import Matrix


class SchemeError(ValueError):
    """Raised when data that must be a Cartan scheme is not one."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(v.describe() for v in report.violations))


@dataclass(frozen=True, order=True)
class Violation:
    """One failed requirement.

    ``kind`` is ``"structure"`` for malformed input (wrong shapes, unknown
    names), ``"GCM"`` for a matrix that is not a generalized Cartan matrix,
    and ``"C1"`` / ``"C2"`` for the two Cartan scheme axioms. ``index`` is the
    external index label (0 when not applicable) and ``pair`` the matrix entry.
    """

    kind: str
    obj: str = ""
    index: int = 0
    pair: tuple[int, ...] = ()
    message: str = ""

    def describe(self) -> str:
        where = []
        if self.obj:
            where.append(f"object {self.obj}")
        if self.index:
            where.append(f"i={self.index}")
        if self.pair:
            where.append("entry ({},{})".format(*self.pair))
        loc = f" [{', '.join(where)}]" if where else ""
        return f"{self.kind}{loc}: {self.message}"

    def as_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "object": self.obj, "index": self.index,
                "pair": list(self.pair), "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def structural(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.kind == "structure")

    @property
    def axioms(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.kind != "structure")

    def has(self, kind: str, obj: str = "", index: int = 0, pair: tuple[int, ...] = ()) -> bool:
        return any(v.kind == kind and (not obj or v.obj == obj)
                   and (not index or v.index == index) and (not pair or v.pair == pair)
                   for v in self.violations)

    def __bool__(self) -> bool:
        return self.ok


def _structure(raw: Mapping[str, Any]) -> list[Violation]:
    out: list[Violation] = []
    bad = lambda msg, **kw: out.append(Violation("structure", message=msg, **kw))  # noqa: E731

    rank = raw.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        bad(f"rank must be a positive integer, got {rank!r}")
        return out
    objects = raw.get("objects")
    if not isinstance(objects, (list, tuple)) or not objects:
        bad("objects must be a non-empty list")
        return out
    if not all(isinstance(o, str) for o in objects):
        bad("object identifiers must be strings")
        return out
    if len(set(objects)) != len(objects):
        bad("object identifiers must be distinct")
    known = set(objects)

    refl = raw.get("reflections")
    if not isinstance(refl, Mapping):
        bad("reflections must be a map from index to object map")
    else:
        keys = {str(k) for k in refl}
        expected = {str(i) for i in range(1, rank + 1)}
        for k in sorted(keys - expected):
            bad(f"reflection for unknown index {k}")
        for i in range(1, rank + 1):
            table = refl.get(str(i), refl.get(i))
            if not isinstance(table, Mapping):
                bad("missing reflection map", index=i)
                continue
            for a in objects:
                if a not in table:
                    bad("reflection is not total: no image", obj=a, index=i)
                elif table[a] not in known:
                    bad(f"reflection image {table[a]!r} is not an object", obj=a, index=i)
            for a in table:
                if a not in known:
                    bad(f"reflection defined on unknown object {a!r}", index=i)

    cartan = raw.get("cartan")
    if not isinstance(cartan, Mapping):
        bad("cartan must be a map from object to matrix")
    else:
        for a in cartan:
            if a not in known:
                bad("matrix given for unknown object", obj=a)
        for a in objects:
            m = cartan.get(a)
            if m is None:
                bad("missing Cartan matrix", obj=a)
                continue
            if (not isinstance(m, (list, tuple)) or len(m) != rank
                    or any(not isinstance(r, (list, tuple)) or len(r) != rank for r in m)):
                bad(f"Cartan matrix must be {rank}x{rank}", obj=a)
                continue
            if any(not isinstance(x, int) or isinstance(x, bool) for r in m for x in r):
                bad("Cartan matrix entries must be integers", obj=a)
    return out


def _gcm(obj: str, m: Matrix) -> list[Violation]:
    out = []
    n = len(m)
    for j in range(n):
        if m[j][j] != 2:
            out.append(Violation("GCM", obj, j + 1, (j + 1, j + 1), f"diagonal entry is {m[j][j]}, not 2"))
        for k in range(n):
            if j == k:
                continue
            if m[j][k] > 0:
                out.append(Violation("GCM", obj, j + 1, (j + 1, k + 1), f"off-diagonal entry {m[j][k]} > 0"))
            if (m[j][k] == 0) != (m[k][j] == 0):
                out.append(Violation("GCM", obj, j + 1, (j + 1, k + 1),
                                     f"entry is {m[j][k]} but transposed entry is {m[k][j]}"))
    return out


def validate_scheme(raw: Mapping[str, Any]) -> ValidationReport:
    """Check raw scheme data, collecting every violation.

    Structural problems are reported first and suppress the axiom checks,
    since those need well-shaped data.
    """
    structural = _structure(raw)
    if structural:
        return ValidationReport(tuple(sorted(set(structural))))

    rank = raw["rank"]
    objects = list(raw["objects"])
    refl = {i: raw["reflections"].get(str(i), raw["reflections"].get(i)) for i in range(1, rank + 1)}
    cartan = {a: tuple(tuple(r) for r in raw["cartan"][a]) for a in objects}

    out: list[Violation] = []
    for a in objects:
        out.extend(_gcm(a, cartan[a]))
    for i in range(1, rank + 1):
        rho = refl[i]
        for a in objects:
            if rho[rho[a]] != a:
                out.append(Violation("C1", a, i, (),
                                     f"rho_{i}(rho_{i}({a})) = {rho[rho[a]]} != {a}"))
            b = rho[a]
            for j in range(1, rank + 1):
                x, y = cartan[a][i - 1][j - 1], cartan[b][i - 1][j - 1]
                if x != y:
                    out.append(Violation("C2", a, i, (i, j),
                                         f"c^{a}_{i}{j} = {x} but c^{b}_{i}{j} = {y} (b = rho_{i}({a}))"))
    return ValidationReport(tuple(sorted(set(out))))


@dataclass(frozen=True, eq=True)
class CartanScheme:
    """A validated Cartan scheme.

    Indices are positions ``0..rank-1``; ``labels`` holds the external index
    names (``1..rank`` for a fresh scheme, the surviving labels after
    :meth:`restrict`). ``reflections[i]`` maps each object to its image under
    the i-th object change map.
    """

    objects: tuple[str, ...]
    reflections: tuple[Mapping[str, str], ...]
    cartan: Mapping[str, Matrix]
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, len(self.reflections) + 1)))

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_raw(cls, raw: Mapping[str, Any]) -> "CartanScheme":
        report = validate_scheme(raw)
        if not report.ok:
            raise SchemeError(report)
        rank = raw["rank"]
        objects = tuple(raw["objects"])
        refl = tuple(dict(raw["reflections"].get(str(i), raw["reflections"].get(i)))
                     for i in range(1, rank + 1))
        cartan = {a: tuple(tuple(int(x) for x in r) for r in raw["cartan"][a]) for a in objects}
        return cls(objects, refl, cartan)

    @classmethod
    def single(cls, matrix: Iterable[Iterable[int]], name: str = "a") -> "CartanScheme":
        """The one-object scheme of a generalized Cartan matrix."""
        m = tuple(tuple(r) for r in matrix)
        return cls.from_raw({"rank": len(m), "objects": [name],
                             "reflections": {str(i + 1): {name: name} for i in range(len(m))},
                             "cartan": {name: m}})

    def to_raw(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "objects": list(self.objects),
            "reflections": {str(i + 1): {a: self.reflections[i][a] for a in self.objects}
                            for i in range(self.rank)},
            "cartan": {a: [list(r) for r in self.cartan[a]] for a in self.objects},
        }

    @property
    def rank(self) -> int:
        return len(self.reflections)

    def rho(self, i: int, a: str) -> str:
        return self.reflections[i][a]

    def entry(self, a: str, i: int, j: int) -> int:
        return self.cartan[a][i][j]

    def index_of(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown index {label}") from None

    def restrict(self, J: Iterable[int]) -> "CartanScheme":
        """Restriction to the index positions ``J`` (keeps the original labels)."""
        J = sorted(set(J))
        if not J:
            raise ValueError("restriction needs a non-empty index set")
        if J[0] < 0 or J[-1] >= self.rank:
            raise IndexError(f"index positions {J} out of range")
        return CartanScheme(
            self.objects,
            tuple(self.reflections[j] for j in J),
            {a: tuple(tuple(self.cartan[a][j][k] for k in J) for j in J) for a in self.objects},
            tuple(self.labels[j] for j in J),
        )

    def components(self) -> list[list[str]]:
        """Connected components of the object change diagram."""
        seen: set[str] = set()
        comps = []
        for a in self.objects:
            if a in seen:
                continue
            comp, stack = [], [a]
            seen.add(a)
            while stack:
                b = stack.pop()
                comp.append(b)
                for i in range(self.rank):
                    c = self.rho(i, b)
                    if c not in seen:
                        seen.add(c)
                        stack.append(c)
            comps.append(sorted(comp, key=self.objects.index))
        return comps

    def edges(self) -> list[tuple[str, int, str]]:
        """Edges of the object change diagram as (a, label, b) with a before b."""
        out = []
        for i in range(self.rank):
            for a in self.objects:
                b = self.rho(i, a)
                if self.objects.index(a) < self.objects.index(b):
                    out.append((a, self.labels[i], b))
        return out


def simple_reflection_matrix(scheme: CartanScheme, i: int, a: str) -> Matrix:
    """Matrix of sigma_i^a: column j is alpha_j - c^a_ij alpha_i."""
    n = scheme.rank
    row = scheme.cartan[a][i]
    return tuple(
        tuple((int(k == j) - (row[j] if k == i else 0)) for j in range(n))
        for k in range(n)
    )


def restrict(scheme: CartanScheme, J: Iterable[int]) -> CartanScheme:
    return scheme.restrict(J)
