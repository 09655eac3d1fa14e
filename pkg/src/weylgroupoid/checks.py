"""Every structural property the library promises, checked on a concrete scheme.

Each check returns a :class:`CheckResult`; ``run_checks`` collects them in a
fixed order so the summary is reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

from .cartan import CartanScheme
from .complex import (arrangement, coset_table, coxeter_complex, face_dimension, geometric_faces,
                      in_closure, verify_isomorphism)
from .groupoid import WeylGroupoid, subsets
from .linalg import is_nonneg, matvec, unit
from .order import poset
from .roots import check_axioms, generate_roots


@dataclass(frozen=True)
class CheckResult:
    name: str
    obj: str  # "" for scheme-wide checks
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "object": self.obj, "passed": self.passed, "detail": self.detail}

    def line(self) -> str:
        where = f" [{self.obj}]" if self.obj else ""
        tail = f": {self.detail}" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}{where}{tail}"


class _Fail(Exception):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise _Fail(msg)


# groupoid -------------------------------------------------------------------

def check_length_law(G: WeylGroupoid, a: str) -> str:
    for w in G.hom_to(a):
        for i in range(G.rank):
            x = G.right(w, i)
            up = is_nonneg(matvec(w.action, unit(G.rank, i)))
            _require(x.length == w.length + (1 if up else -1),
                     f"l({G.label(w)} s_{i + 1}) = {x.length}")
    return f"{len(G.hom_to(a))} elements x {G.rank} letters"


def check_level_symmetry(G: WeylGroupoid, a: str) -> str:
    hom = G.hom_to(a)
    top = G.longest_word(a, range(G.rank))
    _require(top.length == G.roots.count(a), f"l(w_I) = {top.length} but |R_+| = {G.roots.count(a)}")
    sizes = hom.level_sizes
    _require(sizes == sizes[::-1], f"level sizes {sizes} not symmetric")
    image = set()
    for w in hom:
        wp = G.compose(w, G.longest_word(w.source, range(G.rank)))
        _require(wp.length == top.length - w.length, f"l({G.label(w)} w_I) = {wp.length}")
        image.add(wp)
    _require(len(image) == len(hom), "w -> w w_I is not injective")
    _require(sum(1 for w in hom if w.length == 0) == 1, "identity not unique")
    return f"sizes {','.join(map(str, sizes))}"


def check_content(G: WeylGroupoid, a: str) -> str:
    hom = G.hom_to(a)
    positives = G.roots.positive
    for w in hom:
        words = G.reduced_words(w)
        letters = {frozenset(x) for x in words}
        _require(len(letters) == 1, f"{G.label(w)} has reduced words with different letters")
        J = G.content(w)
        _require(G.content(G.inverse(w)) == J, f"J(w^-1) != J(w) for {G.label(w)}")
        images = [matvec(w.action, b) for b in positives[w.source]]
        for K in subsets(G.rank):
            inside = all(is_nonneg(v) or all(x == 0 for k, x in enumerate(v) if k not in K)
                         for v in images)
            _require(inside == (J <= K), f"root characterization fails for {G.label(w)}, J={sorted(K)}")
    for u, v in product(list(hom)[:12], repeat=2):
        if u.source != v.target:
            continue
        uv = G.compose(u, v)
        if uv.length == u.length + v.length:
            _require(G.content(uv) == G.content(u) | G.content(v), "J(uv) != J(u) u J(v)")
    return ""


def check_decomposition(G: WeylGroupoid, a: str) -> str:
    hom = G.hom_to(a)
    minimal = {J: [u for u in hom if G.is_minimal_in_coset(u, J)] for J in subsets(G.rank)}
    for w in hom:
        for J, us in minimal.items():
            u, v = G.parabolic_decompose(w, J)
            _require(u.length + v.length == w.length, "lengths do not add")
            _require(G.content(v) <= J and u in us, "decomposition has wrong factors")
            # exhaustive: every minimal u' with u'^-1 w in W_J
            found = [x for x in us if G.content(G.compose(G.inverse(x), w)) <= J]
            _require(found == [u], f"{len(found)} decompositions of {G.label(w)} for J={sorted(J)}")
    return ""


def check_longest_words(G: WeylGroupoid, a: str) -> str:
    for J in subsets(G.rank):
        wJ = G.longest_word(a, J)
        _require(G.content(wJ) == J, f"J(w_J) = {sorted(G.content(wJ))} for J = {sorted(J)}")
        span = sum(1 for b in G.roots.positive[a] if all(x == 0 for k, x in enumerate(b) if k not in J))
        _require(wJ.length == span, f"l(w_J) = {wJ.length}, {span} roots in span of J = {sorted(J)}")
        for j in J:
            _require(not G.ascends_right(wJ, j), "w_J is not maximal")
    for j in range(G.rank):
        _require(G.longest_word(a, {j}) == G.simple_to(j, a), "w_{j} != s_j")
    return ""


def check_wellness(G: WeylGroupoid, a: str) -> str:
    for w in G.hom_to(a):
        J = G.content(w)
        trivial = all(matvec(w.action, unit(G.rank, j)) == unit(G.rank, j) for j in J)
        if trivial:
            _require(w.length == 0, f"{G.label(w)} fixes alpha_J but is not the identity")
    return ""


def check_restriction(G: WeylGroupoid, a: str) -> str:
    scheme = G.scheme
    for J in subsets(G.rank):
        if not J:
            continue
        pos = sorted(J)
        sub = scheme.restrict(pos)
        sub_roots = generate_roots(sub)
        _require(getattr(sub_roots, "finite", False), f"restriction to {sorted(J)} is not finite")
        H = WeylGroupoid(sub, sub_roots)
        parabolic = {w for w in G.hom_to(a) if G.content(w) <= J}
        image = set()
        for x in H.hom_to(a):
            word = [pos[i] for i in H.word(x)]
            w = G.from_word(word, x.source)
            _require(w.target == a and w.length == x.length, f"lengths differ on {H.label(x)}")
            _require(G.length_J(w, J) == w.length, "l_J != l")
            image.add(w)
        _require(image == parabolic and len(image) == len(H.hom_to(a)),
                 f"restriction to {sorted(J)} is not a bijection onto W_J")
    return ""


def check_tau(G: WeylGroupoid) -> str:
    scheme = G.scheme
    for a in scheme.objects:
        _require(G.tau(G.tau(a)) == a, f"tau(tau({a})) != {a}")
        perm = G.tau_I(a)
        _require(all(perm[perm[i]] == i for i in range(G.rank)), f"tau_I at {a} is not an involution")
        for i in range(G.rank):
            left = G.longest_word(G.tau(scheme.rho(i, a)), range(G.rank))
            right = G.longest_word(a, range(G.rank))
            x = G.compose(G.compose(left, G.simple(i, a)), right)
            _require(x == G.simple(perm[i], G.tau(a)), f"w_I s_{i + 1} w_I != s_tau(i) at {a}")
    for comp in scheme.components():
        _require(len({G.tau_I(b) for b in comp}) == 1, "tau_I not constant on a component")
    return ""


def check_t_map(G: WeylGroupoid, a: str) -> str:
    P, Q = poset(G, a), poset(G, G.tau(a))
    perm = G.tau_I(a)
    image = [G.t_map(w) for w in P.elements]
    _require(len(set(image)) == len(image) == len(Q), "t^a is not a bijection")
    for w, x in zip(P.elements, image):
        _require(x.length == w.length and x.target == G.tau(a), f"t^a changes {G.label(w)}")
        y = G.from_word([perm[i] for i in G.word(w)], x.source)
        _require(x == y, f"t^a({G.label(w)}) disagrees with the letter substitution")
        _require(G.t_map(x) == w, "t^tau(a) t^a != id")
    for k, m in product(range(len(P)), repeat=2):
        _require(P.leq(k, m) == Q.leq(image[k], image[m]), "t^a does not preserve the order")
    return ""


# order ------------------------------------------------------------------------

def check_graded(G: WeylGroupoid, a: str) -> str:
    P = poset(G, a)
    n = G.roots.count(a)
    _require(P.maximal_chain_lengths() == {n}, f"maximal chain lengths {P.maximal_chain_lengths()}")
    minimal = [w for w in P.elements if len(P.down_set(w)) == 1]
    _require(minimal == [P.bottom], "minimum is not unique")
    maximal = [w for w in P.elements if len(P.up_set(w)) == 1]
    _require(maximal == [P.top], "maximum is not unique")
    return f"|R_+| = {n}"


def check_lattice(G: WeylGroupoid, a: str) -> str:
    P = poset(G, a)
    els = P.elements
    meets: dict[tuple[int, int], int] = {}
    for k, u in enumerate(els):
        for m, v in enumerate(els):
            x = P.meet(u, v)
            _require(x == P.meet_bruteforce(u, v), f"meet({P.label(u)}, {P.label(v)})")
            y = P.join(u, v)
            _require(y == P.join_bruteforce(u, v), f"join({P.label(u)}, {P.label(v)})")
            _require(P.meet(u, y) == u and P.join(u, x) == u, "absorption fails")
            lhs = G.content(u) | G.content(v)
            rhs = G.content(x) | G.content(G.compose(G.inverse(u), v))
            _require(lhs == rhs, f"J(u)uJ(v) != J(u^v)uJ(u^-1v) for {P.label(u)}, {P.label(v)}")
            meets[k, m] = P.index[x]
    for k, m in meets:
        _require(meets[k, m] == meets[m, k], "meet is not commutative")
    return f"{len(els) ** 2} pairs"


def check_fold_order(G: WeylGroupoid, a: str, samples: int = 200, seed: int = 0) -> str:
    P = poset(G, a)
    rng = random.Random(seed)
    for _ in range(samples):
        S = rng.sample(P.elements, rng.randint(2, min(6, len(P))))
        base = P.meet_all(S)
        _require(P.meet_all(rng.sample(S, len(S))) == base, "meet depends on fold order")
        _require(P.join_all(rng.sample(S, len(S))) == P.join_all(S), "join depends on fold order")
    return f"{samples} random subsets"


def check_ortho(G: WeylGroupoid, a: str) -> str:
    P = poset(G, a)
    top, bottom = P.top, P.bottom
    for w in P.elements:
        wp = P.ortho(w)
        _require(w.length + wp.length == top.length, "l(w) + l(w w_I) != l(w_I)")
        IL, ILp = G.left_descents(w), G.left_descents(wp)
        _require(not IL & ILp, "I_L(w) and I_L(w w_I) meet")
        _require(IL | ILp == frozenset(range(G.rank)), "I_L(w) u I_L(w w_I) != I")
        _require(P.meet(w, wp) == bottom, "(O1) fails")
        _require(P.join(w, wp) == top, "(O2) fails")
        _require(P.ortho(wp) == w, "(O3) fails")
    for u, v in product(P.elements, repeat=2):
        if P.leq(u, v):
            _require(P.leq(P.ortho(v), P.ortho(u)), "(O4) fails")
    return ""


def check_descents(G: WeylGroupoid, a: str) -> str:
    P = poset(G, a)
    for w in P.elements:
        d = P.descents(w)
        _require(set(d.bar_D_L) == {J for J in subsets(G.rank) if J <= d.I_L},
                 f"bar D_L({P.label(w)}) is not indexed by subsets of I_L")
        for J, K in product(d.bar_D_L, repeat=2):
            _require(P.leq(d.bar_D_L[J], d.bar_D_L[K]) == (J <= K), "bar D_L is not Boolean")
        _require(P.leq(G.longest_word(a, d.I_L), w), "w_{I_L(w)} is not below w")
    for J, K in product(subsets(G.rank), repeat=2):
        wJ, wK = G.longest_word(a, J), G.longest_word(a, K)
        _require(P.meet(wJ, wK) == G.longest_word(a, J & K), f"w_J ^ w_K, J={sorted(J)}, K={sorted(K)}")
        _require(P.join(wJ, wK) == G.longest_word(a, J | K), f"w_J v w_K, J={sorted(J)}, K={sorted(K)}")
    for J in subsets(G.rank):
        _require(P.join_all(G.simple_to(i, a) for i in J) == G.longest_word(a, J), "join of simples")
    return ""


def check_intervals(G: WeylGroupoid, a: str) -> str:
    P = poset(G, a)
    counts = {"sphere": 0, "contractible": 0, "homology": 0}
    for u, v in product(P.elements, repeat=2):
        if not P.leq(u, v) or v.length - u.length < 2:
            continue
        report = P.interval_report(u, v)
        cls = report.classification
        _require(report.consistent, f"({P.label(u)}, {P.label(v)}) classified {cls} "
                                    f"but chi~ = {report.reduced_euler}, betti = {report.reduced_betti}")
        if cls.kind == "sphere" and cls.dim == 0 and v.length - u.length == 2:
            _require(report.size == 2, "a 0-sphere interval does not have two elements")
        counts[cls.kind] += 1
        counts["homology"] += report.reduced_betti is not None
    return (f"{counts['sphere']} spheres, {counts['contractible']} contractible, "
            f"{counts['homology']} with homology")


# complex -----------------------------------------------------------------------

def check_complex(G: WeylGroupoid, a: str) -> str:
    cx = coxeter_complex(G, a)
    K = cx.complex
    n = G.rank
    _require(K.is_pure() and K.dimension == n - 1, f"not pure of dimension {n - 1}")
    _require(len(K.facets) == len(G.hom_to(a)), "facets do not match Hom(-> a)")
    report = K.pseudomanifold_report()
    _require(report.closed, "some ridge does not lie in exactly two facets")
    _require(report.facet_graph_connected, "facet graph is disconnected")
    chi = K.euler_characteristic()
    _require(chi == 1 + (-1) ** (n - 1), f"chi = {chi}")
    betti = K.betti_gf2()
    expected = tuple([1] + [0] * (n - 2) + [1]) if n > 1 else (2,)
    _require(betti == expected, f"betti {betti}")
    return f"f = {K.f_vector}, chi = {chi}, betti = {betti}"


def check_geometry(G: WeylGroupoid, a: str) -> str:
    cx = coxeter_complex(G, a)
    faces = geometric_faces(G, a)
    table = coset_table(G, a)
    _require(len(faces) == len(table.all_cosets()), "face count differs from coset count")
    iso = verify_isomorphism(cx, faces)
    _require(iso.ok, f"isomorphism fails: {iso.reason}")
    normals = G.roots.positive[a]
    by_coset = {f.coset: f for f in faces}
    for f in faces:
        _require(face_dimension(f, normals) == G.rank - len(f.coset.J), "dim F != |I| - |J|")
        expected = {table.canon[L, f.coset.rep_index] for L in subsets(G.rank) if L >= f.coset.Jset}
        closure = {g.coset for g in faces if in_closure(g.signs, f.signs)}
        _require(closure == expected, "closure is not the union of F^w_L for L containing J")
    _require(by_coset[table.coset(G.identity(a), ())].signs == (1,) * len(normals),
             "identity chamber is not dominant")
    ar = arrangement(G, a, faces)
    _require(len(ar.normals) == G.roots.count(a), "hyperplane count")
    _require(len(ar.chambers) == ar.regions_by_formula == len(G.hom_to(a)),
             f"{len(ar.chambers)} chambers, formula gives {ar.regions_by_formula}")
    _require(ar.simplicial, "some chamber is not simplicial")
    return f"{len(faces)} faces, {len(ar.normals)} hyperplanes, {len(ar.chambers)} chambers"


def linear_extension(G: WeylGroupoid, a: str, rng: random.Random | None = None) -> list[int]:
    """Indices of Hom(-> a) in a linear extension of weak order.

    Without ``rng``: by length, then lexicographic canonical word. With it, a
    random topological sort of the cover graph.
    """
    P = poset(G, a)
    if rng is None:
        return sorted(range(len(P)), key=lambda k: (P.elements[k].length, G.word(P.elements[k])))
    below = {k: 0 for k in range(len(P))}
    above: dict[int, list[int]] = {k: [] for k in range(len(P))}
    for lo, hi, _ in P.covers:
        below[hi] += 1
        above[lo].append(hi)
    ready = [k for k, c in below.items() if c == 0]
    out = []
    while ready:
        k = ready.pop(rng.randrange(len(ready)))
        out.append(k)
        for m in above[k]:
            below[m] -= 1
            if below[m] == 0:
                ready.append(m)
    return out


def check_shelling(G: WeylGroupoid, a: str, extra: int = 3, seed: int = 0) -> str:
    cx = coxeter_complex(G, a)
    orders = [linear_extension(G, a)]
    rng = random.Random(seed)
    orders += [linear_extension(G, a, rng) for _ in range(extra)]
    for order in orders:
        result = cx.complex.shelling_check([cx.facets[k] for k in order])
        _require(result.ok, f"shelling fails at position {result.position}")
    return f"{len(orders)} linear extensions"


# driver ---------------------------------------------------------------------

PER_OBJECT: list[tuple[str, Callable[[WeylGroupoid, str], str], bool]] = [
    # (name, check, needs rank >= 2)
    ("length-law", check_length_law, False),
    ("level-symmetry", check_level_symmetry, False),
    ("content", check_content, False),
    ("decomposition", check_decomposition, False),
    ("longest-words", check_longest_words, False),
    ("wellness", check_wellness, False),
    ("restriction", check_restriction, False),
    ("t-map", check_t_map, False),
    ("graded", check_graded, False),
    ("lattice", check_lattice, False),
    ("fold-order", check_fold_order, False),
    ("ortho", check_ortho, False),
    ("descents", check_descents, False),
    ("intervals", check_intervals, False),
    ("complex", check_complex, True),
    ("geometry", check_geometry, True),
    ("shelling", check_shelling, True),
]


def _run(name: str, obj: str, fn: Callable[[], str]) -> CheckResult:
    try:
        return CheckResult(name, obj, True, fn() or "")
    except _Fail as e:
        return CheckResult(name, obj, False, str(e))
    except AssertionError as e:
        return CheckResult(name, obj, False, f"internal assertion: {e}")


def run_checks(scheme: CartanScheme, objects: Iterable[str] | None = None,
               only: Iterable[str] | None = None) -> list[CheckResult]:
    """All checks on ``scheme``; returns early results if roots are not finite."""
    roots = generate_roots(scheme)
    if not getattr(roots, "finite", False):
        return [CheckResult("roots-finite", "", False, str(roots))]
    results = [CheckResult("roots-finite", "", True)]
    axioms = check_axioms(scheme, roots)
    for ax in ("R1", "R2", "R3", "R4"):
        bad = [f.detail for f in axioms.failures if f.axiom == ax]
        results.append(CheckResult(f"axiom-{ax}", "", not bad, "; ".join(bad[:3])))
    if not axioms.ok:
        return results
    G = WeylGroupoid(scheme, roots)
    wanted = set(only) if only is not None else None
    if wanted is None or "tau" in wanted:
        results.append(_run("tau", "", lambda: check_tau(G)))
    objs = list(objects) if objects is not None else list(scheme.objects)
    for a in objs:
        for name, fn, needs_rank in PER_OBJECT:
            if wanted is not None and name not in wanted:
                continue
            if needs_rank and G.rank < 2:
                continue
            results.append(_run(name, a, lambda fn=fn: fn(G, a)))
    return results
