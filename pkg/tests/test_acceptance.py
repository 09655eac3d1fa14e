"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import itertools

from weylgroupoid import (CartanScheme, WeylGroupoid, arrangement, check_axioms, coxeter_complex, generate_roots,
                          geometric_faces, poset, validate_scheme, verify_isomorphism)
from weylgroupoid.checks import linear_extension
from weylgroupoid.cli import main
from weylgroupoid.groupoid import subsets

OBJECTS = "abcde"


def verdict(n, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


def expand(exponents):
    poly = [1]
    for e in exponents:
        out = [0] * (len(poly) + e)
        for k, c in enumerate(poly):
            for m in range(e + 1):
                out[k + m] += c
        poly = out
    return poly


def words_oracle(G, a, max_len):
    """Distinct morphisms into a reached by words of length <= max_len from any source."""
    seen = {}
    for src in G.scheme.objects:
        for k in range(max_len + 1):
            for w in itertools.product(range(G.rank), repeat=k):
                m = G.from_word(w, src)
                if m.target == a:
                    seen.setdefault(m, k)
    return seen


def test_criterion_01_golden_dataset(bruhat, capsys):
    code = main(["validate", "examples/bruhat.json"])
    capsys.readouterr()
    G = bruhat.G
    report = validate_scheme(bruhat.raw)
    axioms = check_axioms(bruhat.scheme, bruhat.roots)
    counts = [bruhat.roots.count(a) for a in OBJECTS]
    tops = [G.longest_word(a, range(3)).length for a in OBJECTS]
    ok = code == 0 and report.ok and axioms.ok and counts == [8] * 5 and tops == [8] * 5
    verdict(1, ok, f"exit {code}, C1/C2 ok={report.ok}, R1-R4 ok={axioms.ok}, |R+|={counts}, l(w_I)={tops}")


def test_criterion_02_poincare(bruhat):
    G = bruhat.G
    c = poset(G, "c").poincare_polynomial()
    ok = c.coefficients == (1, 3, 6, 7, 6, 7, 6, 3, 1) and c.unimodal is False and c.factors is None
    facts = {}
    for a in "ab":
        p = poset(G, a).poincare_polynomial()
        facts[a] = p.factors
        ok = ok and p.factors is not None and expand(p.factors) == list(p.coefficients)
    verdict(2, ok, f"c: {','.join(map(str, c.coefficients))} unimodal={c.unimodal}; "
                   f"q-integer exponents a={facts['a']} b={facts['b']}")


def test_criterion_03_hom_sizes(bruhat):
    G = bruhat.G
    sizes, ok = {}, True
    for a in OBJECTS:
        hom = G.hom_to(a)
        oracle = words_oracle(G, a, 8)
        sizes[a] = len(hom)
        ok = ok and len(hom) == 40 and set(oracle) == set(hom)
        ok = ok and all(oracle[w] == w.length for w in hom)
        levels = hom.level_sizes
        image = {G.compose(w, G.longest_word(w.source, range(3))) for w in hom}
        ok = ok and levels == levels[::-1] and len(image) == 40
        ok = ok and all(G.compose(w, G.longest_word(w.source, range(3))).length == 8 - w.length for w in hom)
    verdict(3, ok, f"|Hom(->x)| = {sizes}, levels symmetric under w -> w w_I")


def test_criterion_04_lattice(bruhat):
    G = bruhat.G
    failures = pairs = 0
    for a in OBJECTS:
        P = poset(G, a)
        for u, v in itertools.product(P.elements, repeat=2):
            pairs += 1
            m = P.meet(u, v)
            if m != P.meet_bruteforce(u, v):
                failures += 1
            if P.join(u, v) != P.join_bruteforce(u, v):
                failures += 1
            if G.content(u) | G.content(v) != G.content(m) | G.content(G.compose(G.inverse(u), v)):
                failures += 1
    verdict(4, failures == 0 and pairs == 8000, f"{pairs} pairs, {failures} failures")


def test_criterion_05_ortho(bruhat):
    G = bruhat.G
    failures = 0
    full = frozenset(range(3))
    for a in OBJECTS:
        P = poset(G, a)
        for w in P.elements:
            wp = P.ortho(w)
            IL, ILp = G.left_descents(w), G.left_descents(wp)
            failures += w.length + wp.length != P.top.length      # complement (1)
            failures += bool(IL & ILp)                            # complement (2)
            failures += any((i in IL) == (i in ILp) for i in full)  # complement (3)
            failures += P.meet(w, wp) != P.bottom                 # O1
            failures += P.join(w, wp) != P.top                    # O2
            failures += P.ortho(wp) != w                          # O3
        for u, v in itertools.product(P.elements, repeat=2):
            if P.leq(u, v):
                failures += not P.leq(P.ortho(v), P.ortho(u))     # O4
    verdict(5, failures == 0, f"{failures} failures over 5 targets")


def test_criterion_06_descents(bruhat):
    G = bruhat.G
    failures = 0
    for a in OBJECTS:
        P = poset(G, a)
        for w in P.elements:
            d = P.descents(w)
            if set(d.bar_D_L) != {J for J in subsets(3) if J <= d.I_L}:
                failures += 1
            for J, K in itertools.product(d.bar_D_L, repeat=2):
                failures += P.leq(d.bar_D_L[J], d.bar_D_L[K]) != (J <= K)
        for J, K in itertools.product(subsets(3), repeat=2):
            wJ, wK = G.longest_word(a, J), G.longest_word(a, K)
            failures += P.meet(wJ, wK) != G.longest_word(a, J & K)
            failures += P.join(wJ, wK) != G.longest_word(a, J | K)
    verdict(6, failures == 0, f"Boolean descent families and 64 subset pairs per target, {failures} failures")


def test_criterion_07_intervals(bruhat):
    G = bruhat.G
    total = bad = with_homology = 0
    for a in OBJECTS:
        P = poset(G, a)
        for u, v in itertools.product(P.elements, repeat=2):
            if P.leq(u, v) and v.length - u.length >= 2:
                r = P.interval_report(u, v)
                total += 1
                with_homology += r.reduced_betti is not None
                bad += not r.consistent
    verdict(7, bad == 0 and total > 0,
            f"{total} intervals, {with_homology} with GF(2) homology, {bad} inconsistencies")


def test_criterion_08_complex(bruhat):
    G = bruhat.G
    rows = []
    ok = True
    for a in OBJECTS:
        cx = coxeter_complex(G, a)
        K = cx.complex
        report = K.pseudomanifold_report()
        faces = geometric_faces(G, a)
        ar = arrangement(G, a, faces)
        this = (K.is_pure() and K.dimension == 2 and report.closed and K.euler_characteristic() == 2
                and K.betti_gf2() == (1, 0, 1) and verify_isomorphism(cx, faces).ok
                and len(ar.normals) == 8 and ar.simplicial)
        ok = ok and this
        rows.append(f"{a}:{'ok' if this else 'bad'}")
    verdict(8, ok, "pure dim 2, closed, chi=2, betti (1,0,1), isomorphic, 8 simplicial hyperplanes; "
                   + " ".join(rows))


def test_criterion_09_shelling(bruhat):
    G = bruhat.G
    results = {}
    for a in OBJECTS:
        cx = coxeter_complex(G, a)
        order = linear_extension(G, a)
        P = poset(G, a)
        # the order really is a linear extension
        pos = {k: n for n, k in enumerate(order)}
        assert all(pos[lo] < pos[hi] for lo, hi, _ in P.covers)
        results[a] = cx.complex.shelling_check([cx.facets[k] for k in order]).ok
    verdict(9, all(results.values()), f"length-lex shelling per object: {results}")


def test_criterion_10_fixtures(a2, b2, a1):
    from test_roots import closure_oracle

    checks = {}
    # A2 against S_3: six permutations, three inversion-positive roots, hexagon
    G = a2.G
    P = poset(G, "a")
    cx = coxeter_complex(G, "a")
    checks["A2"] = (len(P) == 6 and set(a2.roots.positive["a"]) == {(1, 0), (0, 1), (1, 1)}
                    and P.rank_sizes() == (1, 2, 2, 1) and len(P.covers) == 6
                    and cx.complex.f_vector == (6, 6) and cx.complex.betti_gf2() == (1, 1))
    checks["B2"] = (len(b2.G.hom_to("a")) == 8 and b2.roots.count("a") == 4
                    and set(b2.roots.positive["a"]) == closure_oracle([[2, -1], [-2, 2]]))
    checks["A1"] = len(a1.G.hom_to("a")) == 2
    affine = generate_roots(CartanScheme.single([[2, -2], [-2, 2]]))
    checks["affine"] = not affine.finite
    verdict(10, all(checks.values()), str(checks))


def test_criterion_11_restriction(bruhat):
    G = bruhat.G
    failures = 0
    for J in subsets(3):
        if not J:
            continue
        pos = sorted(J)
        sub = bruhat.scheme.restrict(pos)
        H = WeylGroupoid(sub, generate_roots(sub))
        for a in OBJECTS:
            image = set()
            for x in H.hom_to(a):
                w = G.from_word([pos[i] for i in H.word(x)], x.source)
                failures += w.length != x.length or w.target != a
                failures += G.length_J(w, J) != w.length
                image.add(w)
            parabolic = {w for w in G.hom_to(a) if G.content(w) <= J}
            failures += image != parabolic or len(image) != len(H.hom_to(a))
    verdict(11, failures == 0, f"7 subsets x 5 objects, {failures} failures")
