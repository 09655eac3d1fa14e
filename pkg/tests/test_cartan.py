import copy
import itertools

import pytest
from hypothesis import given, strategies as st

from weylgroupoid import (CartanScheme, SchemeError, generate_roots, parse_scheme_file, restrict,
                          simple_reflection_matrix, validate_scheme)
from weylgroupoid.linalg import determinant, identity, matmul


def test_bruhat_is_a_cartan_scheme(bruhat):
    assert validate_scheme(bruhat.raw).ok
    assert bruhat.scheme.edges() == [("a", 1, "b"), ("d", 1, "e"), ("b", 2, "c"), ("c", 3, "d")]


def test_non_involution_is_reported_at_b(bruhat):
    raw = copy.deepcopy(bruhat.raw)
    raw["reflections"]["1"]["b"] = "c"
    report = validate_scheme(raw)
    assert report.has("C1", "b", 1)
    assert not report.structural


def test_c2_violation_across_rho1(bruhat):
    raw = copy.deepcopy(bruhat.raw)
    raw["cartan"]["b"][0][1] = -2
    report = validate_scheme(raw)
    assert report.has("C2", "a", 1, (1, 2))
    assert all(v.kind == "C2" for v in report.violations)


def test_changed_entry_off_rho1_passes_validation_but_roots_blow_up(bruhat):
    # c^a_23 lives in row 2 and rho_2 fixes a, so (C2) cannot see it
    raw = copy.deepcopy(bruhat.raw)
    raw["cartan"]["a"][1][2] = -1
    assert validate_scheme(raw).ok
    assert not generate_roots(CartanScheme.from_raw(raw)).finite


def test_structural_errors_are_separate(bruhat):
    raw = copy.deepcopy(bruhat.raw)
    raw["reflections"]["2"]["a"] = "z"
    raw["cartan"]["c"] = [[2, -1], [-1, 2]]
    report = validate_scheme(raw)
    assert report.structural and not report.axioms
    assert {v.obj for v in report.structural} == {"a", "c"}
    with pytest.raises(SchemeError):
        CartanScheme.from_raw(raw)


def test_gcm_violations():
    raw = {"rank": 2, "objects": ["x"], "reflections": {"1": {"x": "x"}, "2": {"x": "x"}},
           "cartan": {"x": [[2, 1], [0, 3]]}}
    kinds = {(v.kind, v.pair) for v in validate_scheme(raw).violations}
    assert ("GCM", (2, 2)) in kinds
    assert ("GCM", (1, 2)) in kinds


def test_report_is_canonical(bruhat):
    raw = copy.deepcopy(bruhat.raw)
    raw["reflections"]["1"]["b"] = "c"
    raw["cartan"]["b"][0][1] = -2
    shuffled = copy.deepcopy(raw)
    shuffled["objects"] = list(reversed(raw["objects"]))
    assert validate_scheme(raw) == validate_scheme(shuffled) == validate_scheme(copy.deepcopy(raw))


def test_restrict_examples(bruhat, a2):
    r = restrict(bruhat.scheme, [0, 1])
    assert r.cartan["a"] == ((2, -1), (-1, 2))
    assert r.labels == (1, 2)
    assert restrict(bruhat.scheme, range(3)) == bruhat.scheme
    one = restrict(a2.scheme, [0])
    assert one.cartan["a"] == ((2,),) and one.rank == 1
    with pytest.raises(ValueError):
        restrict(bruhat.scheme, [])


def test_restrict_composes(bruhat):
    s = bruhat.scheme
    for k in range(1, 4):
        for K in itertools.combinations(range(3), k):
            for m in range(1, k + 1):
                for sub in itertools.combinations(range(k), m):
                    J = [K[x] for x in sub]
                    assert restrict(restrict(s, K), sub) == restrict(s, J)


def test_simple_reflection_examples(a2, bruhat):
    s1 = simple_reflection_matrix(a2.scheme, 0, "a")
    assert [row[0] for row in s1] == [-1, 0]
    assert [row[1] for row in s1] == [1, 1]
    s2a = simple_reflection_matrix(bruhat.scheme, 1, "a")
    assert tuple(row[2] for row in s2a) == (0, 2, 1)
    for i in range(3):
        for a in bruhat.scheme.objects:
            m = simple_reflection_matrix(bruhat.scheme, i, a)
            assert tuple(row[i] for row in m) == tuple(-int(k == i) for k in range(3))


@given(st.sampled_from("abcde"), st.integers(0, 2))
def test_reflection_is_an_involution_across_rho(a, i):
    s = CartanScheme.from_raw(parse_scheme_file("bruhat"))
    m = simple_reflection_matrix(s, i, a)
    back = simple_reflection_matrix(s, i, s.rho(i, a))
    assert matmul(back, m) == identity(3)
    assert determinant(m) == -1


def test_round_trip(bruhat):
    assert CartanScheme.from_raw(bruhat.scheme.to_raw()) == bruhat.scheme
    assert bruhat.scheme.to_raw() == bruhat.raw
