from __future__ import annotations

from collections import Counter, defaultdict
from math import factorial

import pytest

from imsets.core import ElementaryImset, Triplet
from imsets.enumeration import brute_force_fiber, enumerate_rift_patterns
from imsets.exceptions import IneligibleRiftError
from imsets.representation import RepGrid, apply_move, replay, standard_representation, validate
from imsets.rift import (
    B_RIFT,
    NONE,
    S_RIFT,
    Rift,
    RiftPattern,
    boundary_maps,
    classify_points,
    degree_of_freedom,
    detect_rifts,
    eligible_rifts,
    eliminate_rift,
    elimination_steps,
    is_separable,
    is_sigma_decomposable,
    normalize_to_standard,
    pattern_is_decomposable,
    rifts_by_definition,
    select_eliminable_rift,
    separable_by_sums,
    sigma_decomposition,
)
from imsets.verify import boundary_suite, separability_suite

a1, a2, a3, b1, b2, b3 = range(6)
T22 = Triplet.standard(2, 2)


def bits(*xs):
    return sum(1 << x for x in xs)


def grid22(c00, c01, c10, c11):
    # element indices for 2x2: a1=0, a2=1, b1=2, b2=3
    return RepGrid(T22, [c00, c01, c10, c11])


# ⟨a1,b1|∅⟩ + ⟨a2,b1|a1⟩ + ⟨a2,b2|b1⟩ + ⟨a1,b2|a2b1⟩
SEPARABLE_ON_B = grid22((0, 2, 0), (1, 3, bits(2)), (1, 2, bits(0)), (0, 3, bits(1, 2)))
# ⟨a1,b1|∅⟩ + ⟨a2,b2|a1⟩ + ⟨a1,b2|b1⟩ + ⟨a2,b1|a1b2⟩
THIRD_TYPE = grid22((0, 2, 0), (0, 3, bits(2)), (1, 3, bits(0)), (1, 2, bits(0, 3)))


def test_boundary_maps_example(indec33):
    m = boundary_maps(indec33)
    # cell (1,0) is u<a2,b1|a1>
    assert indec33[1, 0] == ElementaryImset(a2, b1, bits(a1))
    assert m.gamma[1, 0] == bits(a1)
    assert m.a[1, 0] == bits(a1, a2)
    assert m.b[1, 0] == bits(a1, b1)
    assert m.ab[1, 0] == bits(a1, a2, b1)


def test_boundary_invariants_on_fibers(fiber33, fiber24):
    res = boundary_suite(fibers=[((3, 3), fiber33), ((2, 4), fiber24)])
    assert res.checked == len(fiber33) + len(fiber24)
    assert res.failures == 0, res.examples


def test_boundary_suite_catches_broken_grid():
    g = standard_representation(T22)
    bad = g.with_cells({(1, 1): ElementaryImset(a2, b2 + 0, bits(a1))})
    res = boundary_suite(fibers=[((2, 2), [bad])])
    assert res.failures == 1


def test_classify_standard_is_all_inner1():
    g = standard_representation(Triplet.standard(3, 4))
    kinds = Counter(p.kind for p in classify_points(g))
    assert kinds["inner-1"] == 2 * 3
    assert not any(kinds[f"inner-{i}"] for i in range(2, 6))


def test_classify_counterexample(indec33):
    pts = classify_points(indec33)
    kinds = Counter(p.kind for p in pts)
    assert kinds["inner-1"] == 0
    assert [kinds[f"inner-{i}"] for i in range(2, 6)] == [2, 2, 2, 2]
    assert sum(kinds[f"inner-{i}"] for i in range(2, 6)) == 8
    corner = [p for p in pts if p.kind == "corner-C"]
    assert len(corner) == 1 and corner[0].point == 0
    m = boundary_maps(indec33)
    assert [c for c, q in m.gamma.items() if q == 0] == [(0, 0)]
    assert not any(q == 0 for tab in (m.a, m.b, m.ab) for q in tab.values())


def test_detect_rifts_examples(indec33):
    assert detect_rifts(standard_representation(Triplet.standard(3, 3))).is_empty()
    p = detect_rifts(indec33)
    assert p.render() == "bs\nsb"
    assert len(p.rifts) == 4 and all(r.length == 2 for r in p.rifts)
    assert {str(r) for r in p.rifts} == {"r_s(1;1,3)", "r_s(2;0,2)", "r_b(0,2;1)", "r_b(1,3;2)"}
    assert len(detect_rifts(THIRD_TYPE).rifts) == 1


def test_rifts_match_endpoint_rules(fiber33, fiber24):
    for g in list(fiber33) + list(fiber24):
        assert set(detect_rifts(g).rifts) == rifts_by_definition(g)


def test_rift_lengths_at_least_two(fiber33):
    assert min(r.length for g in fiber33 for r in detect_rifts(g).rifts) == 2


def test_pattern_encoding():
    p = RiftPattern.from_string(3, 4, "s.b\nbbs")
    assert p[1, 1] == S_RIFT and p[1, 2] == NONE and p[2, 3] == S_RIFT and p[2, 1] == B_RIFT
    assert RiftPattern.from_index(3, 4, p.index) == p
    assert p.to_string() == "s.bbbs"
    assert [str(r) for r in p.rifts] == ["r_s(1;0,2)", "r_s(2;2,4)", "r_b(1,3;1)", "r_b(1,3;2)", "r_b(0,2;3)"]
    assert [RiftPattern.from_index(3, 3, i).index for i in range(81)] == list(range(81))
    with pytest.raises(ValueError):
        RiftPattern(3, 3, [[0, 0], [0, 3]])


def test_degree_of_freedom_values():
    assert [degree_of_freedom(l) for l in range(1, 6)] == [1, 1, 3, 13, 71]


@pytest.mark.parametrize("l", [2, 3, 4])
def test_degree_of_freedom_against_oracle(l):
    """Fillings of one full-height s-rift of length l in the two-row fiber."""
    fiber = brute_force_fiber(2, l)
    full = "s" * (l - 1)
    hits = sum(1 for g in fiber if detect_rifts(g).to_string() == full)
    assert hits == degree_of_freedom(l) * factorial(2) * factorial(l)


def test_separability_mixed_example():
    g = SEPARABLE_ON_B
    assert validate(g)
    sep = is_separable(g, "B", 1)
    assert sep is not None and sep.part == bits(2)  # {b1} in the 2x2 indexing
    assert validate(sep.lower) and validate(sep.upper)
    assert is_separable(g, "A", 1) is None
    assert separable_by_sums(g, "A", 1) is None


def test_standard_separable_everywhere():
    g = standard_representation(Triplet.standard(3, 4))
    assert all(is_separable(g, "A", i) for i in (1, 2))
    assert all(is_separable(g, "B", i) for i in (1, 2, 3))


def test_counterexample_not_separable(indec33):
    for axis in "AB":
        for i in (1, 2):
            assert is_separable(indec33, axis, i) is None
            assert separable_by_sums(indec33, axis, i) is None
    with pytest.raises(IndexError):
        is_separable(indec33, "A", 3)


def test_rift_criterion_matches_subsums(fiber33, fiber24):
    res = separability_suite(fibers=[((3, 3), fiber33), ((2, 4), fiber24)])
    assert res.failures == 0, res.examples
    assert res.checked == len(fiber33) * 4 + len(fiber24) * 4


def test_sigma_two_rows_always_decomposable(fiber24):
    for g in list(fiber24) + brute_force_fiber(2, 3) + brute_force_fiber(3, 2):
        assert is_sigma_decomposable(g)


def test_sigma_counterexample(indec33):
    assert not is_sigma_decomposable(indec33)
    assert sigma_decomposition(standard_representation(indec33.triplet)) is not None


def test_sigma_indecomposable_count_33(fiber33):
    bad = [g for g in fiber33 if not is_sigma_decomposable(g)]
    assert len(bad) == 2 * factorial(3) ** 2
    assert {detect_rifts(g).to_string() for g in bad} == {"bssb", "sbbs"}


@pytest.mark.parametrize("which", ["fiber33", "fiber34"])
def test_pattern_determinacy(which, request):
    fiber = request.getfixturevalue(which)
    nA, nB = fiber[0].dims
    by_pattern = defaultdict(list)
    for g in fiber:
        by_pattern[detect_rifts(g)].append(g)
    assert len(by_pattern) == 3 ** ((nA - 1) * (nB - 1))
    orbit = factorial(nA) * factorial(nB)
    for p, grids in by_pattern.items():
        assert len(grids) == p.weight() * orbit
        dec = {is_sigma_decomposable(g) for g in grids[:: max(1, len(grids) // 50)]}
        assert dec == {pattern_is_decomposable(p)}


def test_select_examples(indec33):
    assert select_eliminable_rift(detect_rifts(indec33)) == Rift("b", 1, 0, 2)
    assert select_eliminable_rift(RiftPattern(3, 3, [[0, 0], [0, 0]])) is None


def _eligible_by_hand(p, r):
    """Direct reading of the two eliminability conditions."""
    rifts = p.rifts
    same = [o for o in rifts if o.kind == r.kind and o != r]
    other = [o for o in rifts if o.kind != r.kind]
    for o in same:
        if o.level < r.level and set(range(o.lower + 1, o.upper)) & set(range(r.lower + 1, r.upper)):
            return False
    return all(o.level <= r.lower or o.level >= r.upper or r.level <= o.lower for o in other)


@pytest.mark.parametrize("dims", [(3, 3), (3, 4), (4, 4)])
def test_every_nonempty_pattern_has_eliminable_rift(dims):
    n = 0
    for p in enumerate_rift_patterns(*dims):
        r = select_eliminable_rift(p)
        if p.is_empty():
            assert r is None
            continue
        n += 1
        assert r in p.rifts
        assert _eligible_by_hand(p, r)
        for _, x in eligible_rifts(p):
            assert _eligible_by_hand(p, x)
    assert n == 3 ** ((dims[0] - 1) * (dims[1] - 1)) - 1


def test_elimination_walkthrough(indec33):
    steps = list(elimination_steps(indec33))
    names = [str(r) for r, _, _ in steps]
    assert names == ["r_b(0,2;1)", "r_s(1;1,3)", "r_s(2;0,2)", "r_b(1,3;2)"]
    first_grid, first_moves = steps[0][1], steps[0][2]
    assert [m.anchor for m in first_moves] == [(0, 0)]
    assert first_grid[0, 0] == ElementaryImset(a2, b1, 0)
    assert first_grid[1, 0] == ElementaryImset(a1, b1, bits(a2))
    # the third elimination needs a follow-up move in row 0:
    # u<a2,b1|∅> + u<a2,b3|b1> -> u<a2,b3|∅> + u<a2,b1|b3>
    before = steps[1][1]
    after = steps[2][1]
    assert (before[0, 0], before[0, 1]) == (ElementaryImset(a2, b1, 0), ElementaryImset(a2, b3, bits(b1)))
    assert (after[0, 0], after[0, 1]) == (ElementaryImset(a2, b3, 0), ElementaryImset(a2, b1, bits(b3)))
    assert detect_rifts(steps[-1][1]).is_empty()
    for r, g, _ in steps:
        assert validate(g)
        assert r not in detect_rifts(g).rifts


def test_eliminate_trace_replays(indec33):
    r = Rift("b", 1, 0, 2)
    out, trace = eliminate_rift(indec33, r)
    assert replay(indec33, trace) == out
    with pytest.raises(IneligibleRiftError):
        eliminate_rift(out, r)
    with pytest.raises(IneligibleRiftError):
        # present but not eliminable first
        eliminate_rift(indec33, Rift("b", 2, 1, 3))


def test_normalize_examples(indec33):
    assert normalize_to_standard(standard_representation(Triplet.standard(3, 3))) == []
    trace = normalize_to_standard(indec33)
    cur = indec33
    for m in trace:
        cur = apply_move(cur, m)
        assert validate(cur)
    assert cur == standard_representation(indec33.triplet)


def test_normalize_sample_34(fiber34):
    target = standard_representation(Triplet.standard(3, 4))
    for g in fiber34[::997]:
        assert replay(g, normalize_to_standard(g)) == target
