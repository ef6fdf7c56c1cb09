from __future__ import annotations

import json
from math import factorial

import numpy as np
import pytest

from imsets.core import Triplet
from imsets.enumeration import (
    CountReport,
    brute_force_fiber,
    connected_components,
    count_by_patterns,
    count_patterns,
    count_representations,
    count_sigma_indecomposable,
    count_two_row,
    degree_table,
    enumerate_rift_patterns,
    fiber_graph,
    labeled_count,
    reachable,
    read_report_csv,
    standard_reachable_count,
    table_report,
)
from imsets.exceptions import WorkLimitExceeded
from imsets.representation import Canonicalizer, validate
from imsets.resources import read_data

GOLDEN = {(r[0], r[1]): r for r in read_report_csv(read_data("table2.csv"))}


def test_oracle_small_sizes():
    assert len(brute_force_fiber(2, 2)) == 12
    for m in range(1, 5):
        assert len(brute_force_fiber(1, m)) == factorial(m)
        assert len(brute_force_fiber(m, 1)) == factorial(m)


def test_oracle_33(fiber33):
    assert len(fiber33) == 5796 == 161 * 36
    assert len(set(fiber33)) == len(fiber33)
    assert all(validate(g) for g in fiber33)


@pytest.mark.parametrize("dims", [(2, 2), (1, 3), (2, 3)])
def test_oracle_pruning_is_sound(dims):
    assert set(brute_force_fiber(*dims, prune=False)) == set(brute_force_fiber(*dims))


def test_oracle_threads_same_order():
    assert brute_force_fiber(2, 4, threads=3) == brute_force_fiber(2, 4)


def test_oracle_work_limit():
    with pytest.raises(WorkLimitExceeded):
        brute_force_fiber(2, 4, max_labeled=100)
    with pytest.raises(ValueError):
        brute_force_fiber(0, 2)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (2, 4), (3, 3)])
def test_oracle_matches_counting(dims, request):
    fiber = request.getfixturevalue("fiber33") if dims == (3, 3) else brute_force_fiber(*dims)
    reps = count_representations(*dims)
    assert len(fiber) == labeled_count(*dims, reps)
    canon = Canonicalizer(Triplet.standard(*dims))
    assert len({canon.key(g.cells) for g in fiber}) == reps


def test_graph_single_row():
    g = fiber_graph(brute_force_fiber(1, 3))
    assert len(g.vertices) == 6
    assert connected_components(g) == 1
    # adjacent transpositions of 3 symbols: every vertex has degree 2
    assert degree_table(g) == {2: 6}


def test_graph_two_by_two():
    g = fiber_graph(brute_force_fiber(2, 2))
    assert len(g.vertices) == 12
    assert connected_components(g) == 1
    assert (g.edges[:, 0] < g.edges[:, 1]).all()


@pytest.mark.parametrize("dims", [(2, 3), (2, 4)])
def test_graph_connected(dims):
    fiber = brute_force_fiber(*dims)
    g = fiber_graph(fiber)
    assert len(g.vertices) % (factorial(dims[0]) * factorial(dims[1])) == 0
    assert connected_components(g) == 1
    assert standard_reachable_count(*dims) == len(fiber)


def test_components_counts_disconnected_pieces():
    fiber = brute_force_fiber(2, 2)
    g = fiber_graph(fiber)
    cut = type(g)(g.vertices, np.zeros((0, 2), dtype=np.int64))
    assert connected_components(cut) == 12


def test_reachable_33(fiber33):
    assert reachable(fiber33[123]) == {g.cells for g in fiber33}


def test_two_row_recurrence():
    assert [count_two_row(m) for m in range(1, 6)] == [1, 3, 11, 47, 231]
    for m in range(2, 7):
        assert count_two_row(m) == count_representations(2, m)


def test_pattern_stream():
    ps = list(enumerate_rift_patterns(3, 3))
    assert len(ps) == 81 and len(set(ps)) == 81
    assert [p.index for p in ps] == list(range(81))
    assert len(list(enumerate_rift_patterns(2, 2))) == 3
    with pytest.raises(WorkLimitExceeded):
        next(enumerate_rift_patterns(5, 5, max_patterns=1000))


def test_two_by_two_by_pattern_weights():
    ws = sorted(p.weight() for p in enumerate_rift_patterns(2, 2))
    assert ws == [1, 1, 1]


@pytest.mark.parametrize("dims", [(2, 3), (3, 3), (3, 4), (2, 5), (4, 4)])
def test_vectorized_matches_scalar(dims):
    assert count_patterns(*dims) == count_by_patterns(*dims)
    assert count_patterns(*dims, block_digits=2, threads=3) == count_by_patterns(*dims)


@pytest.mark.parametrize("dims", sorted(k for k in GOLDEN if k != (5, 5)))
def test_counts_match_golden(dims):
    assert count_patterns(*dims).row() == GOLDEN[dims]


def test_sigma_counts():
    assert count_sigma_indecomposable(3, 3) == (2, 2)
    assert count_sigma_indecomposable(3, 4) == (40, 96)
    for m in range(2, 7):
        assert count_sigma_indecomposable(2, m) == (0, 0)


def test_counts_increase_with_B():
    for nA in (2, 3, 4):
        rows = [GOLDEN[nA, nB] for nB in range(nA, 6)]
        assert all(x[3] < y[3] for x, y in zip(rows, rows[1:]))


def test_report_formats():
    rep = table_report(2, 2)
    assert rep.to_csv().splitlines()[1] == "2,2,3,3,0,0"
    assert json.loads(rep.to_json())[0]["representations"] == 3
    assert "rift_patterns" in rep.to_text()
    rep = table_report(3, 5)
    golden_lines = read_data("table2.csv").splitlines()
    assert rep.to_csv().splitlines() == golden_lines[:1] + [l for l in golden_lines[1:] if int(l.split(",")[0]) <= 3]
    assert isinstance(rep, CountReport)


def test_counts_are_python_ints():
    c = count_patterns(4, 5)
    assert all(type(x) is int for x in c.row())
