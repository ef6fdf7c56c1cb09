"""Fiber enumeration, fiber-graph connectivity and rift-pattern counting."""

from __future__ import annotations

import csv
import io
import json
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .core import Triplet, card, family_by_level, semi_elementary, subsets_of
from .exceptions import WorkLimitExceeded
from .representation import RepGrid, _cell_sum, standard_representation
from .rift import RiftPattern, degree_of_freedom, pattern_is_decomposable

DEFAULT_MAX_LABELED = 500_000
DEFAULT_MAX_PATTERNS = 3 ** 16


def brute_force_fiber(
    nA: int,
    nB: int,
    max_labeled: int = DEFAULT_MAX_LABELED,
    prune: bool = True,
    threads: int = 1,
) -> list[RepGrid]:
    """All labeled representations of ``u<A,B|∅>`` with ``|A| = nA``, ``|B| = nB``.

    Cells are filled in raster order ``(s, t)`` (``s`` outer) from the level
    classes ``E^{s,t}``.  With ``prune`` on, a candidate is kept only if every
    subset whose level can no longer be touched by later cells already holds
    its target value.  With ``prune`` off every combination is tested against
    the full sum (only practical for tiny sizes).  ``threads > 1`` searches the
    branches below each choice of the first cell concurrently; the output
    order does not depend on the thread count.
    """
    if nA < 1 or nB < 1:
        raise ValueError("nA and nB must be positive")
    T = Triplet.standard(nA, nB)
    groups = family_by_level(T)
    order = [(s, t) for s in range(nA) for t in range(nB)]
    target = semi_elementary(T).entries
    out: list[RepGrid] = []

    if not prune:
        for combo in product(*(groups[k] for k in order)):
            if _cell_sum(combo) == target:
                out.append(RepGrid._raw(T, tuple(combo)))
                if len(out) > max_labeled:
                    raise WorkLimitExceeded(f"more than {max_labeled} labeled representations")
        return out

    size = 1 << T.n
    want = [0] * size
    for S, v in target.items():
        want[S] = v
    level_sets: dict[tuple[int, int], list[int]] = {}
    for S in subsets_of(T.A | T.B):
        level_sets.setdefault((card(S & T.A), card(S & T.B)), []).append(S)
    by_gamma: dict[tuple[int, int], dict[int, list]] = {}
    for lvl, us in groups.items():
        for u in us:
            by_gamma.setdefault(lvl, {}).setdefault(u.gamma, []).append(u)

    # levels that become closed once cell k is placed, excluding (s, t) itself
    closing: list[list[int]] = []
    for s, t in order:
        extra = []
        if t == nB - 1:
            extra += level_sets[s, nB]
        if s == nA - 1:
            extra += level_sets[nA, t]
        if s == nA - 1 and t == nB - 1:
            extra += level_sets[nA, nB]
        closing.append(extra)

    ncells = nA * nB

    def search(first) -> list[RepGrid]:
        # each branch owns its partial sums, so branches can run concurrently
        found: list[RepGrid] = []
        partial = [0] * size
        cells: list = [None] * ncells

        def place(u, sign):
            a, b, g = u
            ag, bg = g | 1 << a, g | 1 << b
            partial[g] += sign
            partial[ag | bg] += sign
            partial[ag] -= sign
            partial[bg] -= sign

        def rec(k: int) -> None:
            if k == ncells:
                found.append(RepGrid._raw(T, tuple(cells)))
                if len(found) > max_labeled:
                    raise WorkLimitExceeded(f"more than {max_labeled} labeled representations")
                return
            lvl = order[k]
            gamma = None
            for S in level_sets[lvl]:
                d = want[S] - partial[S]
                if d:
                    if d != 1 or gamma is not None:
                        return
                    gamma = S
            if gamma is None:
                return
            checks = closing[k]
            candidates = by_gamma[lvl].get(gamma, ()) if k else (first,)
            for u in candidates:
                place(u, 1)
                if all(partial[S] == want[S] for S in checks):
                    cells[k] = u
                    rec(k + 1)
                place(u, -1)

        rec(0)
        return found

    firsts = groups[0, 0]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(search, firsts))
    else:
        parts = [search(u) for u in firsts]
    out = [g for part in parts for g in part]
    if len(out) > max_labeled:
        raise WorkLimitExceeded(f"more than {max_labeled} labeled representations")
    return out


@dataclass
class FiberGraph:
    """Grids joined by single two-by-two moves; ``edges`` holds index pairs ``i < j``."""

    vertices: list[RepGrid]
    edges: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.int64))

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def _neighbours(cells: tuple, nA: int, nB: int) -> Iterator[tuple]:
    """Cell tuples one move away (plain tuples; they compare equal to grid cells)."""
    for s in range(nA):
        base = s * nB
        for t in range(nB - 1):
            i = base + t
            a1, b1, g1 = cells[i]
            a2, b2, g2 = cells[i + 1]
            if a1 == a2 and g2 == g1 | 1 << b1:
                out = list(cells)
                out[i] = (a1, b2, g1)
                out[i + 1] = (a1, b1, g1 | 1 << b2)
                yield tuple(out)
    for s in range(nA - 1):
        for t in range(nB):
            i = s * nB + t
            j = i + nB
            a1, b1, g1 = cells[i]
            a2, b2, g2 = cells[j]
            if b1 == b2 and g2 == g1 | 1 << a1:
                out = list(cells)
                out[i] = (a2, b1, g1)
                out[j] = (a1, b1, g1 | 1 << a2)
                yield tuple(out)


def fiber_graph(fiber: Sequence[RepGrid]) -> FiberGraph:
    """Move graph on a fiber; raises ``KeyError`` if a move leaves the vertex set."""
    vertices: list[RepGrid] = []
    index: dict[tuple, int] = {}
    for g in fiber:
        if g.cells not in index:
            index[g.cells] = len(vertices)
            vertices.append(g)
    if not vertices:
        return FiberGraph(vertices)
    nA, nB = vertices[0].dims
    src: list[int] = []
    dst: list[int] = []
    for i, g in enumerate(vertices):
        for nb in _neighbours(g.cells, nA, nB):
            j = index[nb]
            if i < j:
                src.append(i)
                dst.append(j)
    edges = np.column_stack([np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64)])
    return FiberGraph(vertices, edges)


def connected_components(graph: FiberGraph) -> int:
    n = len(graph.vertices)
    if n == 0:
        return 0
    e = graph.edges
    adj = coo_matrix((np.ones(len(e), dtype=np.int8), (e[:, 0], e[:, 1])), shape=(n, n))
    return int(_cc(adj, directed=False)[0])


def reachable(start: RepGrid) -> set[tuple]:
    """Cell tuples reachable from ``start`` by moves (breadth-first)."""
    nA, nB = start.dims
    seen = {start.cells}
    queue = deque([start.cells])
    while queue:
        cur = queue.popleft()
        for nb in _neighbours(cur, nA, nB):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen


def degree_table(graph: FiberGraph) -> dict[int, int]:
    n = len(graph.vertices)
    deg = np.bincount(graph.edges.ravel(), minlength=n) if n else np.zeros(0, dtype=int)
    values, counts = np.unique(deg, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def count_two_row(m: int) -> int:
    """Representatives for ``|A| = 2, |B| = m`` by the two-row recurrence."""
    return _r2(m)


@lru_cache(maxsize=None)
def _r2(m: int) -> int:
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return 1
    return factorial(m) + sum(factorial(k) * _r2(m - k) for k in range(1, m))


def _n_patterns(nA: int, nB: int, max_patterns: int) -> int:
    if nA < 1 or nB < 1:
        raise ValueError("nA and nB must be positive")
    n = 3 ** ((nA - 1) * (nB - 1))
    if n > max_patterns:
        raise WorkLimitExceeded(f"{n} rift patterns exceed the limit of {max_patterns}")
    return n


def enumerate_rift_patterns(nA: int, nB: int, max_patterns: int = DEFAULT_MAX_PATTERNS) -> Iterator[RiftPattern]:
    """Every trit grid, in base-3 counter order."""
    n = _n_patterns(nA, nB, max_patterns)
    for i in range(n):
        yield RiftPattern.from_index(nA, nB, i)


@dataclass(frozen=True)
class Counts:
    nA: int
    nB: int
    rift_patterns: int
    representations: int
    sigma_indec_patterns: int
    sigma_indec_representations: int

    def row(self) -> list[int]:
        return [
            self.nA,
            self.nB,
            self.rift_patterns,
            self.representations,
            self.sigma_indec_patterns,
            self.sigma_indec_representations,
        ]


def count_by_patterns(nA: int, nB: int, max_patterns: int = DEFAULT_MAX_PATTERNS) -> Counts:
    """Reference count: iterate pattern objects one by one."""
    n = reps = ind_p = ind_r = 0
    for p in enumerate_rift_patterns(nA, nB, max_patterns):
        w = p.weight()
        n += 1
        reps += w
        if not pattern_is_decomposable(p):
            ind_p += 1
            ind_r += w
    return Counts(nA, nB, n, reps, ind_p, ind_r)


class _PatternBlock:
    """A contiguous range of pattern indices decoded into per-crossing trit arrays."""

    def __init__(self, nA: int, nB: int, low: np.ndarray, high_digits: Sequence[int]):
        self.nA, self.nB = nA, nB
        self.trits = list(low) + [np.full(low[0].shape if low else (1,), d, dtype=np.int8) for d in high_digits]

    def at(self, s: int, t: int) -> np.ndarray:
        return self.trits[(s - 1) * (self.nB - 1) + (t - 1)]


def _low_digits(k: int) -> list[np.ndarray]:
    idx = np.arange(3 ** k, dtype=np.int64)
    out = []
    for _ in range(k):
        out.append((idx % 3).astype(np.int8))
        idx //= 3
    return out


def _block_weights(blk: _PatternBlock, dtab: np.ndarray) -> np.ndarray:
    nA, nB = blk.nA, blk.nB
    m = len(blk.trits[0])
    w = np.ones(m, dtype=np.int64)
    for s in range(1, nA):
        run = np.zeros(m, dtype=np.int64)
        for t in range(1, nB):
            hit = blk.at(s, t) == 1
            w *= dtab[np.where(hit, 0, run + 1)]
            run = np.where(hit, run + 1, 0)
        w *= dtab[run + 1]
    for t in range(1, nB):
        run = np.zeros(m, dtype=np.int64)
        for s in range(1, nA):
            hit = blk.at(s, t) == 2
            w *= dtab[np.where(hit, 0, run + 1)]
            run = np.where(hit, run + 1, 0)
        w *= dtab[run + 1]
    return w


def _block_decomposable(blk: _PatternBlock) -> np.ndarray | bool:
    """σ-decomposability of every pattern in the block, one rectangle at a time."""
    nA, nB = blk.nA, blk.nB
    # cut_a[c][t0, t1]: no b-rift on crossings (c, t) with t0 < t < t1
    cut_a: dict[tuple[int, int, int], np.ndarray | bool] = {}
    for c in range(1, nA):
        for t0 in range(nB):
            acc: np.ndarray | bool = True
            cut_a[c, t0, t0 + 1] = True
            for t in range(t0 + 1, nB):
                acc = acc & (blk.at(c, t) != 2)
                cut_a[c, t0, t + 1] = acc
    cut_b: dict[tuple[int, int, int], np.ndarray | bool] = {}
    for c in range(1, nB):
        for s0 in range(nA):
            acc = True
            cut_b[c, s0, s0 + 1] = True
            for s in range(s0 + 1, nA):
                acc = acc & (blk.at(s, c) != 1)
                cut_b[c, s0, s + 1] = acc

    dec: dict[tuple[int, int, int, int], np.ndarray | bool] = {}
    rects = [
        (s0, s1, t0, t1)
        for s0 in range(nA)
        for s1 in range(s0 + 1, nA + 1)
        for t0 in range(nB)
        for t1 in range(t0 + 1, nB + 1)
    ]
    rects.sort(key=lambda r: (r[1] - r[0]) * (r[3] - r[2]))
    for s0, s1, t0, t1 in rects:
        if s1 - s0 == 1 or t1 - t0 == 1:
            dec[s0, s1, t0, t1] = True
            continue
        res: np.ndarray | bool = False
        for c in range(s0 + 1, s1):
            term = cut_a[c, t0, t1] & dec[s0, c, t0, t1] & dec[c, s1, t0, t1]
            res = res | term
        for c in range(t0 + 1, t1):
            term = cut_b[c, s0, s1] & dec[s0, s1, t0, c] & dec[s0, s1, c, t1]
            res = res | term
        dec[s0, s1, t0, t1] = res
    return dec[0, nA, 0, nB]


def _count_block(nA: int, nB: int, low: list[np.ndarray], high: Sequence[int], dtab: np.ndarray) -> tuple[int, int, int, int]:
    blk = _PatternBlock(nA, nB, low, high)
    w = _block_weights(blk, dtab)
    dec = _block_decomposable(blk)
    m = len(w)
    if isinstance(dec, (bool, np.bool_)):
        ind = np.zeros(m, dtype=bool) if dec else np.ones(m, dtype=bool)
    else:
        ind = ~dec
    return m, int(w.sum()), int(ind.sum()), int(w[ind].sum())


def count_patterns(
    nA: int,
    nB: int,
    threads: int = 1,
    max_patterns: int = DEFAULT_MAX_PATTERNS,
    block_digits: int = 12,
) -> Counts:
    """Counts over all rift patterns, vectorized over blocks of ``3**block_digits``."""
    total = _n_patterns(nA, nB, max_patterns)
    k = (nA - 1) * (nB - 1)
    if k == 0:
        return Counts(nA, nB, 1, 1, 0, 0)
    lowk = min(k, block_digits)
    low = _low_digits(lowk)
    dtab = np.array([1] + [degree_of_freedom(l) for l in range(1, max(nA, nB) + 1)], dtype=np.int64)
    highs = list(product(range(3), repeat=k - lowk))
    highs = [tuple(reversed(h)) for h in highs]

    def job(h):
        return _count_block(nA, nB, low, h, dtab)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(job, highs))
    else:
        parts = [job(h) for h in highs]
    n = sum(p[0] for p in parts)
    assert n == total
    return Counts(nA, nB, n, sum(p[1] for p in parts), sum(p[2] for p in parts), sum(p[3] for p in parts))


def count_representations(nA: int, nB: int, threads: int = 1, max_patterns: int = DEFAULT_MAX_PATTERNS) -> int:
    """Representatives (relabeling classes): sum over patterns of the d-product."""
    return count_patterns(nA, nB, threads, max_patterns).representations


def count_sigma_indecomposable(nA: int, nB: int, threads: int = 1, max_patterns: int = DEFAULT_MAX_PATTERNS) -> tuple[int, int]:
    c = count_patterns(nA, nB, threads, max_patterns)
    return c.sigma_indec_patterns, c.sigma_indec_representations


REPORT_COLUMNS = [
    "|A|",
    "|B|",
    "rift_patterns",
    "representations",
    "sigma_indec_patterns",
    "sigma_indec_representations",
]


@dataclass
class CountReport:
    rows: list[Counts]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for c in self.rows:
            w.writerow(c.row())
        return buf.getvalue()

    def to_json(self, **kw) -> str:
        return json.dumps([dict(zip(REPORT_COLUMNS, c.row())) for c in self.rows], **kw)

    def to_text(self) -> str:
        widths = [3, 3, 12, 14, 12, 14]
        lines = ["  ".join(h.rjust(w) for h, w in zip(REPORT_COLUMNS, widths))]
        for c in self.rows:
            lines.append("  ".join(str(x).rjust(w) for x, w in zip(c.row(), widths)))
        return "\n".join(lines) + "\n"


def table_report(max_nA: int, max_nB: int, threads: int = 1, max_patterns: int = DEFAULT_MAX_PATTERNS, progress=None) -> CountReport:
    """Counts for every ``2 <= |A| <= |B|`` within the bounds."""
    rows = []
    for nA in range(2, max_nA + 1):
        for nB in range(nA, max_nB + 1):
            c = count_patterns(nA, nB, threads, max_patterns)
            if progress:
                progress(c)
            rows.append(c)
    return CountReport(rows)


def read_report_csv(text: str) -> list[list[int]]:
    rows = list(csv.reader(io.StringIO(text)))
    return [[int(x) for x in r] for r in rows[1:]]


def labeled_count(nA: int, nB: int, representatives: int) -> int:
    return representatives * factorial(nA) * factorial(nB)


def standard_reachable_count(nA: int, nB: int) -> int:
    return len(reachable(standard_representation(Triplet.standard(nA, nB))))

