"""Built-in property suites.

Each suite returns a :class:`SuiteResult`; a run passes when every suite has
zero failures.  The suites are exhaustive where that is cheap and seeded
random otherwise, so two runs with the same seed check the same cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from .core import Triplet, card, split_identity_check
from .enumeration import brute_force_fiber
from .representation import (
    RepGrid,
    apply_move,
    available_moves,
    standard_representation,
    validate,
)
from .rift import (
    INNER_KINDS,
    boundary_maps,
    classify_points,
    is_separable,
    separable_by_sums,
)
from .exceptions import ClassificationError

MAX_REPORTED = 5


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.checked > 0

    def fail(self, msg: str) -> None:
        self.failures += 1
        if len(self.examples) < MAX_REPORTED:
            self.examples.append(msg)

    def to_dict(self) -> dict:
        return {"suite": self.name, "checked": self.checked, "failures": self.failures, "examples": self.examples}


def split_identity_suite(max_n: int = 6) -> SuiteResult:
    """Every placement of up to ``max_n`` variables into X, Y1, Y2, Z or nowhere."""
    res = SuiteResult("split-identity")
    for n in range(1, max_n + 1):
        for assign in product(range(5), repeat=n):
            parts = [0, 0, 0, 0]
            for v, k in enumerate(assign):
                if k < 4:
                    parts[k] |= 1 << v
            res.checked += 1
            if not split_identity_check(*parts, n=n):
                res.fail(f"n={n} X,Y1,Y2,Z={[hex(p) for p in parts]}")
    return res


def _cardinality_chain(g: RepGrid) -> list[str]:
    T = g.triplet
    bad = []
    for s in range(g.nA):
        for t in range(g.nB):
            gm, ag, bg, abg = g[s, t].points()
            got = [(card(T.A & x), card(T.B & x)) for x in (gm, ag, bg, abg)]
            if got != [(s, t), (s + 1, t), (s, t + 1), (s + 1, t + 1)]:
                bad.append(f"cell {(s, t)} cardinalities {got}")
    return bad


def _injectivity(g: RepGrid) -> list[str]:
    bad = []
    for name, table in zip(("gamma", "a", "b", "ab"), boundary_maps(g)):
        if len(set(table.values())) != len(table):
            bad.append(f"map {name} not injective")
    return bad


def _point_classes(g: RepGrid) -> list[str]:
    try:
        pts = classify_points(g)
    except ClassificationError as exc:
        return [str(exc)]
    bad = []
    kinds = [p.kind for p in pts]
    for corner in ("corner-C", "corner-AC", "corner-BC", "corner-ABC"):
        if kinds.count(corner) != 1:
            bad.append(f"{corner} seen {kinds.count(corner)} times")
    nA, nB = g.nA, g.nB
    expected_edges = {"edge-ll": nA - 1, "edge-lr": nB - 1, "edge-ul": nA - 1, "edge-ur": nB - 1}
    for kind, n in expected_edges.items():
        if kinds.count(kind) != n:
            bad.append(f"{kind} seen {kinds.count(kind)} times, expected {n}")
    # every interior crossing carries an inner-1, or a rift's pair of inner points
    inner = [p for p in pts if p.kind in INNER_KINDS]
    covered = {(p.s, p.t) for p in inner}
    want = {(s, t) for s in range(1, nA) for t in range(1, nB)}
    if covered != want:
        bad.append(f"inner points cover {sorted(covered)} instead of every crossing")
    return bad


def _fibers(sizes: Sequence[tuple[int, int]]) -> list[tuple[tuple[int, int], list[RepGrid]]]:
    return [((a, b), brute_force_fiber(a, b)) for a, b in sizes]


def boundary_suite(sizes: Sequence[tuple[int, int]] = ((3, 3), (2, 4)), fibers=None) -> SuiteResult:
    """Cardinality chain, injectivity and point classification on whole fibers."""
    res = SuiteResult("boundary-maps")
    for dims, fiber in fibers or _fibers(sizes):
        for i, g in enumerate(fiber):
            res.checked += 1
            bad = _cardinality_chain(g) + _injectivity(g) + _point_classes(g)
            if bad:
                res.fail(f"{dims} grid #{i}: {bad[0]}")
    return res


def separability_suite(sizes: Sequence[tuple[int, int]] = ((3, 3),), fibers=None) -> SuiteResult:
    """The rift criterion for separability against a search over sub-sums."""
    res = SuiteResult("separability")
    for dims, fiber in fibers or _fibers(sizes):
        for i, g in enumerate(fiber):
            for axis, n in (("A", g.nA), ("B", g.nB)):
                for index in range(1, n):
                    res.checked += 1
                    sep = is_separable(g, axis, index)
                    direct = separable_by_sums(g, axis, index)
                    if (sep is None) != (direct is None) or (sep is not None and sep.part != direct):
                        res.fail(f"{dims} grid #{i} axis {axis} index {index}")
                        continue
                    if sep is not None and not (validate(sep.lower) and validate(sep.upper)):
                        res.fail(f"{dims} grid #{i} axis {axis} index {index}: halves do not validate")
    return res


def move_suite(
    pairs: int = 10_000,
    seed: int = 0,
    sizes: Sequence[tuple[int, int]] = ((2, 3), (3, 3), (3, 4), (4, 4), (4, 5)),
    walk: int = 40,
) -> SuiteResult:
    """Random (grid, move) pairs: moves are involutions and preserve the sum.

    Grids are drawn from seeded random walks started at the standard
    representation of each size in turn.
    """
    res = SuiteResult("moves")
    rng = random.Random(seed)
    states = {dims: standard_representation(Triplet.standard(*dims)) for dims in sizes}
    target = {dims: g.imset() for dims, g in states.items()}
    for k in range(pairs):
        dims = sizes[k % len(sizes)]
        g = states[dims]
        for _ in range(rng.randrange(1, walk)):
            g = apply_move(g, rng.choice(available_moves(g)))
        states[dims] = g
        m = rng.choice(available_moves(g))
        h = apply_move(g, m)
        res.checked += 1
        if apply_move(h, m) != g:
            res.fail(f"{dims} {m} is not an involution")
        elif h.imset() != target[dims] or not validate(h):
            res.fail(f"{dims} {m} changes the sum")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "split-identity": split_identity_suite,
    "boundary-maps": boundary_suite,
    "separability": separability_suite,
    "moves": move_suite,
}


def run_all(seed: int = 0, pairs: int = 10_000, max_n: int = 6) -> list[SuiteResult]:
    fibers = _fibers(((3, 3), (2, 4)))
    return [
        split_identity_suite(max_n),
        boundary_suite(fibers=fibers),
        separability_suite(fibers=fibers[:1]),
        move_suite(pairs, seed),
    ]
