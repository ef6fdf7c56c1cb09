"""Representations of a semi-elementary imset as grids of elementary imsets.

A representation of ``u<A,B|C>`` uses exactly one elementary imset from each
level class ``E^{s,t}`` (``s = |A∩Γ|``, ``t = |B∩Γ|``), so it is stored as an
``|A| x |B|`` grid whose cell ``(s, t)`` holds that imset.  The grid is the
primary type; :class:`CoeffVector` is the interchange form used by the
matrix formulation of the fiber.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, NamedTuple, Sequence

from .core import (
    ElementaryImset,
    Imset,
    Triplet,
    VarSet,
    element_names,
    elementary_family,
    members,
    semi_elementary,
    varset,
)
from .exceptions import (
    InapplicableMoveError,
    InvalidPermutationError,
    InvalidTripletError,
    NotInFiberError,
)

A_SWAP = "a-swap"
B_SWAP = "b-swap"


class RepGrid:
    """Cells ``u(s, t)`` of a representation, stored row-major (``s`` outer)."""

    __slots__ = ("triplet", "nA", "nB", "cells")

    def __init__(self, triplet: Triplet, cells: Iterable):
        triplet.require_nondegenerate()
        self.triplet = triplet
        self.nA = triplet.nA
        self.nB = triplet.nB
        cells = list(cells)
        if cells and not isinstance(cells[0], ElementaryImset) and isinstance(cells[0][0], (list, tuple)):
            cells = [c for row in cells for c in row]
        cells = tuple(c if isinstance(c, ElementaryImset) else ElementaryImset(*c) for c in cells)
        if len(cells) != self.nA * self.nB:
            raise NotInFiberError(f"expected {self.nA * self.nB} cells, got {len(cells)}")
        self.cells = cells

    @classmethod
    def _raw(cls, triplet: Triplet, cells: tuple) -> "RepGrid":
        g = object.__new__(cls)
        g.triplet = triplet
        g.nA = triplet.nA
        g.nB = triplet.nB
        g.cells = cells
        return g

    @property
    def dims(self) -> tuple[int, int]:
        return self.nA, self.nB

    def __getitem__(self, st: tuple[int, int]) -> ElementaryImset:
        s, t = st
        if not (0 <= s < self.nA and 0 <= t < self.nB):
            raise IndexError(st)
        return self.cells[s * self.nB + t]

    def rows(self) -> list[tuple[ElementaryImset, ...]]:
        nB = self.nB
        return [self.cells[s * nB:(s + 1) * nB] for s in range(self.nA)]

    def __eq__(self, other):
        if not isinstance(other, RepGrid):
            return NotImplemented
        return self.triplet == other.triplet and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        names = element_names(self.triplet)
        return "RepGrid(" + " + ".join(c.label(names) for c in self.cells) + ")"

    def imset(self) -> Imset:
        return Imset(_cell_sum(self.cells), self.triplet.n)

    def with_cells(self, updates: Mapping[tuple[int, int], ElementaryImset]) -> "RepGrid":
        cells = list(self.cells)
        for (s, t), u in updates.items():
            cells[s * self.nB + t] = u
        return RepGrid._raw(self.triplet, tuple(cells))


def _cell_sum(cells: Iterable[ElementaryImset]) -> dict[VarSet, int]:
    acc: dict[VarSet, int] = {}
    for a, b, g in cells:
        ab = 1 << a | 1 << b
        for S, v in ((g, 1), (g | ab, 1), (g | 1 << a, -1), (g | 1 << b, -1)):
            acc[S] = acc.get(S, 0) + v
    return {S: v for S, v in acc.items() if v}


def _target(t: Triplet) -> dict[VarSet, int]:
    return semi_elementary(t).entries


def diagnose(g: RepGrid) -> list[str]:
    """Violated constraints of a grid; empty iff it is a representation."""
    t = g.triplet
    problems = []
    for s in range(g.nA):
        for tt in range(g.nB):
            u = g[s, tt]
            if u.a == u.b or u.gamma >> u.a & 1 or u.gamma >> u.b & 1:
                problems.append(f"cell ({s},{tt}) is not an elementary imset")
            elif not u.in_family(t):
                problems.append(f"cell ({s},{tt}) is outside the family of the triplet")
            elif u.level(t) != (s, tt):
                problems.append(f"cell ({s},{tt}) has level {u.level(t)}")
    if problems:
        return problems
    got = _cell_sum(g.cells)
    want = _target(t)
    for S in sorted(set(got) | set(want)):
        if got.get(S, 0) != want.get(S, 0):
            problems.append(f"sum is {got.get(S, 0)} at subset {S:#x}, expected {want.get(S, 0)}")
    return problems


def validate(g: RepGrid) -> bool:
    return not diagnose(g)


def _order(mask: VarSet, order: Sequence[int] | None, what: str) -> list[int]:
    if order is None:
        return members(mask)
    order = list(order)
    if sorted(order) != members(mask):
        raise InvalidPermutationError(f"{what} order {order} is not a permutation of {members(mask)}")
    return order


def standard_representation(
    t: Triplet, a_order: Sequence[int] | None = None, b_order: Sequence[int] | None = None
) -> RepGrid:
    """Cell ``(i, j) = u<a_i, b_j | a_1..a_{i-1} b_1..b_{j-1} C>`` for the given orders."""
    t.require_nondegenerate()
    alpha = _order(t.A, a_order, "a")
    beta = _order(t.B, b_order, "b")
    cells = []
    a_pre = t.C
    for a in alpha:
        b_pre = 0
        for b in beta:
            cells.append(ElementaryImset(a, b, a_pre | b_pre))
            b_pre |= 1 << b
        a_pre |= 1 << a
    return RepGrid._raw(t, tuple(cells))


@dataclass
class CoeffVector:
    """Non-negative coefficients over the family ``E<A,B,C>`` (absent = 0)."""

    triplet: Triplet
    coefficients: dict[ElementaryImset, int] = field(default_factory=dict)

    def to_list(self) -> list[int]:
        return [self.coefficients.get(u, 0) for u in elementary_family(self.triplet)]

    @classmethod
    def from_list(cls, t: Triplet, values: Sequence[int]) -> "CoeffVector":
        fam = elementary_family(t)
        if len(values) != len(fam):
            raise NotInFiberError(f"expected {len(fam)} coefficients, got {len(values)}")
        return cls(t, {u: int(v) for u, v in zip(fam, values) if v})

    def imset(self) -> Imset:
        n = self.triplet.n
        out = Imset({}, n)
        for u, k in self.coefficients.items():
            out = out + k * u.imset(n)
        return out


def flatten(g: RepGrid) -> CoeffVector:
    return CoeffVector(g.triplet, {u: 1 for u in g.cells})


def grid_from_vector(v: CoeffVector) -> RepGrid:
    """Arrange a fiber member as its grid; raises :class:`NotInFiberError` otherwise."""
    t = v.triplet
    t.require_nondegenerate()
    nA, nB = t.nA, t.nB
    slots: dict[tuple[int, int], ElementaryImset] = {}
    for u, k in sorted(v.coefficients.items()):
        if k < 0:
            raise NotInFiberError(f"negative coefficient for {u}")
        if k == 0:
            continue
        if not u.in_family(t):
            raise NotInFiberError(f"{u} is outside the family of the triplet")
        lvl = u.level(t)
        if k > 1 or lvl in slots:
            raise NotInFiberError(f"level group E^{lvl} has more than one unit coefficient")
        slots[lvl] = u
    for s in range(nA):
        for tt in range(nB):
            if (s, tt) not in slots:
                raise NotInFiberError(f"level group E^{(s, tt)} has no unit coefficient")
    g = RepGrid._raw(t, tuple(slots[s, tt] for s in range(nA) for tt in range(nB)))
    problems = diagnose(g)
    if problems:
        raise NotInFiberError(problems[0])
    return g


class Move(NamedTuple):
    kind: str
    anchor: tuple[int, int]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "anchor": list(self.anchor)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "Move":
        if d["kind"] not in (A_SWAP, B_SWAP):
            raise ValueError(f"unknown move kind {d['kind']!r}")
        s, t = d["anchor"]
        return cls(d["kind"], (int(s), int(t)))


def _applicable(cells: tuple, nA: int, nB: int, kind: str, s: int, t: int) -> bool:
    if kind == B_SWAP:
        if not (0 <= s < nA and 0 <= t < nB - 1):
            return False
        a1, b1, g1 = cells[s * nB + t]
        a2, _, g2 = cells[s * nB + t + 1]
        return a1 == a2 and g2 == g1 | 1 << b1
    if not (0 <= s < nA - 1 and 0 <= t < nB):
        return False
    a1, b1, g1 = cells[s * nB + t]
    _, b2, g2 = cells[(s + 1) * nB + t]
    return b1 == b2 and g2 == g1 | 1 << a1


def is_applicable(g: RepGrid, m: Move) -> bool:
    return _applicable(g.cells, g.nA, g.nB, m.kind, *m.anchor)


def available_moves(g: RepGrid) -> list[Move]:
    """Applicable b-swaps by anchor, then a-swaps by anchor."""
    cells, nA, nB = g.cells, g.nA, g.nB
    out = []
    for s in range(nA):
        for t in range(nB - 1):
            if _applicable(cells, nA, nB, B_SWAP, s, t):
                out.append(Move(B_SWAP, (s, t)))
    for s in range(nA - 1):
        for t in range(nB):
            if _applicable(cells, nA, nB, A_SWAP, s, t):
                out.append(Move(A_SWAP, (s, t)))
    return out


def _swap_cells(cells: tuple, nB: int, kind: str, s: int, t: int) -> tuple:
    out = list(cells)
    i = s * nB + t
    if kind == B_SWAP:
        j = i + 1
        a, b1, g = cells[i]
        b2 = cells[j][1]
        out[i] = ElementaryImset(a, b2, g)
        out[j] = ElementaryImset(a, b1, g | 1 << b2)
    else:
        j = i + nB
        a1, b, g = cells[i]
        a2 = cells[j][0]
        out[i] = ElementaryImset(a2, b, g)
        out[j] = ElementaryImset(a1, b, g | 1 << a2)
    return tuple(out)


def apply_move(g: RepGrid, m: Move) -> RepGrid:
    """Exchange the two cells' a's (or b's) and adjust their Γ's."""
    kind, (s, t) = m
    if kind not in (A_SWAP, B_SWAP) or not _applicable(g.cells, g.nA, g.nB, kind, s, t):
        raise InapplicableMoveError(f"{kind} at {(s, t)} does not apply")
    return RepGrid._raw(g.triplet, _swap_cells(g.cells, g.nB, kind, s, t))


def replay(g: RepGrid, trace: Iterable[Move]) -> RepGrid:
    for m in trace:
        g = apply_move(g, m)
    return g


def _perm_map(mask: VarSet, perm, what: str) -> dict[int, int]:
    src = members(mask)
    if perm is None:
        return {x: x for x in src}
    if isinstance(perm, Mapping):
        mapping = {int(k): int(v) for k, v in perm.items()}
    else:
        perm = list(perm)
        if len(perm) != len(src):
            raise InvalidPermutationError(f"{what} permutation has wrong length")
        mapping = dict(zip(src, perm))
    if sorted(mapping) != src or sorted(mapping.values()) != src:
        raise InvalidPermutationError(f"{what} permutation is not a bijection of {src}")
    return mapping


def _bit_table(mapping: Mapping[int, int], n: int) -> list[int]:
    """Image of every subset of ``{0..n-1}`` under an element map (identity elsewhere)."""
    img = [mapping.get(i, i) for i in range(n)]
    table = [0] * (1 << n)
    for S in range(1, 1 << n):
        low = S & -S
        table[S] = table[S ^ low] | 1 << img[low.bit_length() - 1]
    return table


def relabel(g: RepGrid, perm_a=None, perm_b=None) -> RepGrid:
    """Rename elements of A and B; ``perm_a[i]`` is the image of the i-th smallest element."""
    t = g.triplet
    mapping = _perm_map(t.A, perm_a, "a")
    mapping.update(_perm_map(t.B, perm_b, "b"))
    table = _bit_table(mapping, t.n)
    cells = tuple(ElementaryImset(mapping[a], mapping[b], table[gm]) for a, b, gm in g.cells)
    return RepGrid._raw(t, cells)


def _relabel_tables(t: Triplet) -> list[tuple[dict[int, int], list[int]]]:
    out = []
    As, Bs = members(t.A), members(t.B)
    for pa in permutations(As):
        for pb in permutations(Bs):
            mapping = dict(zip(As, pa))
            mapping.update(zip(Bs, pb))
            out.append((mapping, _bit_table(mapping, t.n)))
    return out


class Canonicalizer:
    """Lexicographically minimal relabeling, with tables cached per triplet."""

    def __init__(self, t: Triplet):
        self.triplet = t
        self.tables = _relabel_tables(t)

    def key(self, cells: tuple) -> tuple:
        best = None
        for mapping, table in self.tables:
            cand = tuple((mapping[a], mapping[b], table[gm]) for a, b, gm in cells)
            if best is None or cand < best:
                best = cand
        return best

    def __call__(self, g: RepGrid) -> RepGrid:
        return RepGrid._raw(g.triplet, tuple(ElementaryImset(*c) for c in self.key(g.cells)))


def canonical_representative(g: RepGrid) -> RepGrid:
    return Canonicalizer(g.triplet)(g)


def orbit(g: RepGrid) -> set[tuple]:
    """Cell tuples of all relabelings of ``g``."""
    out = set()
    for mapping, table in _relabel_tables(g.triplet):
        out.add(tuple((mapping[a], mapping[b], table[gm]) for a, b, gm in g.cells))
    return out


def grid_to_dict(g: RepGrid) -> dict:
    names = element_names(g.triplet)
    rows = []
    for row in g.rows():
        rows.append([{"a": names[u.a], "b": names[u.b], "gamma": [names[i] for i in members(u.gamma)]} for u in row])
    return {"dims": [g.nA, g.nB], "cells": rows}


def grid_from_dict(d: Mapping) -> RepGrid:
    """Inverse of :func:`grid_to_dict`; conditioning elements are named ``c1, c2, ...``."""
    nA, nB = (int(x) for x in d["dims"])
    rows = d["cells"]
    if len(rows) != nA or any(len(r) != nB for r in rows):
        raise NotInFiberError("cell array does not match dims")
    nC = 0
    for r in rows:
        for c in r:
            for name in [c["a"], c["b"], *c["gamma"]]:
                if name[:1] == "c":
                    nC = max(nC, int(name[1:]))
    t = Triplet.standard(nA, nB, nC)
    index = {name: i for i, name in enumerate(element_names(t))}
    try:
        cells = [
            ElementaryImset(index[c["a"]], index[c["b"]], varset(index[x] for x in c["gamma"]))
            for r in rows
            for c in r
        ]
    except KeyError as exc:
        raise InvalidTripletError(f"unknown element name {exc.args[0]!r}") from None
    return RepGrid(t, cells)


def grid_to_json(g: RepGrid, **kw) -> str:
    return json.dumps(grid_to_dict(g), **kw)


def grid_from_json(text: str) -> RepGrid:
    return grid_from_dict(json.loads(text))


def trace_to_json(trace: Sequence[Move], **kw) -> str:
    return json.dumps([m.to_dict() for m in trace], **kw)


def trace_from_json(text: str) -> list[Move]:
    return [Move.from_dict(d) for d in json.loads(text)]


def strip_conditioning(g: RepGrid) -> RepGrid:
    """Re-index a grid of ``u<A,B|C>`` onto ``Triplet.standard(|A|, |B|)`` (C removed)."""
    t = g.triplet
    src = members(t.A) + members(t.B)
    mapping = {x: i for i, x in enumerate(src)}
    target = Triplet.standard(t.nA, t.nB)

    def conv(mask):
        return varset(mapping[x] for x in members(mask & ~t.C))

    return RepGrid._raw(target, tuple(ElementaryImset(mapping[a], mapping[b], conv(gm)) for a, b, gm in g.cells))


def attach_conditioning(g: RepGrid, t: Triplet) -> RepGrid:
    """Inverse of :func:`strip_conditioning` for a target triplet of the same shape."""
    if g.dims != (t.nA, t.nB):
        raise InvalidTripletError("grid shape does not match the triplet")
    src = g.triplet
    mapping = dict(zip(members(src.A) + members(src.B), members(t.A) + members(t.B)))

    def conv(mask):
        return varset(mapping[x] for x in members(mask)) | t.C

    return RepGrid._raw(t, tuple(ElementaryImset(mapping[a], mapping[b], conv(gm)) for a, b, gm in g.cells))

