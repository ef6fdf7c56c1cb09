"""Rifts: breaks in the Γ-continuity of a representation grid.

For a valid grid every interior crossing ``(s, t)`` (``1 <= s <= |A|-1``,
``1 <= t <= |B|-1``) is in exactly one of three states, compared through the
four boundary maps ``Γ``, ``aΓ``, ``bΓ``, ``abΓ`` of the neighbouring cells:

* none:    ``Γ(s,t) = aΓ(s-1,t) = bΓ(s,t-1)``
* s-rift:  ``Γ(s,t) != aΓ(s-1,t)``  (break between levels ``s-1`` and ``s``)
* b-rift:  ``Γ(s,t) != bΓ(s,t-1)``  (break between levels ``t-1`` and ``t``)

Maximal runs of s-rift crossings along ``t`` (fixed ``s``) and of b-rift
crossings along ``s`` (fixed ``t``) are the rifts; a run of ``k`` crossings
is a rift of length ``k + 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterator, NamedTuple

from .core import Triplet, VarSet, card, members, semi_elementary
from .exceptions import ClassificationError, IneligibleRiftError, NonTerminationError
from .representation import (
    A_SWAP,
    B_SWAP,
    Move,
    RepGrid,
    _cell_sum,
    _swap_cells,
    diagnose,
    standard_representation,
)

NONE, S_RIFT, B_RIFT = 0, 1, 2
TRIT_CHARS = ".sb"


class BoundaryMaps(NamedTuple):
    """The sets ``Γ``, ``aΓ``, ``bΓ``, ``abΓ`` of every cell, keyed by ``(s, t)``."""

    gamma: dict[tuple[int, int], VarSet]
    a: dict[tuple[int, int], VarSet]
    b: dict[tuple[int, int], VarSet]
    ab: dict[tuple[int, int], VarSet]


def boundary_maps(g: RepGrid) -> BoundaryMaps:
    maps = BoundaryMaps({}, {}, {}, {})
    for s in range(g.nA):
        for t in range(g.nB):
            gm, ag, bg, abg = g[s, t].points()
            maps.gamma[s, t] = gm
            maps.a[s, t] = ag
            maps.b[s, t] = bg
            maps.ab[s, t] = abg
    return maps


@dataclass(frozen=True)
class PointClass:
    point: VarSet
    s: int
    t: int
    kind: str


def _expected_preimages(kind: str, s: int, t: int, nA: int, nB: int) -> tuple:
    """``(Γ, aΓ, bΓ, abΓ)`` preimage cells a point of this kind must have."""
    return {
        "corner-C": ((0, 0), None, None, None),
        "corner-AC": (None, (nA - 1, 0), None, None),
        "corner-BC": (None, None, (0, nB - 1), None),
        "corner-ABC": (None, None, None, (nA - 1, nB - 1)),
        "edge-ll": ((s, 0), (s - 1, 0), None, None),
        "edge-lr": ((0, t), None, (0, t - 1), None),
        "edge-ul": (None, None, (s, nB - 1), (s - 1, nB - 1)),
        "edge-ur": (None, (nA - 1, t), None, (nA - 1, t - 1)),
        "inner-1": ((s, t), (s - 1, t), (s, t - 1), (s - 1, t - 1)),
        "inner-2": ((s, t), None, (s, t - 1), None),
        "inner-3": (None, (s - 1, t), None, (s - 1, t - 1)),
        "inner-4": ((s, t), (s - 1, t), None, None),
        "inner-5": (None, None, (s, t - 1), (s - 1, t - 1)),
    }[kind]


INNER_KINDS = ("inner-1", "inner-2", "inner-3", "inner-4", "inner-5")


def _position_kind(s: int, t: int, nA: int, nB: int) -> str | None:
    corners = {(0, 0): "corner-C", (nA, 0): "corner-AC", (0, nB): "corner-BC", (nA, nB): "corner-ABC"}
    if (s, t) in corners:
        return corners[s, t]
    if t == 0:
        return "edge-ll"
    if s == 0:
        return "edge-lr"
    if t == nB:
        return "edge-ul"
    if s == nA:
        return "edge-ur"
    return None


def classify_points(g: RepGrid) -> list[PointClass]:
    """Classify every point in the image of the four boundary maps.

    Raises :class:`ClassificationError` when a point's preimages match none
    of the corner, edge or inner cases (impossible for a valid grid).
    """
    T = g.triplet
    nA, nB = g.nA, g.nB
    maps = boundary_maps(g)
    pre: dict[VarSet, list[list[tuple[int, int]]]] = {}
    for slot, table in enumerate(maps):
        for cell, Q in table.items():
            pre.setdefault(Q, [[], [], [], []])[slot].append(cell)
    out = []
    for Q in sorted(pre):
        s, t = card(T.A & Q), card(T.B & Q)
        got = tuple(cells[0] if len(cells) == 1 else (None if not cells else "many") for cells in pre[Q])
        fixed = _position_kind(s, t, nA, nB)
        candidates = (fixed,) if fixed else INNER_KINDS
        for kind in candidates:
            if got == _expected_preimages(kind, s, t, nA, nB):
                out.append(PointClass(Q, s, t, kind))
                break
        else:
            raise ClassificationError(f"point {Q:#x} at level {(s, t)} has preimages {got}")
    return out


@dataclass(frozen=True, order=True)
class Rift:
    """An s-rift ``r_s(level; lower, upper)`` (level = s, bounds in t) or a
    b-rift ``r_b(lower, upper; level)`` (level = t, bounds in s)."""

    kind: str
    level: int
    lower: int
    upper: int

    @property
    def length(self) -> int:
        return self.upper - self.lower

    def crossings(self) -> list[tuple[int, int]]:
        if self.kind == "s":
            return [(self.level, t) for t in range(self.lower + 1, self.upper)]
        return [(s, self.level) for s in range(self.lower + 1, self.upper)]

    def __str__(self):
        if self.kind == "s":
            return f"r_s({self.level};{self.lower},{self.upper})"
        return f"r_b({self.lower},{self.upper};{self.level})"

    def to_dict(self) -> dict:
        if self.kind == "s":
            return {"name": str(self), "kind": "s-rift", "s": self.level, "t_L": self.lower, "t_U": self.upper, "length": self.length}
        return {"name": str(self), "kind": "b-rift", "s_L": self.lower, "s_U": self.upper, "t": self.level, "length": self.length}


class RiftPattern:
    """Trit grid over the interior crossings; ``trits[s-1][t-1]`` is crossing ``(s, t)``."""

    __slots__ = ("nA", "nB", "trits", "_rifts")

    def __init__(self, nA: int, nB: int, trits):
        self.nA, self.nB = nA, nB
        self.trits = tuple(tuple(int(x) for x in row) for row in trits)
        if len(self.trits) != max(nA - 1, 0) or any(len(r) != nB - 1 for r in self.trits):
            raise ValueError(f"trit grid shape does not match ({nA}, {nB})")
        if any(x not in (NONE, S_RIFT, B_RIFT) for r in self.trits for x in r):
            raise ValueError("trits must be 0, 1 or 2")
        self._rifts = None

    def __getitem__(self, st: tuple[int, int]) -> int:
        s, t = st
        return self.trits[s - 1][t - 1]

    def __eq__(self, other):
        if not isinstance(other, RiftPattern):
            return NotImplemented
        return (self.nA, self.nB, self.trits) == (other.nA, other.nB, other.trits)

    def __hash__(self):
        return hash((self.nA, self.nB, self.trits))

    def __repr__(self):
        return f"RiftPattern({self.nA}, {self.nB}, {self.to_string()!r})"

    def is_empty(self) -> bool:
        return not any(x for r in self.trits for x in r)

    @property
    def rifts(self) -> list[Rift]:
        if self._rifts is None:
            self._rifts = _runs(self)
        return self._rifts

    def to_string(self) -> str:
        """Row-major ``.sb`` string (rows are s = 1..|A|-1)."""
        return "".join(TRIT_CHARS[x] for r in self.trits for x in r)

    def render(self) -> str:
        return "\n".join("".join(TRIT_CHARS[x] for x in r) for r in self.trits)

    @classmethod
    def from_string(cls, nA: int, nB: int, text: str) -> "RiftPattern":
        text = "".join(text.split())
        w = nB - 1
        vals = [TRIT_CHARS.index(c) for c in text]
        return cls(nA, nB, [vals[i * w:(i + 1) * w] for i in range(nA - 1)])

    @property
    def index(self) -> int:
        """Position in base-3 counter order (crossing ``k`` is digit ``3**k``)."""
        out = 0
        for x in reversed([x for r in self.trits for x in r]):
            out = out * 3 + x
        return out

    @classmethod
    def from_index(cls, nA: int, nB: int, index: int) -> "RiftPattern":
        w = nB - 1
        vals = []
        for _ in range(max(nA - 1, 0) * w):
            index, d = divmod(index, 3)
            vals.append(d)
        return cls(nA, nB, [vals[i * w:(i + 1) * w] for i in range(nA - 1)])

    def to_dict(self) -> dict:
        return {
            "dims": [self.nA, self.nB],
            "trits": self.to_string(),
            "rifts": [r.to_dict() for r in self.rifts],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def weight(self) -> int:
        """Product of ``d(length)`` over the rifts."""
        w = 1
        for r in self.rifts:
            w *= degree_of_freedom(r.length)
        return w


def _runs(p: RiftPattern) -> list[Rift]:
    out = []
    for s in range(1, p.nA):
        t = 1
        while t < p.nB:
            if p[s, t] == S_RIFT:
                start = t
                while t < p.nB and p[s, t] == S_RIFT:
                    t += 1
                out.append(Rift("s", s, start - 1, t))
            else:
                t += 1
    for t in range(1, p.nB):
        s = 1
        while s < p.nA:
            if p[s, t] == B_RIFT:
                start = s
                while s < p.nA and p[s, t] == B_RIFT:
                    s += 1
                out.append(Rift("b", t, start - 1, s))
            else:
                s += 1
    return out


@lru_cache(maxsize=None)
def degree_of_freedom(l: int) -> int:
    """Number of fillings of a single rift of length ``l``."""
    if l < 1:
        raise ValueError("rift length must be >= 1")
    if l == 1:
        return 1
    return factorial(l) - sum(factorial(l - k) * degree_of_freedom(k) for k in range(1, l))


def detect_rifts(g: RepGrid) -> RiftPattern:
    cells, nB = g.cells, g.nB
    trits = []
    for s in range(1, g.nA):
        row = []
        for t in range(1, nB):
            gm = cells[s * nB + t].gamma
            a_, _, g_ = cells[(s - 1) * nB + t]
            _, b_, g2 = cells[s * nB + t - 1]
            if gm != g_ | 1 << a_:
                row.append(S_RIFT)
            elif gm != g2 | 1 << b_:
                row.append(B_RIFT)
            else:
                row.append(NONE)
        trits.append(row)
    return RiftPattern(g.nA, nB, trits)


def is_rift_free(g: RepGrid) -> bool:
    return detect_rifts(g).is_empty()


def rifts_by_definition(g: RepGrid) -> set[Rift]:
    """Rifts located by their endpoint rules rather than by trit runs.

    ``t_L`` is the largest ``t' <= t`` with ``Γ(u(s,t')) = aΓ(u(s-1,t'))`` and
    ``t_U`` the smallest ``t' >= t`` with ``bΓ(u(s,t'-1)) = abΓ(u(s-1,t'-1))``;
    b-rifts symmetrically.
    """
    m = boundary_maps(g)
    nA, nB = g.nA, g.nB
    out = set()
    for s in range(1, nA):
        for t in range(1, nB):
            if m.gamma[s, t] != m.a[s - 1, t]:
                tL = max(tp for tp in range(0, t + 1) if m.gamma[s, tp] == m.a[s - 1, tp])
                tU = min(tp for tp in range(t, nB + 1) if m.b[s, tp - 1] == m.ab[s - 1, tp - 1])
                out.add(Rift("s", s, tL, tU))
            if m.gamma[s, t] != m.b[s, t - 1]:
                sL = max(sp for sp in range(0, s + 1) if m.gamma[sp, t] == m.b[sp, t - 1])
                sU = min(sp for sp in range(s, nA + 1) if m.a[sp - 1, t] == m.ab[sp - 1, t - 1])
                out.add(Rift("b", t, sL, sU))
    return out


@dataclass(frozen=True)
class Separation:
    axis: str
    index: int
    part: VarSet
    lower: RepGrid
    upper: RepGrid


def _check_index(g: RepGrid, axis: str, index: int) -> None:
    n = {"A": g.nA, "B": g.nB}.get(axis)
    if n is None:
        raise ValueError(f"axis must be 'A' or 'B', not {axis!r}")
    if not 1 <= index <= n - 1:
        raise IndexError(f"separation index {index} outside 1..{n - 1}")


def _split(g: RepGrid, axis: str, index: int) -> Separation:
    T = g.triplet
    nB = g.nB
    if axis == "A":
        part = T.A & g[index, 0].gamma
        lower = RepGrid._raw(Triplet(part, T.B, T.C, T.n), g.cells[: index * nB])
        upper = RepGrid._raw(Triplet(T.A & ~part, T.B, T.C | part, T.n), g.cells[index * nB:])
    else:
        part = T.B & g[0, index].gamma
        rows = g.rows()
        lower = RepGrid._raw(Triplet(T.A, part, T.C, T.n), tuple(c for r in rows for c in r[:index]))
        upper = RepGrid._raw(Triplet(T.A, T.B & ~part, T.C | part, T.n), tuple(c for r in rows for c in r[index:]))
    return Separation(axis, index, part, lower, upper)


def is_separable(g: RepGrid, axis: str, index: int) -> Separation | None:
    """Split at level ``index`` of ``axis`` when no rift crosses that cut."""
    _check_index(g, axis, index)
    if axis == "A":
        ok = all(g[index, t].gamma == g[index, t - 1].points()[2] for t in range(1, g.nB))
    else:
        ok = all(g[s, index].gamma == g[s - 1, index].points()[1] for s in range(1, g.nA))
    return _split(g, axis, index) if ok else None


def separable_by_sums(g: RepGrid, axis: str, index: int) -> VarSet | None:
    """The part ``A_0`` (or ``B_0``) for which both partial sums are the
    required semi-elementary imsets, searched over all subsets of that size."""
    _check_index(g, axis, index)
    T = g.triplet
    rows = g.rows()
    if axis == "A":
        lo = [c for r in rows[:index] for c in r]
        hi = [c for r in rows[index:] for c in r]
        side = T.A
    else:
        lo = [c for r in rows for c in r[:index]]
        hi = [c for r in rows for c in r[index:]]
        side = T.B
    lo_sum, hi_sum = _cell_sum(lo), _cell_sum(hi)
    for combo in combinations(members(side), index):
        part = sum(1 << x for x in combo)
        if axis == "A":
            t_lo, t_hi = Triplet(part, T.B, T.C, T.n), Triplet(T.A & ~part, T.B, T.C | part, T.n)
        else:
            t_lo, t_hi = Triplet(T.A, part, T.C, T.n), Triplet(T.A, T.B & ~part, T.C | part, T.n)
        if lo_sum == semi_elementary(t_lo).entries and hi_sum == semi_elementary(t_hi).entries:
            return part
    return None


@dataclass(frozen=True)
class Decomposition:
    """Node of a σ-decomposition tree over cell rectangle ``[s0,s1) x [t0,t1)``."""

    rect: tuple[int, int, int, int]
    axis: str | None = None
    cut: int | None = None
    children: tuple["Decomposition", ...] = ()

    def to_dict(self) -> dict:
        d = {"rect": list(self.rect)}
        if self.axis:
            d.update(axis=self.axis, cut=self.cut, children=[c.to_dict() for c in self.children])
        return d


def _decompose(nA: int, nB: int, can_cut_a, can_cut_b) -> Decomposition | None:
    """Recursive σ-decomposition over rectangles; cut predicates see rectangle bounds."""
    memo: dict[tuple, Decomposition | None] = {}

    def rec(s0, s1, t0, t1):
        key = (s0, s1, t0, t1)
        if key in memo:
            return memo[key]
        res = None
        if s1 - s0 == 1 and t1 - t0 == 1:
            res = Decomposition(key)
        else:
            for c in range(s0 + 1, s1):
                if can_cut_a(c, t0, t1):
                    lo, hi = rec(s0, c, t0, t1), rec(c, s1, t0, t1)
                    if lo and hi:
                        res = Decomposition(key, "A", c, (lo, hi))
                        break
            if res is None:
                for c in range(t0 + 1, t1):
                    if can_cut_b(c, s0, s1):
                        lo, hi = rec(s0, s1, t0, c), rec(s0, s1, c, t1)
                        if lo and hi:
                            res = Decomposition(key, "B", c, (lo, hi))
                            break
        memo[key] = res
        return res

    return rec(0, nA, 0, nB)


def sigma_decomposition(g: RepGrid) -> Decomposition | None:
    """A σ-decomposition tree of the grid, or ``None`` if it is σ-indecomposable."""
    gamma = [u.gamma for u in g.cells]
    nB = g.nB
    ag = [u.gamma | 1 << u.a for u in g.cells]
    bg = [u.gamma | 1 << u.b for u in g.cells]

    def cut_a(c, t0, t1):
        return all(gamma[c * nB + t] == bg[c * nB + t - 1] for t in range(t0 + 1, t1))

    def cut_b(c, s0, s1):
        return all(gamma[s * nB + c] == ag[(s - 1) * nB + c] for s in range(s0 + 1, s1))

    return _decompose(g.nA, nB, cut_a, cut_b)


def is_sigma_decomposable(g: RepGrid) -> bool:
    return sigma_decomposition(g) is not None


def pattern_decomposition(p: RiftPattern) -> Decomposition | None:
    """σ-decomposition driven by the trits alone: a cut at level ``c`` of A is
    allowed iff no b-rift crossing lies on it inside the rectangle."""
    tr = p.trits

    def cut_a(c, t0, t1):
        return all(tr[c - 1][t - 1] != B_RIFT for t in range(t0 + 1, t1))

    def cut_b(c, s0, s1):
        return all(tr[s - 1][c - 1] != S_RIFT for s in range(s0 + 1, s1))

    return _decompose(p.nA, p.nB, cut_a, cut_b)


def pattern_is_decomposable(p: RiftPattern) -> bool:
    return pattern_decomposition(p) is not None


def _open_overlap(l1: int, u1: int, l2: int, u2: int) -> bool:
    return max(l1, l2) < min(u1, u2)


def eligible_rifts(p: RiftPattern) -> list[tuple[int, Rift]]:
    """Rifts meeting one of the two eliminability conditions, tagged 2 or 1,
    in tie-break order (condition-2 b-rifts first, by ``t`` then ``s_L``)."""
    rifts = p.rifts
    rs = [r for r in rifts if r.kind == "s"]
    rb = [r for r in rifts if r.kind == "b"]

    def lowest(r, same):
        return not any(
            o.level < r.level and _open_overlap(o.lower, o.upper, r.lower, r.upper) for o in same if o != r
        )

    out = []
    for r in sorted(rb, key=lambda r: (r.level, r.lower)):
        if lowest(r, rb) and all(not (r.lower + 1 <= o.level <= r.upper - 1) or r.level <= o.lower for o in rs):
            out.append((2, r))
    for r in sorted(rs, key=lambda r: (r.level, r.lower)):
        if lowest(r, rs) and all(not (r.lower + 1 <= o.level <= r.upper - 1) or r.level <= o.lower for o in rb):
            out.append((1, r))
    return out


def select_eliminable_rift(p: RiftPattern) -> Rift | None:
    if p.is_empty():
        return None
    cands = eligible_rifts(p)
    if not cands:
        raise RuntimeError(f"no eliminable rift in non-empty pattern {p.to_string()!r}")
    return cands[0][1]


def rift_block(g: RepGrid, r: Rift) -> tuple[RepGrid, range, range]:
    """The rift-free sub-representation lying on the near side of ``r``.

    For a b-rift ``r_b(s_L, s_U; t)`` these are cells ``[s_L, s_U) x [0, t)``
    representing ``u<A', B' | Γ'>``; s-rifts symmetrically.
    """
    T = g.triplet
    if r.kind == "b":
        srange, trange = range(r.lower, r.upper), range(0, r.level)
        gp = g[r.lower, 0].gamma
        Bp = T.B & g[r.lower, r.level - 1].points()[2]
        Ap = T.A & g[r.upper - 1, 0].points()[1] & ~gp
    else:
        srange, trange = range(0, r.level), range(r.lower, r.upper)
        gp = g[0, r.lower].gamma
        Ap = T.A & g[r.level - 1, r.lower].points()[1]
        Bp = T.B & g[0, r.upper - 1].points()[2] & ~gp
    sub = RepGrid._raw(Triplet(Ap, Bp, gp, T.n), tuple(g[s, t] for s in srange for t in trange))
    return sub, srange, trange


def _sort_moves(cur: list[int], target: list[int], emit) -> None:
    rank = {x: i for i, x in enumerate(target)}
    cur = list(cur)
    changed = True
    while changed:
        changed = False
        for j in range(len(cur) - 1):
            if rank[cur[j]] > rank[cur[j + 1]]:
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
                emit(j)
                changed = True


def eliminate_rift(g: RepGrid, r: Rift) -> tuple[RepGrid, list[Move]]:
    """Remove an eliminable rift by re-ordering the block below it.

    The block is a relabeled standard representation; its order along the
    rift is sorted into the order found on the far side of the rift using
    adjacent transpositions, each realised by one move per block line.
    """
    p = detect_rifts(g)
    if r not in p.rifts:
        raise IneligibleRiftError(f"{r} is not a rift of this grid")
    if r not in [x for _, x in eligible_rifts(p)]:
        raise IneligibleRiftError(f"{r} is not eliminable in pattern {p.to_string()!r}")
    block, srange, trange = rift_block(g, r)
    problems = diagnose(block)
    if problems:
        raise RuntimeError(f"block below {r} is not a representation: {problems[0]}")

    cells = g.cells
    nB = g.nB
    trace: list[Move] = []
    if r.kind == "b":
        cur = [g[s, 0].a for s in srange]
        target = [g[s, r.level].a for s in srange]

        def emit(j):
            nonlocal cells
            for t in reversed(trange):
                cells = _swap_cells(cells, nB, A_SWAP, srange[j], t)
                trace.append(Move(A_SWAP, (srange[j], t)))
    else:
        cur = [g[0, t].b for t in trange]
        target = [g[r.level, t].b for t in trange]

        def emit(j):
            nonlocal cells
            for s in reversed(srange):
                cells = _swap_cells(cells, nB, B_SWAP, s, trange[j])
                trace.append(Move(B_SWAP, (s, trange[j])))

    if sorted(cur) != sorted(target):
        raise RuntimeError(f"far side of {r} does not carry the block's elements")
    _sort_moves(cur, target, emit)
    out = RepGrid._raw(g.triplet, cells)
    if r in detect_rifts(out).rifts:
        raise RuntimeError(f"{r} survived its elimination")
    return out, trace


def move_cap(nA: int, nB: int) -> int:
    return 10 * factorial(nA) * factorial(nB) * nA * nB


def normalize_to_standard(g: RepGrid) -> list[Move]:
    """Moves leading from ``g`` to the identity-order standard representation."""
    cap = move_cap(g.nA, g.nB)
    trace: list[Move] = []
    while True:
        r = select_eliminable_rift(detect_rifts(g))
        if r is None:
            break
        g, part = eliminate_rift(g, r)
        trace.extend(part)
        if len(trace) > cap:
            raise NonTerminationError(f"more than {cap} moves without reaching a rift-free grid")
    cells, nA, nB = g.cells, g.nA, g.nB
    alpha = [cells[s * nB].a for s in range(nA)]
    beta = [cells[t].b for t in range(nB)]

    def emit_a(j):
        nonlocal cells
        for t in range(nB):
            cells = _swap_cells(cells, nB, A_SWAP, j, t)
            trace.append(Move(A_SWAP, (j, t)))

    def emit_b(j):
        nonlocal cells
        for s in range(nA):
            cells = _swap_cells(cells, nB, B_SWAP, s, j)
            trace.append(Move(B_SWAP, (s, j)))

    _sort_moves(alpha, sorted(alpha), emit_a)
    _sort_moves(beta, sorted(beta), emit_b)
    if len(trace) > cap:
        raise NonTerminationError(f"normalization used {len(trace)} moves, cap is {cap}")
    final = RepGrid._raw(g.triplet, cells)
    if final != standard_representation(g.triplet):
        raise RuntimeError("normalization did not reach the standard representation")
    return trace


def elimination_steps(g: RepGrid) -> Iterator[tuple[Rift, RepGrid, list[Move]]]:
    """Successive ``(rift, grid after elimination, moves)`` until rift-free."""
    while True:
        r = select_eliminable_rift(detect_rifts(g))
        if r is None:
            return
        g, moves = eliminate_rift(g, r)
        yield r, g, moves

