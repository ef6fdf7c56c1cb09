"""Imsets over the power-set lattice of a small ground set.

Subsets of the ground set ``N = {0, ..., n-1}`` are plain ``int`` bitmasks
(bit ``i`` set iff element ``i`` is in the subset).  An :class:`Imset` is a
sparse map from such masks to integers with zero entries pruned, so two
imsets compare equal exactly when they agree as functions.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .exceptions import GroundMismatchError, InvalidElementaryError, InvalidTripletError

MAX_GROUND = 62

VarSet = int


def varset(elements: Iterable[int]) -> VarSet:
    mask = 0
    for e in elements:
        if not 0 <= e < MAX_GROUND:
            raise ValueError(f"element index out of range: {e}")
        mask |= 1 << e
    return mask


def members(mask: VarSet) -> list[int]:
    """Sorted element indices of a subset."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def card(mask: VarSet) -> int:
    return mask.bit_count()


def is_subset(x: VarSet, y: VarSet) -> bool:
    return x & ~y == 0


def subsets_of(mask: VarSet) -> Iterator[VarSet]:
    """All subsets of ``mask`` in increasing integer order."""
    elems = members(mask)
    for bits in range(1 << len(elems)):
        sub = 0
        for i, e in enumerate(elems):
            if bits >> i & 1:
                sub |= 1 << e
        yield sub


@dataclass(frozen=True)
class Triplet:
    """Disjoint subsets ``<A, B | C>`` of a ground set of size ``n``."""

    A: VarSet
    B: VarSet
    C: VarSet = 0
    n: int | None = None

    def __post_init__(self):
        if self.A & self.B or self.A & self.C or self.B & self.C:
            raise InvalidTripletError("A, B and C must be pairwise disjoint")
        top = (self.A | self.B | self.C).bit_length()
        if self.n is None:
            object.__setattr__(self, "n", top)
        elif top > self.n or self.n > MAX_GROUND:
            raise InvalidTripletError(f"triplet uses elements beyond ground size {self.n}")

    @classmethod
    def standard(cls, nA: int, nB: int, nC: int = 0) -> "Triplet":
        """The normalized layout: A = 0..nA-1, B next, C appended after."""
        if min(nA, nB, nC) < 0:
            raise InvalidTripletError("set sizes must be non-negative")
        A = (1 << nA) - 1
        B = ((1 << nB) - 1) << nA
        C = ((1 << nC) - 1) << (nA + nB)
        return cls(A, B, C, nA + nB + nC)

    @property
    def nA(self) -> int:
        return card(self.A)

    @property
    def nB(self) -> int:
        return card(self.B)

    @property
    def ABC(self) -> VarSet:
        return self.A | self.B | self.C

    def require_nondegenerate(self) -> None:
        if not self.A or not self.B:
            raise InvalidTripletError("fiber operations need non-empty A and B")

    def names(self) -> list[str]:
        return element_names(self)


def element_names(t: Triplet) -> list[str]:
    """Names ``a1.., b1.., c1..`` by increasing index; other elements ``x1..``."""
    names = []
    counters = {"a": 0, "b": 0, "c": 0, "x": 0}
    for i in range(t.n):
        bit = 1 << i
        key = "a" if t.A & bit else "b" if t.B & bit else "c" if t.C & bit else "x"
        counters[key] += 1
        names.append(f"{key}{counters[key]}")
    return names


def format_set(mask: VarSet, names: Sequence[str], empty: str = "∅") -> str:
    if not mask:
        return empty
    return "".join(names[i] for i in members(mask))


class Imset:
    """Integer-valued function on subsets of ``{0..ground-1}``, stored sparsely."""

    __slots__ = ("entries", "ground", "_hash")

    def __init__(self, entries: dict[VarSet, int] | Iterable[tuple[VarSet, int]] = (), ground: int = 0):
        items = entries.items() if isinstance(entries, dict) else entries
        pruned: dict[VarSet, int] = {}
        for S, v in items:
            if S >> ground:
                raise GroundMismatchError(f"subset {S:#x} is outside a ground set of size {ground}")
            v = pruned.get(S, 0) + int(v)
            if v:
                pruned[S] = v
            else:
                pruned.pop(S, None)
        self.entries = pruned
        self.ground = ground
        self._hash = None

    def __getitem__(self, S: VarSet) -> int:
        return self.entries.get(S, 0)

    def __eq__(self, other):
        if not isinstance(other, Imset):
            return NotImplemented
        return self.ground == other.ground and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ground, frozenset(self.entries.items())))
        return self._hash

    def __add__(self, other: "Imset") -> "Imset":
        return add(self, other)

    def __sub__(self, other: "Imset") -> "Imset":
        return add(self, scale(other, -1))

    def __neg__(self) -> "Imset":
        return scale(self, -1)

    def __mul__(self, k: int) -> "Imset":
        return scale(self, k)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.entries)

    def __repr__(self):
        body = ", ".join(f"{S:#x}: {v:+d}" for S, v in sorted(self.entries.items()))
        return f"Imset({{{body}}}, ground={self.ground})"

    def total(self) -> int:
        return sum(self.entries.values())

    def to_dense(self) -> np.ndarray:
        out = np.zeros(1 << self.ground, dtype=np.int64)
        for S, v in self.entries.items():
            out[S] = v
        return out

    def to_pairs(self, names: Sequence[str]) -> list[list]:
        """Canonical ``[[sorted element names], value]`` pairs by subset value."""
        return [[[names[i] for i in members(S)], v] for S, v in sorted(self.entries.items())]

    def to_json(self, names: Sequence[str]) -> str:
        return json.dumps(self.to_pairs(names), ensure_ascii=False)

    @classmethod
    def from_pairs(cls, pairs, names: Sequence[str]) -> "Imset":
        index = {name: i for i, name in enumerate(names)}
        return cls(((varset(index[x] for x in subset), v) for subset, v in pairs), len(names))


def zero_imset(ground: int) -> Imset:
    return Imset({}, ground)


def _check_ground(f: Imset, g: Imset) -> None:
    if f.ground != g.ground:
        raise GroundMismatchError(f"ground sizes differ: {f.ground} vs {g.ground}")


def add(f: Imset, g: Imset) -> Imset:
    _check_ground(f, g)
    out = dict(f.entries)
    for S, v in g.entries.items():
        w = out.get(S, 0) + v
        if w:
            out[S] = w
        else:
            del out[S]
    return Imset(out, f.ground)


def scale(f: Imset, k: int) -> Imset:
    if k == 0:
        return Imset({}, f.ground)
    return Imset({S: k * v for S, v in f.entries.items()}, f.ground)


def inner_product(f: Imset, g: Imset) -> int:
    _check_ground(f, g)
    if len(g.entries) < len(f.entries):
        f, g = g, f
    return sum(v * g.entries.get(S, 0) for S, v in f.entries.items())


def semi_elementary(t: Triplet) -> Imset:
    """``+1`` at ABC and C, ``-1`` at AC and BC; zero when A or B is empty."""
    if not t.A or not t.B:
        return Imset({}, t.n)
    return Imset({t.A | t.B | t.C: 1, t.C: 1, t.A | t.C: -1, t.B | t.C: -1}, t.n)


class ElementaryImset(NamedTuple):
    """``u<a, b | gamma>`` for single elements ``a``, ``b``."""

    a: int
    b: int
    gamma: VarSet

    def check(self) -> "ElementaryImset":
        if self.a == self.b:
            raise InvalidElementaryError("a and b must differ")
        if self.gamma >> self.a & 1 or self.gamma >> self.b & 1:
            raise InvalidElementaryError("a and b must lie outside gamma")
        return self

    def points(self) -> tuple[VarSet, VarSet, VarSet, VarSet]:
        """The four sets ``gamma, a gamma, b gamma, ab gamma``."""
        g = self.gamma
        return g, g | 1 << self.a, g | 1 << self.b, g | 1 << self.a | 1 << self.b

    def imset(self, ground: int) -> Imset:
        g, ag, bg, abg = self.points()
        return Imset({abg: 1, g: 1, ag: -1, bg: -1}, ground)

    def in_family(self, t: Triplet) -> bool:
        return bool(
            t.A >> self.a & 1
            and t.B >> self.b & 1
            and is_subset(t.C, self.gamma)
            and is_subset(self.gamma, t.ABC)
        )

    def level(self, t: Triplet) -> tuple[int, int]:
        return card(t.A & self.gamma), card(t.B & self.gamma)

    def label(self, names: Sequence[str], c_mask: VarSet = 0) -> str:
        rest = format_set(self.gamma & ~c_mask, names, empty="")
        cond = rest + ("C" if c_mask else "") or "∅"
        return f"⟨{names[self.a]},{names[self.b]}|{cond}⟩"


def elementary(a: int, b: int, gamma: VarSet, ground: int | None = None) -> Imset:
    u = ElementaryImset(a, b, gamma).check()
    if ground is None:
        ground = max(a + 1, b + 1, gamma.bit_length())
    return u.imset(ground)


def split_identity_check(X: VarSet, Y1: VarSet, Y2: VarSet, Z: VarSet, n: int | None = None) -> bool:
    """Whether ``u<X,Y1Y2|Z> = u<X,Y1|Z> + u<X,Y2|Y1Z>`` holds."""
    parts = (X, Y1, Y2, Z)
    for p, q in combinations(parts, 2):
        if p & q:
            raise InvalidTripletError("X, Y1, Y2, Z must be pairwise disjoint")
    if n is None:
        n = (X | Y1 | Y2 | Z).bit_length()
    lhs = semi_elementary(Triplet(X, Y1 | Y2, Z, n))
    rhs = semi_elementary(Triplet(X, Y1, Z, n)) + semi_elementary(Triplet(X, Y2, Y1 | Z, n))
    return lhs == rhs


def elementary_family(t: Triplet) -> list[ElementaryImset]:
    """All ``u<a,b|G>`` with a in A, b in B and C <= G <= ABC.

    Ordered by level ``(s, t)``, then ``a``, ``b``, then ``G`` as an integer.
    """
    t.require_nondegenerate()
    out = []
    for a in members(t.A):
        for b in members(t.B):
            for g in subsets_of(t.ABC & ~(1 << a | 1 << b) & ~t.C):
                out.append(ElementaryImset(a, b, g | t.C))
    out.sort(key=lambda u: (card(u.gamma & t.A), card(u.gamma & t.B), u.a, u.b, u.gamma))
    return out


def family_by_level(t: Triplet) -> dict[tuple[int, int], list[ElementaryImset]]:
    groups: dict[tuple[int, int], list[ElementaryImset]] = {}
    for u in elementary_family(t):
        groups.setdefault(u.level(t), []).append(u)
    return groups


def family_size(nA: int, nB: int) -> int:
    return nA * 2 ** (nA - 1) * nB * 2 ** (nB - 1)


def _row_key(S: VarSet, t: Triplet):
    elems = members(S & ~t.C)
    return (-len(elems), tuple(-e for e in elems))


@dataclass(frozen=True)
class ConfigMatrix:
    """Columns are the elementary imsets of a family, rows the sets C <= S <= ABC."""

    triplet: Triplet
    rows: tuple[VarSet, ...]
    cols: tuple[ElementaryImset, ...]
    data: np.ndarray

    def row_labels(self) -> list[str]:
        names = element_names(self.triplet)
        c = self.triplet.C
        return [format_set(S & ~c, names, empty="") + ("C" if c else "") or "∅" for S in self.rows]

    def col_labels(self) -> list[str]:
        names = element_names(self.triplet)
        return [u.label(names, self.triplet.C) for u in self.cols]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + self.col_labels())
        for label, row in zip(self.row_labels(), self.data):
            w.writerow([label] + [int(x) for x in row])
        return buf.getvalue()

    def times(self, coeffs: Sequence[int]) -> np.ndarray:
        return self.data @ np.asarray(coeffs, dtype=np.int64)


def configuration_matrix(t: Triplet) -> ConfigMatrix:
    """Dense configuration matrix; rows by descending |S|, then reverse-lexicographic."""
    cols = elementary_family(t)
    rows = sorted((S | t.C for S in subsets_of(t.A | t.B)), key=lambda S: _row_key(S, t))
    index = {S: i for i, S in enumerate(rows)}
    data = np.zeros((len(rows), len(cols)), dtype=np.int8)
    for j, u in enumerate(cols):
        g, ag, bg, abg = u.points()
        data[index[abg], j] = 1
        data[index[g], j] = 1
        data[index[ag], j] = -1
        data[index[bg], j] = -1
    return ConfigMatrix(t, tuple(rows), tuple(cols), data)


def read_matrix_csv(text: str) -> tuple[list[str], list[str], np.ndarray]:
    """Parse a labelled matrix CSV into ``(row_labels, col_labels, data)``."""
    reader = list(csv.reader(io.StringIO(text)))
    cols = reader[0][1:]
    rows = [r[0] for r in reader[1:]]
    data = np.array([[int(x) for x in r[1:]] for r in reader[1:]], dtype=np.int64)
    return rows, cols, data


def labelled_equal(a: tuple[list[str], list[str], np.ndarray], b: tuple[list[str], list[str], np.ndarray]) -> bool:
    """Equality of labelled matrices up to row and column permutation."""
    rows_a, cols_a, da = a
    rows_b, cols_b, db = b
    if sorted(rows_a) != sorted(rows_b) or sorted(cols_a) != sorted(cols_b):
        return False
    if len(set(rows_a)) != len(rows_a) or len(set(cols_a)) != len(cols_a):
        return False
    ri = [rows_b.index(r) for r in rows_a]
    ci = [cols_b.index(c) for c in cols_a]
    return bool(np.array_equal(np.asarray(da), np.asarray(db)[np.ix_(ri, ci)]))
