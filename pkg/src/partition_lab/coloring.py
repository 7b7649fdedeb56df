"""Pair colorings of finite ordinal-labelled vertex sets, path witnesses,
0/1 rectangle colorings and the verdict type every checker returns.

Vertices are the naturals ``0..n-1`` with their natural order standing in
for ordinal order. Colors are naturals.
"""

from __future__ import annotations

import bisect
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import DuplicatePair, MissingPair, OutOfRange, SelfPair

# Above this vertex count colorings are stored as a pair -> color dict.
DENSE_LIMIT = 1 << 12

ORDERED = "ordered"
UNORDERED = "unordered"


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, (tuple, list)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


@dataclass(frozen=True)
class Verdict:
    """Outcome of a checker: ``valid`` or ``invalid`` with a witness."""

    valid: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"valid": self.valid, "witness": _jsonable(self.witness), "detail": self.detail}

    @classmethod
    def ok(cls, detail: str = "") -> "Verdict":
        return cls(True, None, detail)


class PairColoring:
    """Total coloring of pairs of distinct vertices of ``range(n)``.

    Subclasses fix whether ``(a, b)`` and ``(b, a)`` share a cell.
    Instances are immutable; ``matrix`` is a read-only view with ``-1`` on
    the diagonal.
    """

    kind: str = ""

    def __init__(self, n: int, matrix: np.ndarray | None = None, cells: dict | None = None):
        self.n = int(n)
        if matrix is not None:
            matrix = np.array(matrix, dtype=np.int64, copy=True)
            matrix.setflags(write=False)
        self._matrix = matrix
        self._cells = cells
        self._rows: list[list[int]] | None = None
        self._palette: tuple[int, ...] | None = None

    # -- lookup -----------------------------------------------------------
    def color(self, a: int, b: int) -> int:
        if a == b:
            raise SelfPair(f"no color on the diagonal pair ({a}, {a})")
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise OutOfRange(f"pair ({a}, {b}) outside n={self.n}")
        if self._matrix is not None:
            return int(self._matrix[a, b])
        return self._cells[self._key(a, b)]

    __call__ = color

    def _key(self, a: int, b: int) -> tuple[int, int]:
        return (a, b)

    @property
    def dense(self) -> bool:
        return self._matrix is not None

    @property
    def matrix(self) -> np.ndarray:
        """Dense ``n x n`` array; materialised on demand for sparse storage."""
        if self._matrix is None:
            m = np.full((self.n, self.n), -1, dtype=np.int64)
            for a in range(self.n):
                for b in range(self.n):
                    if a != b:
                        m[a, b] = self._cells[self._key(a, b)]
            m.setflags(write=False)
            return m
        return self._matrix

    @property
    def rows(self) -> list[list[int]]:
        """Plain nested lists of the matrix, for tight Python loops."""
        if self._rows is None:
            self._rows = self.matrix.tolist()
        return self._rows

    @property
    def palette(self) -> tuple[int, ...]:
        if self._palette is None:
            if self.n < 2:
                self._palette = ()
            elif self._matrix is not None:
                vals = np.unique(self._matrix)
                self._palette = tuple(int(v) for v in vals if v >= 0)
            else:
                self._palette = tuple(sorted(set(self._cells.values())))
        return self._palette

    def pairs(self) -> Iterable[tuple[int, int]]:
        raise NotImplementedError

    def cells(self) -> list[tuple[int, int, int]]:
        return [(a, b, self.color(a, b)) for a, b in self.pairs()]

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {"n": self.n, "kind": self.kind, "cells": [list(t) for t in self.cells()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairColoring):
            return NotImplemented
        if self.kind != other.kind or self.n != other.n:
            return False
        return bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self) -> int:
        return hash((self.kind, self.n, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, palette={list(self.palette)})"


class UnorderedPairColoring(PairColoring):
    kind = UNORDERED

    def _key(self, a, b):
        return (a, b) if a < b else (b, a)

    def pairs(self):
        return itertools.combinations(range(self.n), 2)


class OrderedPairColoring(PairColoring):
    kind = ORDERED

    def pairs(self):
        return itertools.permutations(range(self.n), 2)


_KINDS = {UNORDERED: UnorderedPairColoring, ORDERED: OrderedPairColoring}


def _coloring_class(kind: str) -> type[PairColoring]:
    try:
        return _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown coloring kind {kind!r}") from None


def coloring_from_matrix(matrix: np.ndarray, kind: str) -> PairColoring:
    """Wrap a square integer matrix (diagonal ignored) as a coloring."""
    m = np.array(matrix, dtype=np.int64, copy=True)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    np.fill_diagonal(m, -1)
    off = ~np.eye(n, dtype=bool)
    if n and (m[off] < 0).any():
        raise ValueError("colors must be non-negative")
    if kind == UNORDERED and not np.array_equal(m, m.T):
        raise ValueError("unordered coloring needs a symmetric matrix")
    return _coloring_class(kind)(n, matrix=m)


def make_coloring(n: int, entries, kind: str = UNORDERED) -> PairColoring:
    """Build a total coloring from a ``{(a, b): color}`` map or ``(a, b, color)`` triples.

    For the unordered kind each pair is given once, in either orientation.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    cls = _coloring_class(kind)
    items = entries.items() if isinstance(entries, Mapping) else (((t[0], t[1]), t[2]) for t in entries)
    cells: dict[tuple[int, int], int] = {}
    for (a, b), col in items:
        a, b, col = int(a), int(b), int(col)
        if a == b:
            raise SelfPair(f"self pair ({a}, {a})")
        if not (0 <= a < n and 0 <= b < n):
            raise OutOfRange(f"pair ({a}, {b}) outside n={n}")
        if col < 0:
            raise ValueError(f"negative color {col} on ({a}, {b})")
        key = (min(a, b), max(a, b)) if kind == UNORDERED else (a, b)
        if key in cells:
            raise DuplicatePair(f"pair {key} assigned twice")
        cells[key] = col
    expected = n * (n - 1) // 2 if kind == UNORDERED else n * (n - 1)
    if len(cells) != expected:
        probe = itertools.combinations(range(n), 2) if kind == UNORDERED else itertools.permutations(range(n), 2)
        missing = next(p for p in probe if p not in cells)
        raise MissingPair(f"pair {missing} has no color")
    if n > DENSE_LIMIT:
        return cls(n, cells=cells)
    m = np.full((n, n), -1, dtype=np.int64)
    for (a, b), col in cells.items():
        m[a, b] = col
        if kind == UNORDERED:
            m[b, a] = col
    return cls(n, matrix=m)


def coloring_from_dict(data: Mapping) -> PairColoring:
    return make_coloring(int(data["n"]), [tuple(c) for c in data["cells"]], data.get("kind", UNORDERED))


def coloring_from_json(text: str) -> PairColoring:
    return coloring_from_dict(json.loads(text))


def random_coloring(n: int, palette_size: int, seed, kind: str = UNORDERED) -> PairColoring:
    """Uniform colors in ``[0, palette_size)``; deterministic in all arguments."""
    if palette_size < 1:
        raise ValueError("palette_size must be >= 1")
    rng = np.random.default_rng(seed)
    m = np.full((n, n), -1, dtype=np.int64)
    if kind == UNORDERED:
        iu = np.triu_indices(n, 1)
        vals = rng.integers(0, palette_size, size=len(iu[0]))
        m[iu] = vals
        m[(iu[1], iu[0])] = vals
    elif kind == ORDERED:
        off = ~np.eye(n, dtype=bool)
        m[off] = rng.integers(0, palette_size, size=n * (n - 1))
    else:
        raise ValueError(f"unknown coloring kind {kind!r}")
    return _coloring_class(kind)(n, matrix=m)


def constant_coloring(n: int, color: int = 0, kind: str = UNORDERED) -> PairColoring:
    m = np.full((n, n), color, dtype=np.int64)
    np.fill_diagonal(m, -1)
    return _coloring_class(kind)(n, matrix=m)


# -- longest increasing subsequence ---------------------------------------

def longest_increasing_subsequence(seq: Sequence[int]) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting)."""
    tails: list[int] = []
    for x in seq:
        i = bisect.bisect_left(tails, x)
        if i == len(tails):
            tails.append(x)
        else:
            tails[i] = x
    return len(tails)


def increasing_subsequence_indices(seq: Sequence[int]) -> tuple[int, ...]:
    """Positions of one longest strictly increasing subsequence."""
    tails: list[int] = []
    tail_idx: list[int] = []
    parent = [-1] * len(seq)
    for i, x in enumerate(seq):
        j = bisect.bisect_left(tails, x)
        if j == len(tails):
            tails.append(x)
            tail_idx.append(i)
        else:
            tails[j] = x
            tail_idx[j] = i
        parent[i] = tail_idx[j - 1] if j > 0 else -1
    if not tail_idx:
        return ()
    out = []
    k = tail_idx[-1]
    while k != -1:
        out.append(k)
        k = parent[k]
    return tuple(reversed(out))


# -- path witnesses -------------------------------------------------------

@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]
    edge_colors: tuple[int, ...]
    lis_length: int

    @classmethod
    def from_vertices(cls, c: PairColoring, vertices: Sequence[int]) -> "PathWitness":
        vs = tuple(int(v) for v in vertices)
        cols = tuple(c.color(a, b) for a, b in zip(vs, vs[1:]))
        return cls(vs, cols, longest_increasing_subsequence(vs))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def palette(self) -> frozenset:
        return frozenset(self.edge_colors)

    @property
    def is_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.vertices, self.vertices[1:]))

    @property
    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "colors": list(self.edge_colors), "lis": self.lis_length}

    @classmethod
    def from_dict(cls, data: Mapping) -> "PathWitness":
        return cls(tuple(data["vertices"]), tuple(data["colors"]), int(data["lis"]))


def check_path_witness(c: PairColoring, w: PathWitness, *, increasing: bool = False,
                       simple: bool = False, color: int | None = None,
                       max_palette: int | None = None) -> Verdict:
    """Revalidate a witness against ``c`` and the claims made about it."""
    vs = w.vertices
    if len(w.edge_colors) != max(len(vs) - 1, 0):
        return Verdict(False, {"reason": "length"}, "edge_colors length mismatch")
    for i, (a, b) in enumerate(zip(vs, vs[1:])):
        if not (0 <= a < c.n and 0 <= b < c.n):
            return Verdict(False, {"reason": "range", "index": i}, "vertex out of range")
        if a == b:
            return Verdict(False, {"reason": "repeat", "index": i}, "consecutive vertices coincide")
        if c.color(a, b) != w.edge_colors[i]:
            return Verdict(False, {"reason": "color", "index": i}, "edge color claim is wrong")
    if w.lis_length != longest_increasing_subsequence(vs):
        return Verdict(False, {"reason": "lis"}, "lis_length is wrong")
    if increasing and not w.is_increasing:
        return Verdict(False, {"reason": "increasing"}, "path is not increasing")
    if simple and not w.is_simple:
        return Verdict(False, {"reason": "simple"}, "path repeats a vertex")
    if color is not None and any(x != color for x in w.edge_colors):
        return Verdict(False, {"reason": "monochromatic"}, f"edge not of color {color}")
    if max_palette is not None and len(w.palette) > max_palette:
        return Verdict(False, {"reason": "palette"}, f"more than {max_palette} colors")
    return Verdict.ok()


# -- rectangle colorings --------------------------------------------------

@dataclass(frozen=True, eq=False)
class RectangleColoring01:
    rows: int
    cols: int
    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.cells, dtype=np.uint8, copy=True).reshape(self.rows, self.cols)
        if arr.size and arr.max() > 1:
            raise ValueError("rectangle coloring takes values in {0, 1}")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    def __call__(self, a: int, b: int) -> int:
        return int(self.cells[a, b])

    def to_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "cells": self.cells.tolist()}


def verify_rectangle(c: RectangleColoring01, A: Iterable[int], B: Iterable[int], i: int) -> Verdict:
    """Is ``c`` constantly ``i`` on ``A x B``?  Witness: first offending cell."""
    A = sorted(set(A))
    B = sorted(set(B))
    if any(a < 0 or a >= c.rows for a in A) or any(b < 0 or b >= c.cols for b in B):
        raise OutOfRange("rectangle sides must lie within the coloring")
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if not A or not B:
        return Verdict.ok("empty rectangle")
    sub = c.cells[np.ix_(A, B)]
    bad = np.argwhere(sub != i)
    if len(bad) == 0:
        return Verdict.ok()
    r, s = bad[0]
    return Verdict(False, (A[r], B[s]), f"cell has color {1 - i}")
