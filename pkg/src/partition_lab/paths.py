"""Monochromatic and few-colored paths in finite pair colorings.

Increasing paths live in a DAG (edges point up in label order), so the
longest monochromatic increasing path per color is an exact quadratic DP.
Simple paths are searched by budgeted branch-and-bound and may come back
``exact=False``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .coloring import (
    ORDERED,
    OrderedPairColoring,
    PairColoring,
    PathWitness,
    UnorderedPairColoring,
)
from .errors import CapExceeded, PaletteTooLarge

DEFAULT_SCAN_CAP = 1 << 24
DEFAULT_SUBSET_CAP = 1 << 12

INCREASING = "increasing"
SIMPLE = "simple"


def scan_cap() -> int:
    raw = os.environ.get("PARTITION_LAB_CAP")
    return int(raw) if raw else DEFAULT_SCAN_CAP


@dataclass(frozen=True)
class PathQuery:
    mode: str
    palette_bound: int = 1
    target_length: int = 1

    def __post_init__(self):
        if self.mode not in (INCREASING, SIMPLE):
            raise ValueError(f"mode must be {INCREASING!r} or {SIMPLE!r}")
        if self.palette_bound < 1 or self.target_length < 1:
            raise ValueError("palette_bound and target_length must be >= 1")


@dataclass(frozen=True)
class SimplePathResult:
    witness: PathWitness
    exact: bool
    expansions: int


@dataclass(frozen=True)
class ScanRow:
    n: int
    t: int
    L: int
    flavor: str
    mode: str
    holds: bool | None
    checked: int

    def to_dict(self) -> dict:
        return {"n": self.n, "t": self.t, "L": self.L, "flavor": self.flavor,
                "mode": self.mode, "holds": self.holds, "checked": self.checked}


# -- increasing paths -----------------------------------------------------

def _ipath_tables(rows: list[list[int]], allowed=None):
    n = len(rows)
    best: list[dict[int, tuple[int, int]]] = [dict() for _ in range(n)]
    for j in range(n):
        bj = best[j]
        for i in range(j):
            g = rows[i][j]
            if allowed is not None and g not in allowed:
                continue
            prev = best[i].get(g)
            length = (prev[0] if prev else 1) + 1
            cur = bj.get(g)
            if cur is None or length > cur[0]:
                bj[g] = (length, i)
    return best


def longest_mono_ipath(c: PairColoring) -> dict[int, PathWitness]:
    """For every color, a longest increasing path all of whose edges have that color.

    Ties resolve to the smallest end vertex and, going backwards, the
    smallest predecessor.
    """
    rows = c.rows
    best = _ipath_tables(rows)
    ends: dict[int, tuple[int, int]] = {}
    for j, bj in enumerate(best):
        for g, (length, _) in bj.items():
            if g not in ends or length > ends[g][0]:
                ends[g] = (length, j)
    out = {}
    for g in sorted(ends):
        j = ends[g][1]
        path = [j]
        while True:
            entry = best[j].get(g)
            if entry is None:
                break
            j = entry[1]
            path.append(j)
        out[g] = PathWitness.from_vertices(c, path[::-1])
    return out


def _dag_longest(rows, allowed) -> list[int]:
    """Longest increasing path using only edges colored in ``allowed``."""
    n = len(rows)
    length = [1] * n
    pred = [-1] * n
    for j in range(n):
        for i in range(j):
            if rows[i][j] in allowed and length[i] + 1 > length[j]:
                length[j] = length[i] + 1
                pred[j] = i
    if n == 0:
        return []
    j = max(range(n), key=lambda v: (length[v], -v))
    path = [j]
    while pred[j] != -1:
        j = pred[j]
        path.append(j)
    return path[::-1]


def longest_small_palette_ipath(c: PairColoring, k: int, max_subsets: int = DEFAULT_SUBSET_CAP) -> PathWitness:
    """Longest increasing path whose edges use at most ``k`` distinct colors.

    Exact: one DAG DP per ``k``-subset of the palette (supersets dominate,
    so only subsets of size ``min(k, |palette|)`` are tried).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    palette = c.palette
    size = min(k, len(palette))
    count = math.comb(len(palette), size)
    if count > max_subsets:
        raise PaletteTooLarge(f"{count} palette subsets exceed cap {max_subsets}")
    if c.n == 0:
        return PathWitness((), (), 0)
    rows = c.rows
    best: list[int] = [0]
    for subset in itertools.combinations(palette, size):
        path = _dag_longest(rows, frozenset(subset))
        if len(path) > len(best):
            best = path
    return PathWitness.from_vertices(c, best)


# -- simple paths ---------------------------------------------------------

def _color_adjacency(c: PairColoring, color: int) -> list[list[int]]:
    rows = c.rows
    return [[y for y in range(c.n) if y != x and rows[x][y] == color] for x in range(c.n)]


def _component_bound(adj: list[list[int]]) -> int:
    """Size of the largest weakly connected component touching an edge."""
    n = len(adj)
    und = [set() for _ in range(n)]
    for x, nbrs in enumerate(adj):
        for y in nbrs:
            und[x].add(y)
            und[y].add(x)
    seen = [False] * n
    best = 1 if n else 0
    for s in range(n):
        if seen[s]:
            continue
        stack, size = [s], 0
        seen[s] = True
        while stack:
            x = stack.pop()
            size += 1
            for y in und[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        best = max(best, size)
    return best


def _reachable_unvisited(adj, start, visited) -> int:
    seen = {start}
    stack = [start]
    count = 0
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen and not visited[y]:
                seen.add(y)
                count += 1
                stack.append(y)
    return count


def longest_mono_simple_path(c: PairColoring, color: int, budget: int = 100_000) -> SimplePathResult:
    """Longest path on distinct vertices with every edge of ``color``.

    For ordered colorings the path follows ``c(v_i, v_{i+1})``. The search
    stops after ``budget`` node expansions; the best path so far is then
    returned with ``exact=False``.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    n = c.n
    if n == 0:
        return SimplePathResult(PathWitness((), (), 0), True, 0)
    adj = _color_adjacency(c, color)
    ceiling = _component_bound(adj)
    best = [0]
    visited = [False] * n
    expansions = 0
    exhausted = False

    def dfs(path):
        nonlocal best, expansions, exhausted
        if len(path) > len(best):
            best = list(path)
        if len(best) >= ceiling:
            return True
        x = path[-1]
        if len(path) + _reachable_unvisited(adj, x, visited) <= len(best):
            return False
        for y in adj[x]:
            if visited[y]:
                continue
            expansions += 1
            if expansions > budget:
                exhausted = True
                return True
            visited[y] = True
            path.append(y)
            done = dfs(path)
            path.pop()
            visited[y] = False
            if done:
                return True
        return False

    for s in range(n):
        if not adj[s]:
            continue
        visited[s] = True
        stop = dfs([s])
        visited[s] = False
        if stop:
            break
    return SimplePathResult(PathWitness.from_vertices(c, best), not exhausted, expansions)


def _has_simple_path(adj: list[list[int]], L: int) -> bool:
    n = len(adj)
    if L <= 1:
        return n >= 1
    visited = [False] * n

    def dfs(x, depth):
        if depth >= L:
            return True
        for y in adj[x]:
            if not visited[y]:
                visited[y] = True
                if dfs(y, depth + 1):
                    return True
                visited[y] = False
        return False

    for s in range(n):
        visited[s] = True
        if dfs(s, 1):
            return True
        visited[s] = False
    return False


# -- pivot constructions --------------------------------------------------

def _choose_pivot(rows, n):
    """Vertex whose largest color class below it is biggest; ties to smallest vertex, color."""
    best = (0, -1, -1)  # (size, delta, color)
    for d in range(n):
        counts: dict[int, int] = {}
        for b in range(d):
            g = rows[b][d]
            counts[g] = counts.get(g, 0) + 1
        if not counts:
            continue
        g = min(counts, key=lambda col: (-counts[col], col))
        if counts[g] > best[0]:
            best = (counts[g], d, g)
    return best[1], best[2]


def _greedy_chain(rows, delta, evens_pool, n0, m0=None):
    """Choose beta_0 < beta_1 < ... below ``delta``: even ones from ``evens_pool``,
    each odd one ``x`` with ``c(e, x) = n0`` (and ``c(x, e) = m0`` when given)
    for every even ``e`` chosen so far. Smallest candidate first."""
    chosen: list[int] = []
    evens: list[int] = []
    last = -1
    while True:
        nxt = next((b for b in evens_pool if b > last), None)
        if nxt is None:
            break
        chosen.append(nxt)
        evens.append(nxt)
        last = nxt
        odd = None
        for x in range(last + 1, delta):
            if all(rows[e][x] == n0 for e in evens) and (m0 is None or all(rows[x][e] == m0 for e in evens)):
                odd = x
                break
        if odd is None:
            break
        chosen.append(odd)
        last = odd
    return chosen


def _zigzag(chosen, delta):
    """beta_0, beta_3, beta_2, beta_5, beta_4, ..., then the pivot itself."""
    if not chosen:
        return [delta]
    path = [chosen[0]]
    i = 1
    while 2 * i + 1 < len(chosen):
        path += [chosen[2 * i + 1], chosen[2 * i]]
        i += 1
    path.append(delta)
    return path


def greedy_pivot_trace(c: PairColoring) -> dict:
    rows = c.rows
    n = c.n
    if n < 2:
        return {"pivot": None, "color": None, "pool": [], "chosen": [], "path": list(range(n))}
    delta, n0 = _choose_pivot(rows, n)
    pool = [b for b in range(delta) if rows[b][delta] == n0]
    chosen = _greedy_chain(rows, delta, pool, n0)
    return {"pivot": delta, "color": n0, "pool": pool, "chosen": chosen, "path": _zigzag(chosen, delta)}


def greedy_pivot_path(c: UnorderedPairColoring) -> PathWitness:
    """Monochromatic simple path from the pivot-and-zigzag construction.

    The pivot ends the path: every even-position vertex lies in its color
    class, so the last zigzag vertex joins it in the same color.
    """
    if c.kind == ORDERED:
        raise TypeError("greedy_pivot_path takes an unordered coloring")
    return PathWitness.from_vertices(c, greedy_pivot_trace(c)["path"])


def two_directional_palette(c: PairColoring, vertices) -> frozenset:
    return frozenset(col for a, b in zip(vertices, vertices[1:]) for col in (c.color(a, b), c.color(b, a)))


def two_color_trace(c: OrderedPairColoring) -> dict:
    rows = c.rows
    n = c.n
    if n < 2:
        return {"pivot": None, "n0": None, "m0": None, "pool": [], "chosen": [], "path": list(range(n))}
    delta, n0 = _choose_pivot(rows, n)
    b_n0 = [b for b in range(delta) if rows[b][delta] == n0]
    counts: dict[int, int] = {}
    for b in b_n0:
        counts[rows[delta][b]] = counts.get(rows[delta][b], 0) + 1
    m0 = min(counts, key=lambda col: (-counts[col], col))
    pool = [b for b in b_n0 if rows[delta][b] == m0]
    chosen = _greedy_chain(rows, delta, pool, n0, m0)
    return {"pivot": delta, "n0": n0, "m0": m0, "pool": pool, "chosen": chosen, "path": _zigzag(chosen, delta)}


def two_color_ordered_path(c: OrderedPairColoring) -> tuple[PathWitness, frozenset]:
    """Simple path whose colors in both directions come from ``{m0, n0}``."""
    path = two_color_trace(c)["path"]
    return PathWitness.from_vertices(c, path), two_directional_palette(c, path)


# -- Ramsey-style scans ---------------------------------------------------

def _has_mono_ipath(col, idx, n, t, L) -> bool:
    if L <= 1:
        return n >= 1
    best = [[1] * t for _ in range(n)]
    for j in range(1, n):
        bj = best[j]
        for i in range(j):
            g = col[idx[i][j]]
            v = best[i][g] + 1
            if v > bj[g]:
                if v >= L:
                    return True
                bj[g] = v
    return False


def _has_mono_simple(col, idx, n, t, L) -> bool:
    if L <= 1:
        return n >= 1
    for g in range(t):
        adj = [[y for y in range(n) if y != x and col[idx[min(x, y)][max(x, y)]] == g] for x in range(n)]
        if _has_simple_path(adj, L):
            return True
    return False


def _pair_index(n):
    idx = [[-1] * n for _ in range(n)]
    for k, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        idx[i][j] = k
    return idx


def enumerate_colorings(n: int, t: int) -> Iterator[tuple[int, ...]]:
    """All ``t``-colorings of ``[n]^2`` as color vectors over pairs in lexicographic order."""
    return itertools.product(range(t), repeat=n * (n - 1) // 2)


def ramsey_scan(n_max: int, t: int, L: int, mode: str = "exhaustive", flavor: str = INCREASING,
                seed=0, trials: int = 1000, cap: int | None = None) -> list[ScanRow]:
    """For each ``n <= n_max``: does every ``t``-coloring of ``[n]^2`` carry a
    monochromatic path with ``L`` vertices?

    Exhaustive rows are exact; ``checked`` counts colorings examined up to
    and including the first counterexample. Sampled rows report ``False``
    on a counterexample and ``None`` (undetermined) otherwise.
    """
    if flavor not in (INCREASING, SIMPLE):
        raise ValueError(f"unknown flavor {flavor!r}")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if t < 1 or L < 1:
        raise ValueError("t and L must be >= 1")
    cap = scan_cap() if cap is None else cap
    test = _has_mono_ipath if flavor == INCREASING else _has_mono_simple
    rows = []
    for n in range(1, n_max + 1):
        m = n * (n - 1) // 2
        idx = _pair_index(n)
        if mode == "exhaustive":
            total = t ** m
            if total > cap:
                raise CapExceeded(f"{t}^{m} colorings at n={n} exceed cap {cap}")
            holds, checked = True, 0
            for col in enumerate_colorings(n, t):
                checked += 1
                if not test(col, idx, n, t, L):
                    holds = False
                    break
        else:
            holds, checked = None, 0
            for trial in range(trials):
                rng = np.random.default_rng([int(seed), n, trial])
                col = tuple(int(x) for x in rng.integers(0, t, size=m))
                checked += 1
                if not test(col, idx, n, t, L):
                    holds = False
                    break
        rows.append(ScanRow(n, t, L, flavor, mode, holds, checked))
    return rows
