"""Finite conditions ``(u, f)``: a finite vertex set and a coloring of its
pairs by positive integers obeying the path bound.

Path bound: for every admissible sequence ``a_0, ..., a_m`` from ``u``
(``m >= 1``), every strictly increasing subsequence is shorter than the
largest consecutive color ``max f(a_l, a_{l+1})``. Two readings of
"admissible" are supported:

* ``injective`` -- the ``a_l`` are pairwise distinct;
* ``walk`` -- only consecutive entries must differ.

Every walk-valid condition is injective-valid. Walk validity has an exact
threshold criterion: the condition is walk-invalid iff for some color ``M``
the graph of edges colored ``<= M`` has a component with at least ``M``
vertices.
"""

from __future__ import annotations

import bisect
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .coloring import (
    UnorderedPairColoring,
    Verdict,
    increasing_subsequence_indices,
    longest_increasing_subsequence,
)
from .errors import (
    AlreadyPresent,
    BadColors,
    BadH,
    MissingPair,
    NoRoom,
    SearchTooLarge,
    ValidityLost,
)

INJECTIVE = "injective"
WALK = "walk"
FLAVORS = (INJECTIVE, WALK)

# Largest |u| for which the exact injective search is attempted once the
# walk criterion has failed.
INJECTIVE_SEARCH_LIMIT = 12

CORRECTED = "corrected"
PLUS_ONE = "plus-one"
_DENSITY_OFFSET = {CORRECTED: 2, PLUS_ONE: 1}


def _check_flavor(flavor: str) -> None:
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")


class Condition:
    """Immutable pair ``(u, f)``; ``f`` is total on unordered pairs of ``u``.

    ``flavor`` records the path-bound reading the condition was admitted
    under by a constructing operation (``None`` for raw data).
    """

    __slots__ = ("u", "_f", "flavor", "_hash")

    def __init__(self, u: Iterable[int], f: Mapping[tuple[int, int], int] | Iterable = (), flavor: str | None = None):
        uu = tuple(sorted(int(x) for x in u))
        if len(set(uu)) != len(uu):
            raise ValueError("u has repeated labels")
        items = f.items() if isinstance(f, Mapping) else (((t[0], t[1]), t[2]) for t in f)
        ff: dict[tuple[int, int], int] = {}
        members = set(uu)
        for (a, b), col in items:
            a, b = int(a), int(b)
            if a == b or a not in members or b not in members:
                raise ValueError(f"pair ({a}, {b}) is not a pair of u")
            key = (a, b) if a < b else (b, a)
            if key in ff:
                raise ValueError(f"pair {key} colored twice")
            ff[key] = int(col)
        if len(ff) != len(uu) * (len(uu) - 1) // 2:
            missing = next(p for p in itertools.combinations(uu, 2) if p not in ff)
            raise MissingPair(f"pair {missing} has no color")
        if flavor is not None:
            _check_flavor(flavor)
        object.__setattr__(self, "u", uu)
        object.__setattr__(self, "_f", ff)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Condition is immutable")

    @property
    def f(self) -> dict[tuple[int, int], int]:
        return dict(self._f)

    def color(self, a: int, b: int) -> int:
        return self._f[(a, b) if a < b else (b, a)]

    def __len__(self) -> int:
        return len(self.u)

    def __contains__(self, x) -> bool:
        return x in self._f if isinstance(x, tuple) else x in set(self.u)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(a, b, self._f[(a, b)]) for a, b in itertools.combinations(self.u, 2)]

    def with_flavor(self, flavor: str | None) -> "Condition":
        return Condition(self.u, self._f, flavor)

    def extends(self, other: "Condition") -> bool:
        """``self`` is stronger than or equal to ``other``: ``u`` and ``f`` contain ``other``'s."""
        mine = set(self.u)
        return all(x in mine for x in other.u) and all(
            self._f.get(k) == v for k, v in other._f.items()
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Condition):
            return NotImplemented
        return self.u == other.u and self._f == other._f

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.u, tuple(sorted(self._f.items())))))
        return self._hash

    def __repr__(self) -> str:
        return f"Condition(u={list(self.u)}, f={self.edges()})"

    def to_dict(self) -> dict:
        out = {"u": list(self.u), "f": [list(e) for e in self.edges()]}
        if self.flavor is not None:
            out["flavor"] = self.flavor
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "Condition":
        return cls(data["u"], [tuple(t) for t in data.get("f", [])], data.get("flavor"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Condition":
        return cls.from_dict(json.loads(text))


EMPTY = Condition(())


@dataclass(frozen=True)
class DenseSpec:
    """The dense set of conditions whose domain contains ``alpha``."""

    alpha: int

    def __contains__(self, cond: Condition) -> bool:
        return self.alpha in cond.u


# -- validity -------------------------------------------------------------

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return a
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return a


def _witness(cond: Condition, seq: Sequence[int]) -> dict:
    seq = [int(x) for x in seq]
    return {
        "sequence": seq,
        "v": list(increasing_subsequence_indices(seq)),
        "max_color": max(cond.color(a, b) for a, b in zip(seq, seq[1:])),
    }


def _bfs_path(adj, src, dst) -> list[int]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    out = [dst]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def walk_threshold_violation(cond: Condition):
    """Smallest ``(M, component)`` with ``|component| >= M`` in the graph of
    edges colored ``<= M``, or ``None``."""
    edges = sorted(cond.edges(), key=lambda e: (e[2], e[0], e[1]))
    uf = _UnionFind(cond.u)
    i = 0
    while i < len(edges):
        M = edges[i][2]
        touched = []
        while i < len(edges) and edges[i][2] == M:
            touched.append(uf.union(edges[i][0], edges[i][1]))
            i += 1
        big = {uf.find(r) for r in touched if uf.size[uf.find(r)] >= M}
        if big:
            comps: dict[int, list[int]] = {}
            for x in cond.u:
                r = uf.find(x)
                if r in big:
                    comps.setdefault(r, []).append(x)
            return M, min(comps.values())
    return None


def _walk_witness(cond: Condition, M: int, component: list[int]) -> dict:
    """Walk through the ``M`` smallest vertices of ``component`` in increasing
    order, joined by shortest paths of edges colored ``<= M``."""
    adj = {x: [] for x in component}
    for a, b in itertools.combinations(component, 2):
        if cond.color(a, b) <= M:
            adj[a].append(b)
            adj[b].append(a)
    targets = sorted(component)[:M]
    if len(targets) == 1:
        # M == 1: any edge of color 1 already violates the bound.
        targets = [targets[0], adj[targets[0]][0]]
    seq = [targets[0]]
    for a, b in zip(targets, targets[1:]):
        seq += _bfs_path(adj, a, b)[1:]
    return _witness(cond, seq)


def _lis_upper_bound(tails: list[int], future: list[int]) -> int:
    """Best LIS reachable by appending any order of ``future`` labels."""
    best = len(future)
    fut = sorted(future)
    for k in range(1, len(tails) + 1):
        above = len(fut) - bisect.bisect_right(fut, tails[k - 1])
        best = max(best, k + above)
    return best


def _injective_search(cond: Condition, M: int) -> list[int] | None:
    """Simple path in the ``<= M`` graph with an increasing subsequence of length ``M``."""
    u = cond.u
    adj = {x: [y for y in u if y != x and cond.color(x, y) <= M] for x in u}
    seen_states: set = set()

    def reach(x, visited):
        out, stack, mark = [], [x], {x}
        while stack:
            z = stack.pop()
            for y in adj[z]:
                if y not in mark and y not in visited:
                    mark.add(y)
                    out.append(y)
                    stack.append(y)
        return out

    def dfs(path, visited, tails):
        if len(tails) >= M and len(path) >= 2:
            return list(path)
        x = path[-1]
        key = (x, frozenset(visited), tuple(tails))
        if key in seen_states:
            return None
        seen_states.add(key)
        if _lis_upper_bound(tails, reach(x, visited)) < M:
            return None
        for y in adj[x]:
            if y in visited:
                continue
            nt = list(tails)
            j = bisect.bisect_left(nt, y)
            if j == len(nt):
                nt.append(y)
            else:
                nt[j] = y
            visited.add(y)
            path.append(y)
            found = dfs(path, visited, nt)
            path.pop()
            visited.discard(y)
            if found:
                return found
        return None

    for s in u:
        if adj[s]:
            found = dfs([s], {s}, [s])
            if found:
                return found
    return None


def is_valid(cond: Condition, flavor: str = INJECTIVE) -> Verdict:
    """Decide the path bound for ``cond``; invalid verdicts carry
    ``{"sequence", "v", "max_color"}`` with ``len(v) >= max_color``."""
    _check_flavor(flavor)
    for a, b, col in cond.edges():
        if col < 1:
            raise BadColors(f"color {col} on ({a}, {b}); colors must be >= 1")
    hit = walk_threshold_violation(cond)
    if hit is None:
        return Verdict.ok("walk criterion holds")
    if flavor == WALK:
        M, comp = hit
        return Verdict(False, _walk_witness(cond, M, comp), f"component of size {len(comp)} at threshold {M}")
    if len(cond) > INJECTIVE_SEARCH_LIMIT:
        raise SearchTooLarge(f"|u| = {len(cond)} exceeds the injective search limit {INJECTIVE_SEARCH_LIMIT}")
    thresholds = sorted({col for _, _, col in cond.edges() if col <= len(cond)})
    for M in thresholds:
        path = _injective_search(cond, M)
        if path is not None:
            return Verdict(False, _witness(cond, path), f"injective sequence at threshold {M}")
    return Verdict.ok("walk-invalid but no injective violation")


def check_sequence_witness(cond: Condition, witness: Mapping, flavor: str = WALK) -> bool:
    """Does ``witness`` really refute the path bound of ``cond`` in ``flavor``?"""
    seq = list(witness["sequence"])
    v = list(witness["v"])
    if len(seq) < 2 or any(x not in cond.u for x in seq):
        return False
    if any(a == b for a, b in zip(seq, seq[1:])):
        return False
    if flavor == INJECTIVE and len(set(seq)) != len(seq):
        return False
    if any(not (0 <= i < len(seq)) for i in v) or v != sorted(set(v)):
        return False
    if any(seq[i] >= seq[j] for i, j in zip(v, v[1:])):
        return False
    top = max(cond.color(a, b) for a, b in zip(seq, seq[1:]))
    return top == witness["max_color"] and len(v) >= top


# -- density --------------------------------------------------------------

def density_color(size: int, below: int, formula: str = CORRECTED) -> int:
    """Color of a new edge: ``|u| + offset + |u cap beta|`` (offset 2, or 1 for ``plus-one``)."""
    return size + _DENSITY_OFFSET[formula] + below


def extend_with_vertex(p: Condition, alpha: int, flavor: str = INJECTIVE, formula: str = CORRECTED) -> Condition:
    """Add ``alpha`` to ``u``; edge ``{alpha, beta}`` gets ``density_color(|u|, |u cap beta|)``.

    The result is validated; ``ValidityLost`` is raised if it fails.
    """
    _check_flavor(flavor)
    alpha = int(alpha)
    if alpha in p.u:
        raise AlreadyPresent(f"{alpha} already in u")
    size = len(p)
    f = p.f
    for rank, beta in enumerate(p.u):
        f[(min(alpha, beta), max(alpha, beta))] = density_color(size, rank, formula)
    q = Condition(p.u + (alpha,), f)
    verdict = is_valid(q, flavor)
    if not verdict.valid:
        raise ValidityLost(f"extension by {alpha} breaks the {flavor} bound", verdict, q)
    return q.with_flavor(flavor)


def extension_chain(labels: Sequence[int], flavor: str = INJECTIVE, formula: str = CORRECTED,
                    start: Condition = EMPTY) -> tuple[Condition, list[dict]]:
    """Extend ``start`` by ``labels`` in the given order; returns the final condition and a log."""
    cond = start
    log = []
    for step, alpha in enumerate(labels):
        size = len(cond)
        new = [{"beta": beta, "size": size, "below": rank, "color": density_color(size, rank, formula)}
               for rank, beta in enumerate(cond.u)]
        cond = extend_with_vertex(cond, alpha, flavor, formula)
        log.append({"step": step, "vertex": int(alpha), "edges": new})
    return cond, log


# -- projection, copies, amalgamation -------------------------------------

def project_below(q: Condition, delta: int) -> Condition:
    keep = [x for x in q.u if x < delta]
    return Condition(keep, {(a, b): q.color(a, b) for a, b in itertools.combinations(keep, 2)}, q.flavor)


def canonical_h(q: Condition, delta: int) -> dict[int, int]:
    """Identity below ``delta``; the rest packed, in order, into the top of ``[0, delta)``."""
    low = [x for x in q.u if x < delta]
    high = [x for x in q.u if x >= delta]
    floor = low[-1] + 1 if low else 0
    if delta - floor < len(high):
        raise NoRoom(f"{len(high)} labels needed in [{floor}, {delta}), only {max(delta - floor, 0)} available")
    h = {x: x for x in low}
    h.update({x: delta - len(high) + i for i, x in enumerate(high)})
    return h


def _check_h(q: Condition, delta: int, h: Mapping[int, int]) -> None:
    if set(h) != set(q.u):
        raise BadH("h must be defined exactly on u")
    imgs = [h[x] for x in q.u]
    if any(a >= b for a, b in zip(imgs, imgs[1:])):
        raise BadH("h is not strictly increasing")
    if any(h[x] != x for x in q.u if x < delta):
        raise BadH("h is not the identity below delta")
    if any(not (0 <= y < delta) for y in imgs):
        raise BadH("h leaves [0, delta)")


def copy_below(q: Condition, delta: int, h: Mapping[int, int] | None = None) -> Condition:
    """Order-isomorphic copy of ``q`` inside ``[0, delta)`` fixing ``q`` below ``delta``."""
    if h is None:
        h = canonical_h(q, delta)
    else:
        _check_h(q, delta, h)
    f = {(h[a], h[b]): q.color(a, b) for a, b in itertools.combinations(q.u, 2)}
    return Condition([h[x] for x in q.u], f, q.flavor)


def mixed_color(size: int, below_a: int, below_b: int) -> int:
    """``|u^r| + 2 + |u^r| * (|u^r cap a| + |u^r cap b|)``."""
    return size + 2 + size * (below_a + below_b)


def amalgamate_pair(q1: Condition, q2: Condition, flavor: str = INJECTIVE) -> Condition:
    """Common extension of two conditions agreeing on their common part;
    pairs across the two private parts get ``mixed_color``."""
    _check_flavor(flavor)
    common = set(q1.u) & set(q2.u)
    for a, b in itertools.combinations(sorted(common), 2):
        if q1.color(a, b) != q2.color(a, b):
            raise ValueError(f"conditions disagree on ({a}, {b})")
    u = sorted(set(q1.u) | set(q2.u))
    rank = {x: i for i, x in enumerate(u)}
    size = len(u)
    f = q1.f
    f.update(q2.f)
    only1 = [x for x in q1.u if x not in common]
    only2 = [x for x in q2.u if x not in common]
    for a in only1:
        for b in only2:
            f[(min(a, b), max(a, b))] = mixed_color(size, rank[a], rank[b])
    r = Condition(u, f)
    verdict = is_valid(r, flavor)
    if not verdict.valid:
        raise ValidityLost(f"amalgamation breaks the {flavor} bound", verdict, r)
    return r.with_flavor(flavor)


def amalgamate(q: Condition, delta: int, flavor: str = INJECTIVE) -> tuple[Condition, Condition]:
    """Returns ``(r, p_delta)`` with ``p_delta = copy_below(q, delta)`` and ``r``
    extending both. Raises ``ValidityLost`` if ``r`` fails in ``flavor``."""
    p_delta = copy_below(q, delta)
    r = amalgamate_pair(p_delta, q, flavor)
    return r, p_delta.with_flavor(flavor)


def order_pattern(cond: Condition) -> Condition:
    """Relabel ``u`` to ``0..|u|-1`` preserving order and colors."""
    rank = {x: i for i, x in enumerate(cond.u)}
    return Condition(range(len(cond)), {(rank[a], rank[b]): c for a, b, c in cond.edges()})


# -- finite chain-condition experiment ------------------------------------

def isomorphic_family(root: Sequence[int], script: Sequence[int], count: int, seed,
                      low: int, span: int, flavor: str = INJECTIVE, disjoint: bool = True) -> list[Condition]:
    """``count`` extension-built conditions sharing the root built from ``root``.

    Each member adds ``len(script)`` fresh labels drawn from
    ``[low, low + span)``, inserted in rank order ``script``; the colors only
    depend on ranks, so all members have the same order pattern. With
    ``disjoint`` the tails are pairwise disjoint, so any two members meet in
    exactly the root.
    """
    t = len(script)
    if sorted(script) != list(range(t)):
        raise ValueError("script must be a permutation of range(len(script))")
    if root and low <= max(root):
        raise ValueError("tail labels must lie above the root")
    if span < (t * count if disjoint else t):
        raise ValueError("span too small for the tails")
    base, _ = extension_chain(root, flavor)
    rng = np.random.default_rng(seed)
    if disjoint:
        pool = low + rng.choice(span, size=t * count, replace=False)
        tails = [sorted(int(x) for x in pool[i * t:(i + 1) * t]) for i in range(count)]
    else:
        tails = [sorted(int(x) for x in low + rng.choice(span, size=t, replace=False)) for _ in range(count)]
    out = []
    for tail in tails:
        cond, _ = extension_chain([tail[k] for k in script], flavor, start=base)
        out.append(cond)
    return out


@dataclass
class CccReport:
    found: bool
    pair: tuple[int, int] | None = None
    root: tuple[int, ...] | None = None
    delta: int | None = None
    extension: Condition | None = None
    buckets: int = 0
    pairs_examined: int = 0
    failures: list = field(default_factory=list)
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "pair": list(self.pair) if self.pair else None,
            "root": list(self.root) if self.root is not None else None,
            "delta": self.delta,
            "extension": self.extension.to_dict() if self.extension else None,
            "buckets": self.buckets,
            "pairs_examined": self.pairs_examined,
            "failures": self.failures,
            "reason": self.reason,
        }


def _root_split(a: Condition, b: Condition):
    """Common initial segment of the two domains, provided it equals their
    intersection and one private part lies wholly below the other."""
    common = set(a.u) & set(b.u)
    k = len(common)
    if set(a.u[:k]) != common or set(b.u[:k]) != common:
        return None
    ta, tb = a.u[k:], b.u[k:]
    if not ta or not tb:
        return tuple(sorted(common)), None, None
    if ta[-1] < tb[0]:
        return tuple(sorted(common)), 0, tb[0]
    if tb[-1] < ta[0]:
        return tuple(sorted(common)), 1, ta[0]
    return None


def ccc_experiment(conditions: Sequence[Condition], flavor: str = INJECTIVE, seed=None) -> CccReport:
    """Look for two isomorphic conditions over a common root whose private
    parts are separated, and amalgamate them.

    Conditions are bucketed by order pattern; within a bucket, pairs are
    examined in index order (or a seeded shuffle of it).
    """
    _check_flavor(flavor)
    if len(conditions) < 2:
        return CccReport(False, reason="no pair")
    buckets: dict[Condition, list[int]] = {}
    for i, q in enumerate(conditions):
        buckets.setdefault(order_pattern(q), []).append(i)
    candidates = [pair for idx in buckets.values() for pair in itertools.combinations(idx, 2)]
    if seed is not None:
        order = np.random.default_rng(seed).permutation(len(candidates))
        candidates = [candidates[k] for k in order]
    report = CccReport(False, buckets=len(buckets))
    for i, j in candidates:
        report.pairs_examined += 1
        split = _root_split(conditions[i], conditions[j])
        if split is None:
            continue
        root, lower, delta = split
        try:
            r = amalgamate_pair(conditions[i], conditions[j], flavor)
        except ValidityLost as exc:
            report.failures.append({"pair": [i, j], "root": list(root), "verdict": exc.verdict.to_dict()})
            continue
        report.found = True
        report.pair = (i, j)
        report.root = root
        report.delta = delta
        report.extension = r
        report.reason = "compatible pair amalgamated"
        return report
    report.reason = "no separated isomorphic pair" if not report.failures else "all candidate amalgamations failed"
    return report


# -- generic coloring and sampled LIS checks -----------------------------------

@dataclass
class GenericColoring:
    coloring: UnorderedPairColoring
    condition: Condition
    log: list
    flavor: str

    def to_dict(self) -> dict:
        return {"condition": self.condition.to_dict(), "log": self.log, "flavor": self.flavor}


def build_generic_coloring(n: int, order_seed=None, flavor: str = INJECTIVE) -> GenericColoring:
    """Meet every ``D_alpha`` for ``alpha < n`` by density extension, in a seeded order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    order = list(range(n)) if order_seed is None else [int(x) for x in np.random.default_rng(order_seed).permutation(n)]
    cond, log = extension_chain(order, flavor)
    m = np.full((n, n), -1, dtype=np.int64)
    for a, b, col in cond.edges():
        m[a, b] = m[b, a] = col
    recorded = WALK if is_valid(cond, WALK).valid else flavor
    return GenericColoring(UnorderedPairColoring(n, matrix=m), cond.with_flavor(recorded), log, recorded)


def condition_from_coloring(c) -> Condition:
    return Condition(range(c.n), {(a, b): c.color(a, b) for a, b in itertools.combinations(range(c.n), 2)})


def _simple_paths_below(rows, n, bound):
    """All simple paths with >= 2 vertices using only edges colored ``< bound``."""
    adj = [[y for y in range(n) if y != x and rows[x][y] < bound] for x in range(n)]
    visited = [False] * n

    def rec(path):
        yield list(path)
        for y in adj[path[-1]]:
            if not visited[y]:
                visited[y] = True
                path.append(y)
                yield from rec(path)
                path.pop()
                visited[y] = False

    for s in range(n):
        for y in adj[s]:
            visited[s] = visited[y] = True
            yield from rec([s, y])
            visited[s] = visited[y] = False


def _sample_paths_below(rows, n, bound, trials, seed):
    adj = [[y for y in range(n) if y != x and rows[x][y] < bound] for x in range(n)]
    starts = [x for x in range(n) if adj[x]]
    if not starts:
        return
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        target = int(rng.integers(2, n + 1))
        s = starts[int(rng.integers(len(starts)))]
        path = [s]
        seen = {s}
        while len(path) < target:
            options = [y for y in adj[path[-1]] if y not in seen]
            if not options:
                break
            y = options[int(rng.integers(len(options)))]
            path.append(y)
            seen.add(y)
        if len(path) >= 2:
            yield path


def corollary_scan(c, bound: int, trials: int = 10_000, seed=0, exhaustive: bool | None = None) -> dict:
    """Check injective sequences whose consecutive colors are all ``< bound``.

    Each sequence must satisfy the path bound (LIS < its max color), which
    in particular forces LIS < bound.
    """
    rows = c.rows
    n = c.n
    if exhaustive is None:
        exhaustive = n <= 7
    paths = _simple_paths_below(rows, n, bound) if exhaustive else _sample_paths_below(rows, n, bound, trials, seed)
    checked = lis_hits = 0
    first = None
    for path in paths:
        checked += 1
        lis = longest_increasing_subsequence(path)
        top = max(rows[a][b] for a, b in zip(path, path[1:]))
        if lis >= bound:
            lis_hits += 1
        if lis >= top and first is None:
            first = {"sequence": path, "v": list(increasing_subsequence_indices(path)), "max_color": top}
    return {"checked": checked, "lis_at_least_bound": lis_hits, "exhaustive": exhaustive, "witness": first}


def corollary_check(c, bound: int, trials: int = 10_000, seed=0, exhaustive: bool | None = None) -> Verdict:
    stats = corollary_scan(c, bound, trials, seed, exhaustive)
    detail = (f"{stats['checked']} sequences ({'exhaustive' if stats['exhaustive'] else 'sampled'}), "
              f"{stats['lis_at_least_bound']} with LIS >= {bound}")
    if stats["witness"] is not None:
        return Verdict(False, stats["witness"], detail)
    return Verdict(True, None, detail)
