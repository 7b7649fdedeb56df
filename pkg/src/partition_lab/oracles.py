"""Brute-force reference implementations.

Each function here recomputes a quantity by plain enumeration, sharing no
code path with the operation it cross-checks. They are exponential and
meant for small instances only.
"""

from __future__ import annotations

import bisect
import itertools


def lis_brute(seq) -> int:
    seq = list(seq)
    for size in range(len(seq), 0, -1):
        for idx in itertools.combinations(range(len(seq)), size):
            if all(seq[a] < seq[b] for a, b in zip(idx, idx[1:])):
                return size
    return 0


def lis_quadratic(seq) -> int:
    seq = list(seq)
    best = [1] * len(seq)
    for j in range(len(seq)):
        for i in range(j):
            if seq[i] < seq[j] and best[i] + 1 > best[j]:
                best[j] = best[i] + 1
    return max(best, default=0)


def mono_ipath_lengths(c) -> dict[int, int]:
    """Longest increasing monochromatic path (vertex count) per color, over all vertex subsets."""
    n = c.n
    out: dict[int, int] = {}
    for size in range(2, n + 1):
        for vs in itertools.combinations(range(n), size):
            cols = {c.color(a, b) for a, b in zip(vs, vs[1:])}
            if len(cols) == 1:
                g = cols.pop()
                out[g] = max(out.get(g, 0), size)
    return out


def small_palette_ipath_length(c, k: int) -> int:
    n = c.n
    best = min(n, 1)
    for size in range(2, n + 1):
        for vs in itertools.combinations(range(n), size):
            if len({c.color(a, b) for a, b in zip(vs, vs[1:])}) <= k:
                best = max(best, size)
    return best


def mono_simple_path_length(c, color: int) -> int:
    """Longest simple path in one color, by trying every ordered vertex tuple."""
    n = c.n
    best = min(n, 1)
    for size in range(2, n + 1):
        for vs in itertools.permutations(range(n), size):
            if all(c.color(a, b) == color for a, b in zip(vs, vs[1:])):
                best = size
                break
    return best


def has_mono_path(col_of, n: int, t: int, L: int, increasing: bool) -> bool:
    """Does the coloring ``col_of(a, b)`` (a < b) have a monochromatic path on ``L`` vertices?"""
    if n < L:
        return False
    if L == 1:
        return True
    tuples = itertools.combinations(range(n), L) if increasing else itertools.permutations(range(n), L)
    for vs in tuples:
        first = col_of(min(vs[0], vs[1]), max(vs[0], vs[1]))
        if all(col_of(min(a, b), max(a, b)) == first for a, b in zip(vs, vs[1:])):
            return True
    return False


def ramsey_holds(n: int, t: int, L: int, increasing: bool, reverse: bool = True) -> bool:
    """Every ``t``-coloring of ``[n]^2`` has the path; colorings enumerated in
    reverse lexicographic order (by default) to differ from the scanner."""
    pairs = list(itertools.combinations(range(n), 2))
    palette = range(t - 1, -1, -1) if reverse else range(t)
    for vec in itertools.product(palette, repeat=len(pairs)):
        lookup = dict(zip(pairs, vec))
        if not has_mono_path(lambda a, b: lookup[(a, b)], n, t, L, increasing):
            return False
    return True


def no_mono_3path_brute(c):
    n = c.n
    for a in range(n):
        for b in range(n):
            for g in range(n):
                if len({a, b, g}) == 3 and c.color(a, b) == c.color(b, g):
                    return (a, b, g)
    return None


# -- conditions -----------------------------------------------------------

def _violates(cond, seq) -> bool:
    top = max(cond.color(a, b) for a, b in zip(seq, seq[1:]))
    return lis_quadratic(seq) >= top


def injective_violation(cond):
    """First sequence of distinct vertices breaking the path bound, or ``None``."""
    for size in range(2, len(cond.u) + 1):
        for seq in itertools.permutations(cond.u, size):
            if _violates(cond, seq):
                return list(seq)
    return None


def walk_violation_naive(cond, max_len: int | None = None):
    """Enumerate every walk up to ``max_len`` vertices (default ``|u|^2 + 1``)."""
    u = cond.u
    if len(u) < 2:
        return None
    max_len = len(u) ** 2 + 1 if max_len is None else max_len

    def rec(seq):
        if len(seq) >= 2 and _violates(cond, seq):
            return list(seq)
        if len(seq) == max_len:
            return None
        for y in u:
            if y != seq[-1]:
                seq.append(y)
                found = rec(seq)
                seq.pop()
                if found:
                    return found
        return None

    for s in u:
        found = rec([s])
        if found:
            return found
    return None


def walk_violation_states(cond, max_len: int | None = None) -> bool:
    """Breadth-first walk enumeration, merging walks that share their
    (end vertex, patience tails, max color) state -- all later behaviour of a
    walk depends on nothing else. Walks up to ``max_len`` vertices
    (default ``|u|^2 + 1``)."""
    u = cond.u
    if len(u) < 2:
        return False
    max_len = len(u) ** 2 + 1 if max_len is None else max_len
    frontier = {(x, (x,), 0) for x in u}
    seen = set(frontier)
    for _ in range(max_len - 1):
        nxt = set()
        for x, tails, top in frontier:
            for y in u:
                if y == x:
                    continue
                t = list(tails)
                j = bisect.bisect_left(t, y)
                if j == len(t):
                    t.append(y)
                else:
                    t[j] = y
                state = (y, tuple(t), max(top, cond.color(x, y)))
                if len(state[1]) >= state[2]:
                    return True
                if state not in seen:
                    seen.add(state)
                    nxt.add(state)
        if not nxt:
            break
        frontier = nxt
    return False


def gamma_reference(inst) -> tuple[dict, set]:
    """Greedy table recomputed from the direct (non-incremental) exclusion set."""
    entries: dict = {}
    failures = set()
    for alpha in range(1, inst.N):
        for eps in range(inst.M):
            banned = set()
            for h in range(eps):
                for z in range(eps + 1):
                    if (inst.ord(alpha, h), z) in entries:
                        banned.add(entries[(inst.ord(alpha, h), z)])
            for z in range(eps):
                if (alpha, z) in entries:
                    banned.add(entries[(alpha, z)])
            options = sorted(set(inst.family[inst.sub(alpha, eps)]) - banned)
            if options:
                entries[(alpha, eps)] = options[0]
            else:
                failures.add((alpha, eps))
    return entries, failures


def T_brute(c, S) -> set:
    return {b for b in range(c.cols) if all(c(a, b) == 1 for a in S)}
