"""Finite model of the diagonal 0/1 coloring defeating polarized rectangles.

An instance fixes a universe ``[0, N)``, a family of ``N`` distinct
``M``-subsets, a ladder ``mu_0 < ... < mu_{k-1} = M`` and, for each row
``alpha >= 1``, two enumerations of length ``M`` (with repetitions):
``sub(alpha, e)`` indexes a family member below ``alpha`` and
``ord(alpha, e)`` an earlier row. The greedy table picks
``gamma(alpha, e)`` in ``B_sub(alpha, e)`` avoiding
``gamma(ord(alpha, h), z)`` for ``h < e, z <= e`` and earlier picks of the
same row. At finite scale a pick can be impossible; such cells are
recorded as failures and every check quantifies over defined cells only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .coloring import RectangleColoring01, UnorderedPairColoring, Verdict
from .errors import BadLadder, Infeasible, NotBelow
from .paths import longest_mono_ipath, longest_small_palette_ipath

CYCLIC = "cyclic"
PERMUTED = "permuted"


@dataclass(frozen=True)
class PolarizedInstance:
    N: int
    M: int
    cof: tuple[int, ...]
    family: tuple[tuple[int, ...], ...]
    enum_mode: str = CYCLIC
    enum_seed: int | None = None
    perms: Mapping[int, tuple[int, ...]] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cof", tuple(int(x) for x in self.cof))
        object.__setattr__(self, "family", tuple(tuple(sorted(int(x) for x in b)) for b in self.family))
        if not (0 < self.M <= self.N):
            raise Infeasible(f"need 0 < M <= N, got M={self.M}, N={self.N}")
        cof = self.cof
        if not cof or cof[0] < 1 or cof[-1] != self.M or any(a >= b for a, b in zip(cof, cof[1:])):
            raise BadLadder(f"ladder {list(cof)} must increase strictly from >= 1 up to M={self.M}")
        if len(self.family) != self.N:
            raise ValueError(f"family must have N={self.N} members")
        for b in self.family:
            if len(set(b)) != self.M or any(not (0 <= x < self.N) for x in b):
                raise ValueError(f"family member {list(b)} is not an M-subset of [0, N)")
        if len(set(self.family)) != self.N:
            raise ValueError("family members must be distinct")
        if self.enum_mode == PERMUTED:
            perms = dict(self.perms)
            for a in range(1, self.N):
                if a not in perms:
                    perms[a] = tuple(int(x) for x in np.random.default_rng([int(self.enum_seed or 0), a]).permutation(a))
                elif sorted(perms[a]) != list(range(a)):
                    raise ValueError(f"perms[{a}] is not a permutation of range({a})")
            object.__setattr__(self, "perms", perms)
        elif self.enum_mode != CYCLIC:
            raise ValueError(f"unknown enumeration mode {self.enum_mode!r}")

    def _index(self, alpha: int, k: int) -> int:
        if alpha < 1:
            raise ValueError("row 0 has no enumerations")
        r = k % alpha
        return self.perms[alpha][r] if self.enum_mode == PERMUTED else r

    def sub(self, alpha: int, eps: int) -> int:
        """Index of ``B_{alpha, eps}`` in the family."""
        return self._index(alpha, eps)

    def ord(self, alpha: int, eta: int) -> int:
        """The row ``alpha_eta < alpha``."""
        return self._index(alpha, eta)

    def to_dict(self) -> dict:
        enum = CYCLIC if self.enum_mode == CYCLIC else {PERMUTED: self.enum_seed}
        return {"N": self.N, "M": self.M, "cof": list(self.cof),
                "family": [list(b) for b in self.family], "enum": enum}

    @classmethod
    def from_dict(cls, data: Mapping) -> "PolarizedInstance":
        enum = data.get("enum", CYCLIC)
        if isinstance(enum, Mapping):
            return cls(data["N"], data["M"], data["cof"], data["family"], PERMUTED, int(enum[PERMUTED]))
        return cls(data["N"], data["M"], data["cof"], data["family"], CYCLIC)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def default_ladder(M: int) -> tuple[int, ...]:
    """Powers of two below ``M``, then ``M``."""
    out = []
    k = 1
    while k < M:
        out.append(k)
        k *= 2
    return tuple(out + [M])


def build_instance(N: int, M: int, cof: Sequence[int] | None = None, family: Iterable | None = None,
                   enum_mode: str = CYCLIC, seed: int = 0) -> PolarizedInstance:
    """Explicit ``family`` is used as given; otherwise ``N`` distinct random ``M``-subsets are drawn."""
    if not (0 < M <= N):
        raise Infeasible(f"need 0 < M <= N, got M={M}, N={N}")
    if math.comb(N, M) < N:
        raise Infeasible(f"only C({N},{M}) = {math.comb(N, M)} subsets for {N} family members")
    cof = default_ladder(M) if cof is None else tuple(cof)
    if family is None:
        rng = np.random.default_rng(seed)
        seen: set[tuple[int, ...]] = set()
        members: list[tuple[int, ...]] = []
        while len(members) < N:
            b = tuple(sorted(int(x) for x in rng.choice(N, size=M, replace=False)))
            if b not in seen:
                seen.add(b)
                members.append(b)
        family = members
    return PolarizedInstance(N, M, cof, tuple(family), enum_mode, seed if enum_mode == PERMUTED else None)


@dataclass(frozen=True)
class GammaTable:
    N: int
    M: int
    entries: Mapping[tuple[int, int], int]
    failures: frozenset

    def get(self, alpha: int, eps: int) -> int | None:
        return self.entries.get((alpha, eps))

    def row(self, alpha: int) -> list[tuple[int, int]]:
        return [(e, self.entries[(alpha, e)]) for e in range(self.M) if (alpha, e) in self.entries]

    def positions(self, alpha: int, value: int) -> list[int]:
        return [e for e, g in self.row(alpha) if g == value]

    def with_entry(self, alpha: int, eps: int, value: int) -> "GammaTable":
        entries = dict(self.entries)
        entries[(alpha, eps)] = value
        return GammaTable(self.N, self.M, entries, self.failures - {(alpha, eps)})

    def to_dict(self) -> dict:
        return {"N": self.N, "M": self.M,
                "entries": [[a, e, g] for (a, e), g in sorted(self.entries.items())],
                "failures": sorted([list(x) for x in self.failures])}


def build_gamma(inst: PolarizedInstance) -> GammaTable:
    """Greedy table in lexicographic ``(alpha, eps)`` order, minimum eligible pick."""
    N, M = inst.N, inst.M
    entries: dict[tuple[int, int], int] = {}
    failures = set()
    for alpha in range(1, N):
        excluded: set[int] = set()
        for eps in range(M):
            # grow the cross-row set from {h < eps-1, z <= eps-1} to {h < eps, z <= eps}
            if eps > 0:
                for z in range(eps + 1):
                    g = entries.get((inst.ord(alpha, eps - 1), z))
                    if g is not None:
                        excluded.add(g)
                for h in range(eps - 1):
                    g = entries.get((inst.ord(alpha, h), eps))
                    if g is not None:
                        excluded.add(g)
            pick = next((b for b in inst.family[inst.sub(alpha, eps)] if b not in excluded), None)
            if pick is None:
                failures.add((alpha, eps))
            else:
                entries[(alpha, eps)] = pick
                excluded.add(pick)  # row-injectivity
    return GammaTable(N, M, entries, frozenset(failures))


def gamma_violations(inst: PolarizedInstance, table: GammaTable) -> list[dict]:
    """Construction invariants: membership, cross-row exclusion, row-injectivity."""
    bad = []
    for (alpha, eps), g in sorted(table.entries.items()):
        if g not in inst.family[inst.sub(alpha, eps)]:
            bad.append({"cell": [alpha, eps], "reason": "not in B"})
        for z in range(eps):
            if table.get(alpha, z) == g:
                bad.append({"cell": [alpha, eps], "reason": f"repeats row entry {z}"})
        for h in range(eps):
            for z in range(eps + 1):
                if table.get(inst.ord(alpha, h), z) == g:
                    bad.append({"cell": [alpha, eps], "reason": f"equals gamma({inst.ord(alpha, h)}, {z})"})
    return bad


def coloring_from_gamma(inst: PolarizedInstance, table: GammaTable) -> RectangleColoring01:
    cells = np.zeros((inst.N, inst.N), dtype=np.uint8)
    for (alpha, _), g in table.entries.items():
        cells[alpha, g] = 1
    return RectangleColoring01(inst.N, inst.N, cells)


def check_star(inst: PolarizedInstance, table: GammaTable) -> Verdict:
    """``h < e`` and ``gamma(ord(alpha, h), z) == gamma(alpha, e)`` imply ``e < z``."""
    where: dict[int, dict[int, list[int]]] = {}
    for (a, z), g in table.entries.items():
        where.setdefault(a, {}).setdefault(g, []).append(z)
    for (alpha, eps), g in sorted(table.entries.items()):
        for eta in range(eps):
            row = inst.ord(alpha, eta)
            for z in sorted(where.get(row, {}).get(g, [])):
                if not eps < z:
                    w = {"alpha": alpha, "eta": eta, "epsilon": eps, "zeta": z, "gamma": g, "row": row}
                    return Verdict(False, w, f"gamma({row},{z}) = gamma({alpha},{eps}) with {z} <= {eps}")
    return Verdict.ok()


def refute_zero_rectangle(inst: PolarizedInstance, table: GammaTable, A: Iterable[int], beta_B: int):
    """A 1-cell ``(alpha, gamma(alpha, e))`` in ``A x B_{beta_B}`` with ``sub(alpha, e) = beta_B``, or ``None``."""
    for alpha in sorted(set(A)):
        if alpha <= beta_B:
            continue
        for eps in range(inst.M):
            if inst.sub(alpha, eps) == beta_B and (alpha, eps) in table.entries:
                return alpha, table.entries[(alpha, eps)]
    return None


def row_ones(c: RectangleColoring01, alpha: int) -> set[int]:
    return {int(b) for b in np.flatnonzero(c.cells[alpha])}


def compute_T(c: RectangleColoring01, S: Iterable[int]) -> set[int]:
    """Columns colored 1 against every row of ``S``."""
    S = list(S)
    if not S:
        return set(range(c.cols))
    return {int(b) for b in np.flatnonzero(c.cells[S].all(axis=0))}


def link_eta(inst: PolarizedInstance, gamma: int, delta: int) -> int:
    """Least ``eta`` with ``ord(delta, eta) == gamma``."""
    if not gamma < delta:
        raise NotBelow(f"{gamma} is not below {delta}")
    if inst.enum_mode == PERMUTED:
        return inst.perms[delta].index(gamma)
    return gamma


def _ladder_color(inst: PolarizedInstance, eta: int) -> int:
    for n, mu in enumerate(inst.cof):
        if eta < mu:
            return n
    return len(inst.cof)


def descent_bound_check(inst: PolarizedInstance, table: GammaTable, c: RectangleColoring01,
                        S: Sequence[int]) -> Verdict:
    """For every column ``g`` in ``T(S)`` with row positions ``e(alpha)``:

    (i)  consecutive ``alpha < alpha'`` with ``link_eta(alpha, alpha') < e(alpha')``
         have ``e(alpha') < e(alpha)``;
    (ii) when ``|S| >= M + 1`` some ``e(alpha) <= L(S)``, so ``T(S)`` lies in
         ``{gamma(alpha, e): alpha in S, e <= L(S)}`` and ``|T(S)| <= (L(S)+1) |S|``.
    """
    S = [int(x) for x in S]
    if any(a >= b for a, b in zip(S, S[1:])):
        raise ValueError("S must be strictly increasing")
    if any(not (1 <= a < inst.N) for a in S):
        raise ValueError("S must lie in [1, N)")
    links = [link_eta(inst, a, b) for a, b in zip(S, S[1:])]
    L = max(links, default=0)
    rho = L + 1
    T = sorted(compute_T(c, S))
    forced = len(S) >= inst.M + 1
    for g in T:
        eps = {}
        for a in S:
            pos = table.positions(a, g)
            if len(pos) != 1:
                return Verdict(False, {"gamma": g, "alpha": a, "positions": pos}, "row position not unique")
            eps[a] = pos[0]
        for (a, b), eta in zip(zip(S, S[1:]), links):
            if eta < eps[b] and not eps[b] < eps[a]:
                trace = {"clause": "i", "gamma": g, "alpha": a, "alpha_next": b, "eta": eta,
                         "eps": eps[a], "eps_next": eps[b], "eps_all": [[x, eps[x]] for x in S]}
                return Verdict(False, trace, "descent step fails")
        if forced and min(eps.values()) >= rho:
            trace = {"clause": "ii", "gamma": g, "rho": rho, "eps_all": [[x, eps[x]] for x in S]}
            return Verdict(False, trace, "no row position below rho")
    if forced:
        low = {table.entries[(a, e)] for a in S for e in range(rho) if (a, e) in table.entries}
        if not set(T) <= low:
            return Verdict(False, {"clause": "ii", "outside": sorted(set(T) - low)}, "T(S) escapes the low cells")
        if len(T) > rho * len(S):
            return Verdict(False, {"clause": "ii", "size": len(T), "bound": rho * len(S)}, "|T(S)| too large")
    return Verdict(True, None, f"L={L} |T|={len(T)} bound={rho * len(S) if forced else 'not forced'}")


def derive_d(inst: PolarizedInstance, S: Iterable[int]) -> tuple[UnorderedPairColoring, tuple[int, ...]]:
    """``d(g, h) = least n with link_eta(g, h) < mu_n`` on ``S`` (relabelled ``0..|S|-1``);
    ``len(cof)`` when the ladder is exhausted. Returns the coloring and the labels."""
    labels = tuple(sorted(set(int(x) for x in S)))
    k = len(labels)
    m = np.full((k, k), -1, dtype=np.int64)
    for i in range(k):
        for j in range(i + 1, k):
            m[i, j] = m[j, i] = _ladder_color(inst, link_eta(inst, labels[i], labels[j]))
    return UnorderedPairColoring(k, matrix=m), labels


def glue_ipath(inst: PolarizedInstance, table: GammaTable, c: RectangleColoring01, S: Sequence[int]) -> dict:
    """Pick a long monochromatic increasing path of ``d`` inside ``S`` and
    check what the descent argument needs of it."""
    if len(set(S)) < 2:
        raise ValueError("|S| must be at least 2")
    d, labels = derive_d(inst, S)
    paths = longest_mono_ipath(d)
    color = min(paths, key=lambda g: (-len(paths[g]), g))
    best = paths[color]
    S0 = [labels[i] for i in best.vertices]
    small = longest_small_palette_ipath(d, 2)
    T_S, T_S0 = compute_T(c, labels), compute_T(c, S0)
    L0 = max((link_eta(inst, a, b) for a, b in zip(S0, S0[1:])), default=0)
    overflow = color == len(inst.cof)
    link_ok = overflow or L0 < inst.cof[color]
    descent = descent_bound_check(inst, table, c, S0)
    return {
        "S": list(labels),
        "color": color,
        "overflow": overflow,
        "S0": S0,
        "small_palette_path": [labels[i] for i in small.vertices],
        "T_S_subset_T_S0": T_S <= T_S0,
        "L_S0": L0,
        "mu_color": None if overflow else inst.cof[color],
        "link_bound_ok": link_ok,
        "descent": descent.to_dict(),
        "valid": bool(T_S <= T_S0 and link_ok and descent.valid),
    }
