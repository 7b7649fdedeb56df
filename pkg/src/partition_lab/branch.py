"""Ordered-pair coloring by departure level of distinct binary branches.

Two branches leaving each other at level ``m`` color the ordered pair
``(a, b)`` with ``2m`` when ``a`` goes left there and ``2m + 1`` when it
goes right, so the two orientations of a pair always get ``{2m, 2m+1}``.
No three distinct vertices then carry a monochromatic 2-edge path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .coloring import OrderedPairColoring, PairColoring, Verdict
from .errors import EqualBranches, LengthMismatch


@dataclass(frozen=True)
class BranchFamily:
    depth: int
    branches: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        for b in self.branches:
            if len(b) != self.depth:
                raise LengthMismatch(f"branch {b!r} is not of length {self.depth}")
            if set(b) - {"0", "1"}:
                raise ValueError(f"branch {b!r} is not a 0/1 string")
        if len(set(self.branches)) != len(self.branches):
            raise EqualBranches("branches must be pairwise distinct")

    def __len__(self):
        return len(self.branches)

    def bits(self) -> np.ndarray:
        if not self.branches:
            return np.zeros((0, self.depth), dtype=np.int8)
        return np.array([[ch == "1" for ch in b] for b in self.branches], dtype=np.int8).reshape(len(self), self.depth)

    def to_dict(self) -> dict:
        return {"depth": self.depth, "branches": list(self.branches)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "BranchFamily":
        return cls(int(data["depth"]), tuple(data["branches"]))

    @classmethod
    def from_json(cls, text: str) -> "BranchFamily":
        return cls.from_dict(json.loads(text))


def random_branch_family(k: int, depth: int, seed) -> BranchFamily:
    """``k`` distinct uniformly random branches of length ``depth``."""
    if k > 2 ** depth:
        raise ValueError(f"only {2 ** depth} distinct branches of depth {depth}")
    rng = np.random.default_rng(seed)
    seen: set[str] = set()
    out: list[str] = []
    while len(out) < k:
        b = "".join("1" if x else "0" for x in rng.integers(0, 2, size=depth))
        if b not in seen:
            seen.add(b)
            out.append(b)
    return BranchFamily(depth, tuple(out))


def departure_level(x: str, y: str) -> int:
    """Least index where the two 0/1 strings differ."""
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)} differ")
    for m, (a, b) in enumerate(zip(x, y)):
        if a != b:
            return m
    raise EqualBranches("branches are equal")


def build_branch_coloring(fam: BranchFamily) -> OrderedPairColoring:
    if len(fam) < 2:
        raise ValueError("need at least two branches")
    bits = fam.bits()
    k = len(fam)
    diff = bits[:, None, :] != bits[None, :, :]
    level = diff.argmax(axis=2)
    side = np.take_along_axis(bits, level, axis=1)  # bits[a, level[a, b]]
    m = 2 * level + side
    np.fill_diagonal(m, -1)
    return OrderedPairColoring(k, matrix=m)


def check_no_mono_3path(c: PairColoring) -> Verdict:
    """Valid iff ``c(a, b) != c(b, g)`` for all distinct ``a, b, g``.

    Witness: the lexicographically first offending triple.
    """
    n = c.n
    if n < 3:
        return Verdict.ok()
    m = c.matrix
    # same[a, b, g] == (c(a, b) == c(b, g))
    same = m[:, :, None] == m[None, :, :]
    eye = np.eye(n, dtype=bool)
    same &= ~eye[:, :, None]   # a != b
    same &= ~eye[None, :, :]   # b != g
    same &= ~eye[:, None, :]   # a != g
    hits = np.argwhere(same)
    if len(hits) == 0:
        return Verdict.ok()
    a, b, g = (int(x) for x in hits[0])
    return Verdict(False, (a, b, g), f"c({a},{b}) = c({b},{g}) = {int(m[a, b])}")
