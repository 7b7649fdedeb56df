"""Seeded batch experiments over every module, with JSON/CSV reports.

A run takes one integer seed. Trial ``i`` gets its own seed from
``SeedSequence(seed, spawn_key=(i,))``, so a trial can be regenerated alone
and results do not depend on how trials are spread over workers. Each
trial returns a record ``{"index", "seed", "ok", "result", "witness"}``;
``ok`` is False exactly when an asserted invariant failed, and any witness
can be re-checked with ``revalidate``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from . import __version__
from .branch import build_branch_coloring, check_no_mono_3path, random_branch_family
from .coloring import (
    ORDERED,
    UNORDERED,
    PathWitness,
    _jsonable,
    check_path_witness,
    random_coloring,
    verify_rectangle,
)
from .errors import ConfigInvalid, NoRoom, PartitionLabError, ValidityLost
from .forcing import (
    CORRECTED,
    FLAVORS,
    INJECTIVE,
    PLUS_ONE,
    WALK,
    Condition,
    amalgamate,
    amalgamate_pair,
    build_generic_coloring,
    canonical_h,
    ccc_experiment,
    check_sequence_witness,
    copy_below,
    corollary_check,
    extension_chain,
    is_valid,
    isomorphic_family,
)
from .oracles import walk_violation_states
from .paths import (
    INCREASING,
    SIMPLE,
    greedy_pivot_path,
    longest_mono_ipath,
    longest_mono_simple_path,
    longest_small_palette_ipath,
    ramsey_scan,
    scan_cap,
    two_color_ordered_path,
    two_directional_palette,
)
from .polarized import (
    CYCLIC,
    PERMUTED,
    build_gamma,
    build_instance,
    check_star,
    coloring_from_gamma,
    descent_bound_check,
    gamma_violations,
    glue_ipath,
    refute_zero_rectangle,
    row_ones,
)

FORMATS = ("json", "csv")
SCAN_COLUMNS = ("n", "t", "L", "flavor", "mode", "holds", "checked")
TRIAL_COLUMNS = ("index", "seed", "ok", "detail")
QUERIES = ("mono-ipath", "small-palette", "simple", "greedy", "two-color")


def trial_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(int(seed), spawn_key=(int(index),)).generate_state(1)[0])


# -- parameter checking ---------------------------------------------------

def _need(params: Mapping, key: str, kind=int, lo=None, hi=None, choices=None):
    if key not in params:
        raise ConfigInvalid(f"missing parameter {key!r}")
    value = params[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ConfigInvalid(f"{key} must be an integer")
    if kind is list and not isinstance(value, list):
        raise ConfigInvalid(f"{key} must be a list")
    if kind is dict and not isinstance(value, Mapping):
        raise ConfigInvalid(f"{key} must be an object")
    if lo is not None and value < lo:
        raise ConfigInvalid(f"{key} must be >= {lo}")
    if hi is not None and value > hi:
        raise ConfigInvalid(f"{key} must be <= {hi}")
    if choices is not None and value not in choices:
        raise ConfigInvalid(f"{key} must be one of {list(choices)}")
    return value


def _defaults(params: Mapping, defaults: Mapping) -> dict:
    out = dict(defaults)
    out.update(params)
    unknown = set(out) - set(defaults)
    if unknown:
        raise ConfigInvalid(f"unknown parameters {sorted(unknown)}")
    return out


def _labels(value, name="labels") -> list[int]:
    if not isinstance(value, list) or any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in value):
        raise ConfigInvalid(f"{name} must be a list of non-negative integers")
    if len(set(value)) != len(value):
        raise ConfigInvalid(f"{name} has repeats")
    return value


def _condition(value) -> Condition:
    try:
        return Condition.from_dict(value)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigInvalid(f"bad condition: {exc}") from exc


# -- kinds ----------------------------------------------------------------

@dataclass(frozen=True)
class Kind:
    defaults: Mapping
    check: Callable[[dict], None]
    trial: Callable[[dict, int], dict]
    revalidate: Callable[[dict, int, dict], bool]
    single: bool = False  # one trial regardless of ``trials``


def _rec(ok: bool, result: Mapping, witness=None) -> dict:
    return {"ok": bool(ok), "result": _jsonable(dict(result)), "witness": _jsonable(witness)}


# path-search

def _path_check(p):
    _need(p, "n", lo=2, hi=64)
    _need(p, "palette", lo=1)
    _need(p, "coloring", str, choices=(UNORDERED, ORDERED))
    q = _need(p, "query", str, choices=QUERIES)
    _need(p, "k", lo=1)
    _need(p, "color", lo=0)
    _need(p, "budget", lo=1)
    if q == "greedy" and p["coloring"] != UNORDERED:
        raise ConfigInvalid("greedy needs an unordered coloring")
    if q == "two-color" and p["coloring"] != ORDERED:
        raise ConfigInvalid("two-color needs an ordered coloring")


def _path_certify(p, c, w: PathWitness) -> bool:
    q = p["query"]
    if q == "mono-ipath":
        return check_path_witness(c, w, increasing=True, max_palette=1).valid
    if q == "small-palette":
        return check_path_witness(c, w, increasing=True, max_palette=p["k"]).valid
    if q == "simple":
        return check_path_witness(c, w, simple=True, color=p["color"] if len(w) > 1 else None).valid
    if q == "greedy":
        return check_path_witness(c, w, simple=True, max_palette=1).valid
    return check_path_witness(c, w, simple=True).valid and len(two_directional_palette(c, w.vertices)) <= 2


def _path_trial(p, seed):
    c = random_coloring(p["n"], p["palette"], seed, p["coloring"])
    q = p["query"]
    result: dict[str, Any] = {"query": q}
    if q == "mono-ipath":
        found = longest_mono_ipath(c)
        ws = [found[g] for g in sorted(found)]
        result["lengths"] = [[g, len(found[g])] for g in sorted(found)]
    elif q == "small-palette":
        ws = [longest_small_palette_ipath(c, p["k"])]
    elif q == "simple":
        res = longest_mono_simple_path(c, p["color"], p["budget"])
        ws = [res.witness]
        result.update(exact=res.exact, expansions=res.expansions)
    elif q == "greedy":
        ws = [greedy_pivot_path(c)]
    else:
        w, pal = two_color_ordered_path(c)
        ws = [w]
        result["palette"] = sorted(pal)
    result["longest"] = max(len(w) for w in ws) if ws else 0
    ok = all(_path_certify(p, c, w) for w in ws)
    return _rec(ok, result, [w.to_dict() for w in ws])


def _path_revalidate(p, seed, rec):
    c = random_coloring(p["n"], p["palette"], seed, p["coloring"])
    return all(_path_certify(p, c, PathWitness.from_dict(w)) for w in rec["witness"] or [])


# ramsey-scan

def _scan_check(p):
    _need(p, "n_max", lo=1)
    _need(p, "t", lo=1)
    _need(p, "L", lo=1)
    _need(p, "mode", str, choices=("exhaustive", "sampled"))
    _need(p, "flavor", str, choices=(INCREASING, SIMPLE))
    _need(p, "samples", lo=1)
    if p["mode"] == "exhaustive":
        total = p["t"] ** (p["n_max"] * (p["n_max"] - 1) // 2)
        if total > scan_cap():
            raise ConfigInvalid(f"{total} colorings exceed the enumeration cap {scan_cap()}")


def _scan_trial(p, seed):
    rows = ramsey_scan(p["n_max"], p["t"], p["L"], p["mode"], p["flavor"], seed=seed, trials=p["samples"])
    first = next((r.n for r in rows if r.holds), None)
    return _rec(True, {"rows": [r.to_dict() for r in rows], "first_holding_n": first})


def _scan_revalidate(p, seed, rec):
    return True


# branch

def _branch_check(p):
    _need(p, "k", lo=2)
    depth = _need(p, "depth", lo=1)
    if p["k"] > 2 ** depth:
        raise ConfigInvalid(f"only {2 ** depth} distinct branches of depth {depth}")


def _branch_trial(p, seed):
    fam = random_branch_family(p["k"], p["depth"], seed)
    c = build_branch_coloring(fam)
    v = check_no_mono_3path(c)
    m = c.matrix
    partner = bool(np.all((m + m.T)[~np.eye(len(fam), dtype=bool)] % 4 == 1))
    return _rec(v.valid and partner, {"valid": v.valid, "partner_law": partner}, v.witness)


def _branch_revalidate(p, seed, rec):
    if rec["witness"] is None:
        return True
    c = build_branch_coloring(random_branch_family(p["k"], p["depth"], seed))
    a, b, g = rec["witness"]
    return len({a, b, g}) == 3 and c(a, b) == c(b, g)


# forcing-validate

def _validate_check(p):
    _need(p, "flavor", str, choices=FLAVORS)
    if p["condition"] is not None:
        _condition(p["condition"])
    else:
        _need(p, "size", lo=0, hi=12)
        _need(p, "max_color", lo=1)


def _random_condition(p, seed) -> Condition:
    rng = np.random.default_rng(seed)
    size = int(rng.integers(0, p["size"] + 1))
    u = sorted(int(x) for x in rng.choice(3 * max(size, 1), size=size, replace=False))
    f = {(a, b): int(rng.integers(1, p["max_color"] + 1)) for a, b in itertools.combinations(u, 2)}
    return Condition(u, f)


def _validate_trial(p, seed):
    if p["condition"] is not None:
        cond = _condition(p["condition"])
        v = is_valid(cond, p["flavor"])
        return _rec(v.valid, {"condition": cond.to_dict(), "detail": v.detail}, v.witness)
    cond = _random_condition(p, seed)
    walk = is_valid(cond, WALK)
    oracle = walk_violation_states(cond)
    inj = is_valid(cond, INJECTIVE)
    agree = walk.valid == (not oracle)
    law = inj.valid or not walk.valid
    witness = inj.witness if p["flavor"] == INJECTIVE else walk.witness
    result = {"u": list(cond.u), "walk_valid": walk.valid, "oracle_agrees": agree,
              "injective_valid": inj.valid, "flavor_law": law}
    return _rec(agree and law, result, witness)


def _validate_revalidate(p, seed, rec):
    if rec["witness"] is None:
        return True
    cond = _condition(p["condition"]) if p["condition"] is not None else _random_condition(p, seed)
    return check_sequence_witness(cond, rec["witness"], p["flavor"])


# forcing-extend

def _extend_check(p):
    _need(p, "flavor", str, choices=FLAVORS)
    _need(p, "formula", str, choices=(CORRECTED, PLUS_ONE))
    if p["labels"] is not None:
        _labels(p["labels"])
    else:
        size = _need(p, "size", lo=0, hi=12)
        _need(p, "span", lo=size)


def _extend_labels(p, seed) -> list[int]:
    if p["labels"] is not None:
        return list(p["labels"])
    return [int(x) for x in np.random.default_rng(seed).choice(p["span"], size=p["size"], replace=False)]


def _extend_trial(p, seed):
    labels = _extend_labels(p, seed)
    try:
        cond, _ = extension_chain(labels, p["flavor"], p["formula"])
    except ValidityLost as exc:
        result = {"labels": labels, "lost": True, "candidate": exc.candidate.to_dict()}
        return _rec(False, result, exc.verdict.witness)
    return _rec(True, {"labels": labels, "lost": False, "max_color": max((c for *_, c in cond.edges()), default=0)})


def _extend_revalidate(p, seed, rec):
    if rec["witness"] is None:
        return True
    cand = Condition.from_dict(rec["result"]["candidate"])
    return check_sequence_witness(cand, rec["witness"], p["flavor"])


# forcing-amalgamate

def _amalg_check(p):
    _need(p, "flavor", str, choices=FLAVORS)
    if p["condition"] is not None:
        q = _condition(p["condition"])
        delta = _need(p, "delta", lo=0)
        try:
            canonical_h(q, delta)
        except NoRoom as exc:
            raise ConfigInvalid(str(exc)) from exc
    else:
        _need(p, "max_size", lo=1, hi=8)
        _need(p, "span", lo=p["max_size"] + 1)


def _amalg_input(p, seed) -> tuple[Condition, int]:
    if p["condition"] is not None:
        return _condition(p["condition"]), p["delta"]
    rng = np.random.default_rng(seed)
    while True:
        size = int(rng.integers(1, p["max_size"] + 1))
        labels = [int(x) for x in rng.choice(p["span"], size=size, replace=False)]
        q, _ = extension_chain(labels, p["flavor"])
        room = []
        for d in range(1, max(q.u) + 1):
            try:
                canonical_h(q, d)
            except NoRoom:
                continue
            room.append(d)
        if room:
            return q, room[int(rng.integers(len(room)))]


def _amalg_trial(p, seed):
    q, delta = _amalg_input(p, seed)
    result: dict[str, Any] = {"q": q.to_dict(), "delta": delta}
    try:
        r, p_delta = amalgamate(q, delta, p["flavor"])
    except ValidityLost as exc:
        result.update(lost=True, candidate=exc.candidate.to_dict())
        return _rec(False, result, exc.verdict.witness)
    result.update(lost=False, u_r=list(r.u))
    return _rec(r.extends(q) and r.extends(p_delta), result)


def _amalg_revalidate(p, seed, rec):
    if rec["witness"] is None:
        return True
    q, delta = _amalg_input(p, seed)
    cand = Condition.from_dict(rec["result"]["candidate"])
    return (cand.extends(q) and cand.extends(copy_below(q, delta))
            and check_sequence_witness(cand, rec["witness"], p["flavor"]))


# forcing-generic

def _generic_check(p):
    _need(p, "n", lo=0, hi=4096)
    _need(p, "flavor", str, choices=FLAVORS)
    _need(p, "bound", lo=1)
    _need(p, "samples", lo=1)


def _generic_trial(p, seed):
    g = build_generic_coloring(p["n"], seed, p["flavor"])
    n = p["n"]
    m = g.coloring.matrix
    total = bool(np.all(m[~np.eye(n, dtype=bool)] >= 1)) and list(g.condition.u) == list(range(n))
    v = corollary_check(g.coloring, p["bound"], p["samples"], seed)
    result = {"recorded_flavor": g.flavor, "total": total, "corollary": v.detail}
    return _rec(total and v.valid, result, v.witness)


def _generic_revalidate(p, seed, rec):
    if rec["witness"] is None:
        return True
    cond = build_generic_coloring(p["n"], seed, p["flavor"]).condition
    return check_sequence_witness(cond, rec["witness"], INJECTIVE)


# forcing-ccc

def _ccc_check(p):
    root = _labels(p["root"], "root")
    _need(p, "low", lo=max(root, default=-1) + 1)
    max_size = _need(p, "max_size", lo=len(root) + 1, hi=10)
    _need(p, "count", lo=1)
    _need(p, "flavor", str, choices=FLAVORS)
    if not isinstance(p["disjoint"], bool):
        raise ConfigInvalid("disjoint must be true or false")
    tails = (max_size - len(root)) * (p["count"] if p["disjoint"] else 1)
    _need(p, "span", lo=tails)


def _ccc_input(p, seed):
    rng = np.random.default_rng(seed)
    t = int(rng.integers(1, p["max_size"] - len(p["root"]) + 1))
    script = [int(x) for x in rng.permutation(t)]
    fam = isomorphic_family(p["root"], script, p["count"], int(rng.integers(2 ** 31)),
                            p["low"], p["span"], p["flavor"], p["disjoint"])
    return script, fam


def _ccc_trial(p, seed):
    script, fam = _ccc_input(p, seed)
    rep = ccc_experiment(fam, p["flavor"], seed)
    result = {"script": script, "found": rep.found, "pair": rep.pair, "buckets": rep.buckets,
              "pairs_examined": rep.pairs_examined, "failed_pairs": len(rep.failures), "reason": rep.reason}
    if rep.found:
        return _rec(True, result, {"pair": list(rep.pair), "extension": rep.extension.to_dict()})
    first = rep.failures[0] if rep.failures else None
    return _rec(False, result, first and {"pair": first["pair"], "violation": first["verdict"]["witness"]})


def _ccc_revalidate(p, seed, rec):
    w = rec["witness"]
    if w is None:
        return True
    _, fam = _ccc_input(p, seed)
    a, b = (fam[i] for i in w["pair"])
    if "extension" in w:
        r = Condition.from_dict(w["extension"])
        return r.extends(a) and r.extends(b) and is_valid(r, p["flavor"]).valid
    try:
        amalgamate_pair(a, b, p["flavor"])
    except ValidityLost as exc:
        return check_sequence_witness(exc.candidate, w["violation"], p["flavor"])
    return False


# polarized

def _pol_check(p):
    N = _need(p, "N", lo=2, hi=400)
    M = _need(p, "M", lo=1, hi=N)
    _need(p, "mode", str, choices=(CYCLIC, PERMUTED))
    if math.comb(N, M) < N:
        raise ConfigInvalid(f"only C({N},{M}) subsets for {N} family members")


def _pol_s_check(p):
    _pol_check(p)
    _need(p, "s", lo=2, hi=p["N"] - 1)
    _need(p, "samples", lo=1)


def _pol_build(p, seed):
    inst = build_instance(p["N"], p["M"], enum_mode=p["mode"], seed=seed)
    table = build_gamma(inst)
    return inst, table, coloring_from_gamma(inst, table)


def _pol_invariants(inst, table, c):
    star = check_star(inst, table)
    bad = gamma_violations(inst, table)
    rows = max(len(row_ones(c, a)) for a in range(inst.N))
    ok = star.valid and not bad and rows <= inst.M
    result = {"entries": len(table.entries), "failures": len(table.failures), "star": star.valid,
              "construction_violations": len(bad), "max_row_ones": rows}
    return ok, result, (star.witness if not star.valid else (bad[0] if bad else None))


def _build_trial(p, seed):
    ok, result, w = _pol_invariants(*_pol_build(p, seed))
    return _rec(ok, result, w)


def _recompute(kind_trial):
    def check(p, seed, rec):
        return kind_trial(p, seed) == {k: rec[k] for k in ("ok", "result", "witness")}
    return check


def _verify_trial(p, seed):
    inst, table, c = _pol_build(p, seed)
    ok, result, w = _pol_invariants(inst, table, c)
    cells = []
    for beta in range(inst.N):
        cell = refute_zero_rectangle(inst, table, range(beta + 1, inst.N), beta)
        if cell is not None:
            cells.append([beta, *cell])
    result["refuted"] = len(cells)
    good = all(_refutes(inst, c, *cell) for cell in cells)
    return _rec(ok and good, result, {"invariant": w, "cells": cells})


def _refutes(inst, c, beta, alpha, g) -> bool:
    B = inst.family[beta]
    v = verify_rectangle(c, range(beta + 1, inst.N), B, 0)
    return (not v.valid) and alpha > beta and g in B and int(c(alpha, g)) == 1


def _verify_revalidate(p, seed, rec):
    inst, _, c = _pol_build(p, seed)
    return all(_refutes(inst, c, *cell) for cell in rec["witness"]["cells"])


def _sample_S(p, rng):
    return sorted(int(x) for x in 1 + rng.choice(p["N"] - 1, size=p["s"], replace=False))


def _descent_trial(p, seed):
    inst, table, c = _pol_build(p, seed)
    ok, result, w = _pol_invariants(inst, table, c)
    rng = np.random.default_rng([seed, 1])
    bad = None
    for _ in range(p["samples"]):
        S = _sample_S(p, rng)
        v = descent_bound_check(inst, table, c, S)
        if not v.valid:
            bad = {"S": S, "trace": v.witness}
            break
    result["descent_ok"] = bad is None
    return _rec(ok and bad is None, result, bad or w)


def _glue_trial(p, seed):
    inst, table, c = _pol_build(p, seed)
    ok, result, w = _pol_invariants(inst, table, c)
    rng = np.random.default_rng([seed, 2])
    bad = None
    colors = []
    for _ in range(p["samples"]):
        S = _sample_S(p, rng)
        g = glue_ipath(inst, table, c, S)
        colors.append(g["color"])
        if not g["valid"]:
            bad = g
            break
    result["path_colors"] = colors
    return _rec(ok and bad is None, result, bad or w)


_POL = {"N": 40, "M": 8, "mode": PERMUTED}

KINDS: dict[str, Kind] = {
    "path-search": Kind({"n": 8, "palette": 3, "coloring": UNORDERED, "query": "mono-ipath",
                         "k": 1, "color": 0, "budget": 100_000},
                        _path_check, _path_trial, _path_revalidate),
    "ramsey-scan": Kind({"n_max": 5, "t": 2, "L": 3, "mode": "exhaustive", "flavor": INCREASING,
                         "samples": 1000},
                        _scan_check, _scan_trial, _scan_revalidate, single=True),
    "branch": Kind({"k": 16, "depth": 16}, _branch_check, _branch_trial, _branch_revalidate),
    "forcing-validate": Kind({"condition": None, "size": 6, "max_color": 12, "flavor": WALK},
                             _validate_check, _validate_trial, _validate_revalidate),
    "forcing-extend": Kind({"labels": None, "size": 10, "span": 100, "flavor": INJECTIVE,
                            "formula": CORRECTED},
                           _extend_check, _extend_trial, _extend_revalidate),
    "forcing-amalgamate": Kind({"condition": None, "delta": 0, "max_size": 6, "span": 40,
                                "flavor": INJECTIVE},
                               _amalg_check, _amalg_trial, _amalg_revalidate),
    "forcing-generic": Kind({"n": 32, "flavor": INJECTIVE, "bound": 8, "samples": 10_000},
                            _generic_check, _generic_trial, _generic_revalidate),
    "forcing-ccc": Kind({"root": [2, 5], "low": 7, "max_size": 6, "count": 100, "span": 1000,
                         "disjoint": True, "flavor": INJECTIVE},
                        _ccc_check, _ccc_trial, _ccc_revalidate),
    "polarized-build": Kind(dict(_POL), _pol_check, _build_trial, _recompute(_build_trial)),
    "polarized-verify": Kind(dict(_POL), _pol_check, _verify_trial, _verify_revalidate),
    "polarized-descent": Kind({**_POL, "s": 9, "samples": 50}, _pol_s_check, _descent_trial,
                              _recompute(_descent_trial)),
    "polarized-glue": Kind({**_POL, "s": 9, "samples": 10}, _pol_s_check, _glue_trial,
                           _recompute(_glue_trial)),
}


# -- configs and reports --------------------------------------------------

@dataclass
class ExperimentConfig:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    trials: int = 1
    workers: int = 1
    out: str | None = None
    format: str = "json"
    expect_exit: int | None = None
    note: str = ""

    def resolved(self) -> dict:
        """Parameters with defaults filled in, after validation."""
        if self.kind not in KINDS:
            raise ConfigInvalid(f"unknown kind {self.kind!r}; expected one of {sorted(KINDS)}")
        for name in ("seed", "trials", "workers"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < (0 if name == "seed" else 1):
                raise ConfigInvalid(f"{name} must be a {'non-negative' if name == 'seed' else 'positive'} integer")
        if self.format not in FORMATS:
            raise ConfigInvalid(f"format must be one of {FORMATS}")
        kind = KINDS[self.kind]
        if not isinstance(self.params, Mapping):
            raise ConfigInvalid("params must be an object")
        params = _defaults(self.params, kind.defaults)
        kind.check(params)
        return params

    def n_trials(self) -> int:
        return 1 if KINDS[self.kind].single else self.trials

    def echo(self) -> dict:
        return {"kind": self.kind, "params": self.resolved(), "seed": self.seed, "trials": self.n_trials()}

    @classmethod
    def from_dict(cls, data: Mapping) -> "ExperimentConfig":
        allowed = {"kind", "params", "seed", "trials", "workers", "out", "format", "expect_exit", "note"}
        if not isinstance(data, Mapping):
            raise ConfigInvalid("config must be a JSON object")
        unknown = set(data) - allowed
        if unknown:
            raise ConfigInvalid(f"unknown config keys {sorted(unknown)}")
        if "kind" not in data:
            raise ConfigInvalid("config has no kind")
        return cls(**dict(data))

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigInvalid(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)


@dataclass
class Report:
    config: dict
    trials: list[dict]
    elapsed: float = 0.0

    @property
    def violations(self) -> int:
        return sum(not t["ok"] for t in self.trials)

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def aggregates(self) -> dict:
        return {"trials": len(self.trials), "ok": len(self.trials) - self.violations,
                "violations": self.violations}

    def witnesses(self) -> list[dict]:
        return [{"index": t["index"], "seed": t["seed"], "ok": t["ok"], "witness": t["witness"]}
                for t in self.trials if t["witness"] is not None]

    def body(self) -> dict:
        """Everything except wall-clock time."""
        return {"version": __version__, "config": self.config, "aggregates": self.aggregates(),
                "trials": self.trials, "witnesses": self.witnesses()}


def _one(args) -> dict:
    kind, params, seed, index = args
    s = trial_seed(seed, index)
    rec = KINDS[kind].trial(params, s)
    return {"index": index, "seed": s, **rec}


def run(config: ExperimentConfig, workers: int | None = None) -> Report:
    params = config.resolved()
    workers = config.workers if workers is None else workers
    jobs = [(config.kind, params, config.seed, i) for i in range(config.n_trials())]
    start = time.perf_counter()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        trials = [_one(j) for j in jobs]
    trials.sort(key=lambda t: t["index"])
    return Report(config.echo(), trials, time.perf_counter() - start)


def revalidate(report: Report) -> list[bool]:
    """Re-check every trial witness from the trial seed alone."""
    kind = KINDS[report.config["kind"]]
    params = report.config["params"]
    return [bool(kind.revalidate(params, t["seed"], t)) for t in report.trials]


def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.body(), indent=2, sort_keys=False) + "\n").encode()
    if fmt != "csv":
        raise ConfigInvalid(f"format must be one of {FORMATS}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report.config.get("kind") == "ramsey-scan":
        w.writerow(SCAN_COLUMNS)
        for t in report.trials:
            for row in t["result"]["rows"]:
                w.writerow(["" if row[k] is None else row[k] for k in SCAN_COLUMNS])
    else:
        w.writerow(TRIAL_COLUMNS)
        for t in report.trials:
            w.writerow([t["index"], t["seed"], int(t["ok"]), json.dumps(t["result"], sort_keys=True)])
    return buf.getvalue().encode()


def empty_report(kind: str = "branch") -> Report:
    return Report({"kind": kind, "params": {}, "seed": 0, "trials": 0}, [])


__all__ = ["ExperimentConfig", "Report", "KINDS", "run", "emit", "revalidate", "trial_seed",
           "empty_report", "PartitionLabError"]
