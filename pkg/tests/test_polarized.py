import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from partition_lab.coloring import verify_rectangle
from partition_lab.errors import BadLadder, Infeasible, NotBelow
from partition_lab.oracles import T_brute, gamma_reference
from partition_lab.polarized import (
    CYCLIC,
    PERMUTED,
    GammaTable,
    PolarizedInstance,
    build_gamma,
    build_instance,
    check_star,
    coloring_from_gamma,
    compute_T,
    default_ladder,
    derive_d,
    descent_bound_check,
    gamma_violations,
    glue_ipath,
    link_eta,
    refute_zero_rectangle,
    row_ones,
)


def _setup(N=40, M=8, mode=PERMUTED, seed=0, cof=None):
    inst = build_instance(N, M, cof=cof, enum_mode=mode, seed=seed)
    table = build_gamma(inst)
    return inst, table, coloring_from_gamma(inst, table)


def test_small_instance():
    inst = build_instance(6, 3, cof=(1, 2, 3), seed=0)
    assert len(set(inst.family)) == 6 and all(len(b) == 3 for b in inst.family)
    assert PolarizedInstance.from_dict(inst.to_dict()) == inst


def test_infeasible_and_ladder():
    with pytest.raises(Infeasible):
        build_instance(4, 4)
    with pytest.raises(BadLadder):
        build_instance(6, 3, cof=(2, 2, 3))
    with pytest.raises(BadLadder):
        build_instance(6, 3, cof=(1, 2))
    assert default_ladder(8) == (1, 2, 4, 8)
    assert default_ladder(12) == (1, 2, 4, 8, 12)


def test_cyclic_enumeration():
    inst = build_instance(10, 3, seed=0)
    assert inst.ord(5, 7) == 2 and inst.sub(5, 7) == 2


def test_first_pick():
    inst, table, c = _setup(6, 3, CYCLIC, cof=(1, 2, 3))
    assert table.get(1, 0) == min(inst.family[0])
    assert c(1, min(inst.family[0])) == 1
    assert row_ones(c, 0) == set()
    assert not any(a == 0 for a, _ in table.entries)


@pytest.mark.parametrize("mode, seed", [(CYCLIC, 0), (CYCLIC, 1), (PERMUTED, 0), (PERMUTED, 5)])
def test_gamma_matches_reference(mode, seed):
    inst = build_instance(18, 4, enum_mode=mode, seed=seed)
    table = build_gamma(inst)
    entries, failures = gamma_reference(inst)
    assert dict(table.entries) == entries and set(table.failures) == failures


def test_row_sums_and_full_first_row():
    inst, table, c = _setup()
    for a in range(inst.N):
        assert len(row_ones(c, a)) == len(table.row(a)) <= inst.M
    if not any(a == 1 for a, _ in table.failures):
        assert len(row_ones(c, 1)) == inst.M


def test_star_valid_and_corrupted():
    inst, table, _ = _setup()
    assert check_star(inst, table).valid
    assert check_star(inst, GammaTable(inst.N, inst.M, {}, frozenset())).valid
    alpha = next(a for a in range(2, inst.N)
                 if table.get(a, 1) is not None and table.get(inst.ord(a, 0), 1) is not None)
    bad = table.with_entry(alpha, 1, table.get(inst.ord(alpha, 0), 1))
    v = check_star(inst, bad)
    assert not v.valid and v.witness["alpha"] == alpha


def test_refute_zero_rectangle():
    inst, table, c = _setup(mode=CYCLIC)
    hits = 0
    for beta in range(inst.N):
        A = range(beta + 1, inst.N)
        cell = refute_zero_rectangle(inst, table, A, beta)
        if cell is None:
            continue
        hits += 1
        alpha, g = cell
        assert alpha > beta and g in inst.family[beta] and c(alpha, g) == 1
        assert not verify_rectangle(c, A, inst.family[beta], 0).valid
    assert hits > 0
    assert refute_zero_rectangle(inst, table, range(0, 4), 4) is None
    assert refute_zero_rectangle(inst, table, {1}, 0) == (1, table.get(1, 0))


def test_compute_T():
    inst, table, c = _setup()
    assert compute_T(c, [3]) == row_ones(c, 3)
    rng = np.random.default_rng(0)
    for _ in range(50):
        S = sorted(int(x) for x in 1 + rng.choice(inst.N - 1, size=3, replace=False))
        assert compute_T(c, S) == T_brute(c, S)


def test_link_eta():
    inst = build_instance(10, 3, seed=0)
    assert link_eta(inst, 2, 5) == 2
    with pytest.raises(NotBelow):
        link_eta(inst, 5, 5)
    fam = build_instance(10, 3, seed=0).family
    perm = PolarizedInstance(10, 3, (1, 2, 3), fam, PERMUTED, 0, {5: (3, 0, 4, 1, 2)})
    assert link_eta(perm, 4, 5) == 2 and perm.ord(5, 2) == 4


def test_derive_d_ladder():
    fam = build_instance(12, 8, seed=0).family
    perms = {9: tuple([1, 2, 3, 4, 5, 6, 7, 8, 0])}
    inst = PolarizedInstance(12, 8, (4, 8), fam, PERMUTED, 0, perms)
    d, labels = derive_d(inst, [0, 1, 5, 9])
    # link_eta(5, 9) = 4 and link_eta(0, 9) = 8 under this permutation
    assert labels == (0, 1, 5, 9)
    assert d(2, 3) == 1 and d(0, 3) == 2
    assert link_eta(inst, 0, 1) == 0 and d(0, 1) == 0


def test_descent_examples():
    inst, table, c = _setup()
    rng = np.random.default_rng(1)
    for _ in range(100):
        S = sorted(int(x) for x in 1 + rng.choice(inst.N - 1, size=inst.M + 1, replace=False))
        v = descent_bound_check(inst, table, c, S)
        assert v.valid, v


def test_descent_vacuous():
    inst, table, c = _setup()
    S = next(S for S in itertools.combinations(range(1, inst.N), 2) if not compute_T(c, S))
    assert descent_bound_check(inst, table, c, list(S)).valid


def test_descent_corrupted_fails():
    # plant gamma(a, e) into row b at a position p >= e above the link
    inst, table, c = _setup(N=30, M=6, mode=PERMUTED)
    for a, b in itertools.combinations(range(1, inst.N), 2):
        eta = link_eta(inst, a, b)
        for e, g in table.row(a):
            for p in range(max(e, eta + 1), inst.M):
                bad = table.with_entry(b, p, g)
                bad_c = coloring_from_gamma(inst, bad)
                if len(bad.positions(b, g)) != 1 or len(bad.positions(a, g)) != 1:
                    continue
                v = descent_bound_check(inst, bad, bad_c, [a, b])
                assert not v.valid and v.witness["clause"] == "i"
                assert not check_star(inst, bad).valid
                return
    pytest.fail("no corruption site found")


def test_glue_reports():
    inst, table, c = _setup()
    rng = np.random.default_rng(2)
    for _ in range(10):
        S = sorted(int(x) for x in 1 + rng.choice(inst.N - 1, size=10, replace=False))
        g = glue_ipath(inst, table, c, S)
        assert g["valid"] and g["T_S_subset_T_S0"]
        assert set(g["S0"]) <= set(S)


def test_glue_monochromatic():
    inst = build_instance(20, 8, cof=(8,), seed=0)
    table = build_gamma(inst)
    c = coloring_from_gamma(inst, table)
    S = [1, 2, 3, 4, 5]
    g = glue_ipath(inst, table, c, S)
    assert g["S0"] == S and g["color"] == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 30), st.integers(2, 6), st.sampled_from([CYCLIC, PERMUTED]), st.integers(0, 1000))
def test_construction_invariants(N, M, mode, seed):
    if M > N or __import__("math").comb(N, M) < N:
        return
    inst, table, c = _setup(N, M, mode, seed)
    assert not gamma_violations(inst, table)
    assert check_star(inst, table).valid
    for (a, e), g in table.entries.items():
        assert c(a, g) == 1
    d_ok = True
    if N > 3:
        S = list(range(1, min(N, 6)))
        d, labels = derive_d(inst, S)
        for i, j in itertools.combinations(range(len(labels)), 2):
            eta = link_eta(inst, labels[i], labels[j])
            n = d(i, j)
            d_ok &= (n == len(inst.cof) or eta < inst.cof[n]) and (n == 0 or eta >= inst.cof[n - 1])
    assert d_ok
