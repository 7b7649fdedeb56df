import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from partition_lab.coloring import longest_increasing_subsequence, make_coloring
from partition_lab.errors import AlreadyPresent, BadColors, BadH, NoRoom, SearchTooLarge, ValidityLost
from partition_lab.forcing import (
    EMPTY,
    INJECTIVE,
    PLUS_ONE,
    WALK,
    Condition,
    DenseSpec,
    amalgamate,
    amalgamate_pair,
    build_generic_coloring,
    ccc_experiment,
    check_sequence_witness,
    condition_from_coloring,
    copy_below,
    corollary_check,
    corollary_scan,
    density_color,
    extend_with_vertex,
    extension_chain,
    is_valid,
    isomorphic_family,
    mixed_color,
    order_pattern,
    project_below,
)
from partition_lab.oracles import injective_violation, walk_violation_naive, walk_violation_states

Q258 = Condition([2, 5, 8], {(2, 5): 4, (2, 8): 5, (5, 8): 3})


def _cond(u, colors):
    return Condition(u, dict(zip(itertools.combinations(u, 2), colors)))


def random_condition(rng, max_size=6, max_color=12):
    size = int(rng.integers(0, max_size + 1))
    u = sorted(int(x) for x in rng.choice(20, size=size, replace=False))
    return _cond(u, [int(rng.integers(1, max_color + 1)) for _ in range(size * (size - 1) // 2)])


# -- validity -------------------------------------------------------------

@pytest.mark.parametrize("cond", [EMPTY, Condition([4])])
def test_vacuous(cond):
    assert is_valid(cond, WALK).valid and is_valid(cond, INJECTIVE).valid


def test_walk_invalid_triangle():
    cond = Condition([0, 1, 2], {(0, 1): 3, (1, 2): 3, (0, 2): 4})
    v = is_valid(cond, WALK)
    assert not v.valid
    assert v.witness["sequence"] == [0, 1, 2]
    assert check_sequence_witness(cond, v.witness, WALK)


def test_walk_valid_triangle():
    assert is_valid(Condition([0, 1, 2], {(0, 1): 3, (1, 2): 4, (0, 2): 5}), WALK).valid


def test_color_zero_rejected():
    with pytest.raises(BadColors):
        is_valid(Condition([0, 1], {(0, 1): 0}))


def test_injective_search_limit():
    u = list(range(13))
    cond = _cond(u, [1] * 78)
    assert not is_valid(cond, WALK).valid
    with pytest.raises(SearchTooLarge):
        is_valid(cond, INJECTIVE)


def test_walk_oracles_exhaustive_three():
    for colors in itertools.product(range(1, 6), repeat=3):
        cond = _cond([0, 1, 2], colors)
        got = is_valid(cond, WALK).valid
        assert got == (walk_violation_naive(cond) is None) == (not walk_violation_states(cond))


def test_walk_criterion_random():
    rng = np.random.default_rng(5)
    for _ in range(1500):
        cond = random_condition(rng)
        w = is_valid(cond, WALK)
        assert w.valid == (not walk_violation_states(cond))
        if not w.valid:
            assert check_sequence_witness(cond, w.witness, WALK)


def test_injective_matches_permutation_oracle():
    rng = np.random.default_rng(6)
    for _ in range(600):
        cond = random_condition(rng, max_size=6, max_color=7)
        v = is_valid(cond, INJECTIVE)
        assert v.valid == (injective_violation(cond) is None)
        if not v.valid:
            assert check_sequence_witness(cond, v.witness, INJECTIVE)
        if is_valid(cond, WALK).valid:
            assert v.valid


def test_witness_checker_rejects_fakes():
    cond = Condition([0, 1, 2], {(0, 1): 3, (1, 2): 3, (0, 2): 4})
    assert not check_sequence_witness(cond, {"sequence": [0, 1], "v": [0, 1], "max_color": 3}, WALK)
    assert not check_sequence_witness(cond, {"sequence": [0, 1, 0], "v": [0, 1], "max_color": 3}, INJECTIVE)


def test_json_round_trip():
    cond = Q258.with_flavor(WALK)
    assert Condition.from_json(cond.to_json()) == cond
    assert Condition.from_json(cond.to_json()).flavor == WALK


# -- extension ------------------------------------------------------------

def test_extend_empty():
    q = extend_with_vertex(EMPTY, 7)
    assert q.u == (7,) and q.edges() == []


def test_extend_two_new_edges():
    q = extend_with_vertex(Condition([5, 9], {(5, 9): 7}), 3, WALK)
    assert q.color(3, 5) == 4 and q.color(3, 9) == 5
    assert is_valid(q, WALK).valid


def test_extend_corrected_and_plus_one():
    p = Condition([8])
    assert extend_with_vertex(p, 5).color(5, 8) == 3
    with pytest.raises(ValidityLost) as info:
        extend_with_vertex(p, 5, INJECTIVE, PLUS_ONE)
    assert info.value.candidate.color(5, 8) == 2
    assert info.value.verdict.witness["sequence"] == [5, 8]


def test_extend_already_present():
    with pytest.raises(AlreadyPresent):
        extend_with_vertex(Condition([3]), 3)


def test_density_color():
    assert density_color(1, 0) == 3
    assert density_color(1, 0, PLUS_ONE) == 2
    assert DenseSpec(5).__contains__(extend_with_vertex(EMPTY, 5))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 40), min_size=1, max_size=7, unique=True))
def test_extension_keeps_both_flavors(labels):
    for flavor in (INJECTIVE, WALK):
        q, log = extension_chain(labels, flavor)
        assert set(q.u) == set(labels) and len(log) == len(labels)
        assert walk_violation_states(q) is False
        if len(q) <= 6:
            assert injective_violation(q) is None


# -- projection and copies ------------------------------------------------

def test_project_below():
    assert project_below(Q258, 100) == Q258
    assert project_below(Q258, 0) == EMPTY
    p = project_below(Q258, 7)
    assert p.u == (2, 5) and p.color(2, 5) == 4


def test_copy_below_canonical():
    p = copy_below(Q258, 7)
    assert p.u == (2, 5, 6)
    assert p.color(2, 5) == 4 and p.color(5, 6) == 3 and p.color(2, 6) == 5
    assert copy_below(Q258, 9) == Q258


def test_copy_below_no_room():
    with pytest.raises(NoRoom):
        copy_below(Q258, 6)


def test_copy_below_bad_h():
    with pytest.raises(BadH):
        copy_below(Q258, 7, {2: 2, 5: 5, 8: 4})
    with pytest.raises(BadH):
        copy_below(Q258, 7, {2: 2, 5: 4, 8: 6})
    assert copy_below(Q258, 7, {2: 2, 5: 5, 8: 6}) == copy_below(Q258, 7)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 30), min_size=1, max_size=6, unique=True), st.integers(0, 31))
def test_projection_and_copy_keep_validity(labels, delta):
    q, _ = extension_chain(labels, WALK)
    assert is_valid(project_below(q, delta), WALK).valid
    try:
        p = copy_below(q, delta)
    except NoRoom:
        return
    assert order_pattern(p) == order_pattern(q)
    assert is_valid(p, WALK).valid == is_valid(q, WALK).valid


def test_order_pattern():
    p = order_pattern(Condition([5, 9], {(5, 9): 7}))
    assert p == Condition([0, 1], {(0, 1): 7})
    assert order_pattern(p) == p
    a, _ = extension_chain([10, 3, 7])
    b, _ = extension_chain([110, 103, 107])
    assert order_pattern(a) == order_pattern(b)


# -- amalgamation ---------------------------------------------------------

def test_amalgamate_trivial():
    r, p = amalgamate(Q258, 20)
    assert r == Q258 == p


def test_amalgamate_injective_example():
    r, p = amalgamate(Q258, 7, INJECTIVE)
    assert p.u == (2, 5, 6) and r.u == (2, 5, 6, 8)
    assert r.color(6, 8) == 26 == mixed_color(4, 2, 3)
    assert r.extends(Q258) and r.extends(p)
    assert not is_valid(r, WALK).valid


def test_amalgamate_walk_counterexample():
    with pytest.raises(ValidityLost) as info:
        amalgamate(Q258, 7, WALK)
    w = info.value.verdict.witness
    assert w["sequence"] == [5, 6, 5, 8]
    assert w["max_color"] == 3 and len(w["v"]) == 3
    assert check_sequence_witness(info.value.candidate, w, WALK)


def test_amalgamate_injective_counterexample():
    # every edge of the bad sequence belongs to q or to its copy, so the
    # failure is not about the mixed colors
    q = _cond([0, 4, 5, 6], [5, 3, 4, 6, 7, 5])
    assert is_valid(q, WALK).valid
    with pytest.raises(ValidityLost) as info:
        amalgamate(q, 4, INJECTIVE)
    cand, w = info.value.candidate, info.value.verdict.witness
    assert check_sequence_witness(cand, w, INJECTIVE)
    assert w["sequence"] == [1, 2, 3, 0, 4, 5, 6]
    p = copy_below(q, 4)
    seq = w["sequence"]
    own = [(a, b) for a, b in zip(seq, seq[1:])
           if {a, b} <= set(p.u) or {a, b} <= set(q.u)]
    assert len(own) == len(seq) - 1
    assert injective_violation(cand) is not None


def test_amalgamate_pair_disagreement():
    with pytest.raises(ValueError):
        amalgamate_pair(Condition([1, 2], {(1, 2): 3}), Condition([1, 2], {(1, 2): 4}))


# -- ccc ------------------------------------------------------------------

def test_ccc_disjoint_copies():
    base = Condition([0, 1, 2], {(0, 1): 3, (1, 2): 4, (0, 2): 5})
    copies = [Condition([x + 10 * k for x in base.u], {(a + 10 * k, b + 10 * k): c for a, b, c in base.edges()})
              for k in range(1, 4)]
    rep = ccc_experiment(copies)
    assert rep.found and rep.root == ()
    assert is_valid(rep.extension, INJECTIVE).valid
    assert rep.extension.extends(copies[rep.pair[0]]) and rep.extension.extends(copies[rep.pair[1]])


def test_ccc_single():
    rep = ccc_experiment([Q258])
    assert not rep.found and rep.reason == "no pair"


def test_ccc_root_2_5():
    fam = isomorphic_family([2, 5], [0], 100, 3, 7, 1000)
    assert len({order_pattern(q) for q in fam}) == 1
    rep = ccc_experiment(fam, seed=0)
    assert rep.found and rep.root == (2, 5)


def test_ccc_failing_script_fails_for_every_pair():
    fam = isomorphic_family([2, 5], [1, 2, 3, 0], 40, 0, 7, 1000)
    rep = ccc_experiment(fam)
    assert not rep.found and rep.pairs_examined == 40 * 39 // 2
    assert len(rep.failures) > 10


def test_family_checks():
    with pytest.raises(ValueError):
        isomorphic_family([2, 5], [0, 0], 3, 0, 7, 100)
    with pytest.raises(ValueError):
        isomorphic_family([2, 5], [0], 3, 0, 4, 100)


# -- generic coloring and corollary ---------------------------------------

def test_generic_small():
    assert build_generic_coloring(0).coloring.n == 0
    g = build_generic_coloring(2, order_seed=9)
    assert g.coloring(0, 1) == 3


def test_generic_32():
    g = build_generic_coloring(32, order_seed=1)
    assert g.flavor == WALK
    assert all(DenseSpec(a).__contains__(g.condition) for a in range(32))
    assert is_valid(g.condition, INJECTIVE).valid
    assert corollary_check(g.coloring, 8, trials=2000, seed=0).valid


def test_corollary_bound_three():
    g = build_generic_coloring(6, order_seed=2)
    stats = corollary_scan(g.coloring, 3)
    assert stats["exhaustive"] and stats["witness"] is None
    assert stats["lis_at_least_bound"] == 0


def test_corollary_large_bound_is_path_bound():
    g = build_generic_coloring(6, order_seed=3)
    assert corollary_check(g.coloring, 10 ** 6).valid == is_valid(g.condition, INJECTIVE).valid


def test_corollary_corrupted():
    g = build_generic_coloring(6, order_seed=4)
    m = g.coloring.matrix.copy()
    m[0, 1] = m[1, 0] = 1
    bad = make_coloring(6, {(a, b): int(m[a, b]) for a, b in itertools.combinations(range(6), 2)})
    v = corollary_check(bad, 8)
    assert not v.valid
    assert check_sequence_witness(condition_from_coloring(bad), v.witness, INJECTIVE)
    seq = v.witness["sequence"]
    assert longest_increasing_subsequence(seq) >= v.witness["max_color"]
