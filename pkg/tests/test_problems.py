import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuds.instances import gen_random_3sat, gen_random_scp, gen_random_tsp
from fuds.problems import (
    Cnf3Instance,
    Deceptive2D,
    Deceptive2DInstance,
    MaxSat,
    ScpInstance,
    SetCover,
    Tsp,
    TspInstance,
    deceptive2d_evaluate,
    pmx_crossover,
    sat_evaluate,
    scp_cost,
    scp_evaluate,
    scp_repair,
    swap_mutation,
    tsp_evaluate,
    tsp_length,
)

from conftest import TOY_SCP_COST, TOY_SCP_ROWS


# ---------------------------------------------------------------- deceptive 2D

INST = Deceptive2DInstance(0.2, 0.3, 0.1)


@pytest.mark.parametrize(
    "x, y, want",
    [(0.25, 0.35, 4), (0.25, 0.9, 1), (0.9, 0.35, 2), (0.9, 0.9, 3)],
)
def test_deceptive_regions(x, y, want):
    assert deceptive2d_evaluate(x, y, INST) == want


def test_deceptive_boundaries_are_closed():
    assert deceptive2d_evaluate(0.2, 0.3, INST) == 4
    assert deceptive2d_evaluate(0.3, 0.4, INST) == 4
    assert deceptive2d_evaluate(0.3 + 1e-12, 0.4 + 1e-12, INST) == 3


@pytest.mark.parametrize("a, b, d", [(0.95, 0.1, 0.1), (0.1, 0.95, 0.1), (0.1, 0.1, 0.0), (-0.1, 0.1, 0.1)])
def test_deceptive_instance_validation(a, b, d):
    with pytest.raises(ValueError):
        Deceptive2DInstance(a, b, d)


@pytest.mark.parametrize("delta", [0.2, 0.1, 0.05])
def test_deceptive_grid_matches_predicates(delta):
    inst = Deceptive2DInstance(0.3, 0.6, delta)
    g = (np.arange(1000) + 0.5) / 1000
    counts = {1: 0, 2: 0, 3: 0, 4: 0}
    for x in g:
        in1 = inst.a <= x <= inst.a + delta
        for y in g:
            in2 = inst.b <= y <= inst.b + delta
            f = deceptive2d_evaluate(x, y, inst)
            want = 4 if in1 and in2 else 2 if in2 else 1 if in1 else 3
            assert f == want
            counts[f] += 1
    # one grid cell of slack on each side of each strip
    strip = delta * 1000
    assert abs(counts[4] - strip**2) <= 2 * strip + 1
    assert abs(counts[4] / 1e6 - delta**2) < 2 * delta / 1000 + 1e-6


def test_deceptive_operators():
    p = Deceptive2D(INST)
    rng = random.Random(1)
    assert p.f_min == 1 and p.f_max == 4
    changed = {"x": 0, "y": 0}
    for _ in range(2000):
        g = p.random_genome(rng)
        m = p.mutate(g, rng)
        assert (m[0] == g[0]) != (m[1] == g[1])
        changed["x" if m[0] != g[0] else "y"] += 1
        h = p.random_genome(rng)
        assert p.crossover(g, h, rng) == (g[0], h[1])
    assert 850 < changed["x"] < 1150


# ---------------------------------------------------------------- TSP

def test_tsp_three_city_length():
    d = [[0, 0.5, 0.4], [0.5, 0, 0.2], [0.4, 0.2, 0]]
    inst = TspInstance(d)
    assert tsp_length((0, 1, 2), inst) == pytest.approx(1.1)
    assert tsp_evaluate((0, 1, 2), inst) == pytest.approx(1 / 1.1)


def test_tsp_equal_distances():
    n, c = 6, 0.3
    d = np.full((n, n), c)
    np.fill_diagonal(d, 0)
    inst = TspInstance(d)
    rng = random.Random(0)
    for _ in range(20):
        t = list(range(n))
        rng.shuffle(t)
        assert tsp_evaluate(t, inst) == pytest.approx(1 / (n * c))


@pytest.mark.parametrize("tour", [(0, 1, 1), (0, 1), (0, 1, 3), (0, 1, 2, 2)])
def test_tsp_rejects_non_permutations(tour):
    inst = gen_random_tsp(3, 0)
    with pytest.raises(ValueError):
        tsp_evaluate(tour, inst)


@pytest.mark.parametrize(
    "d",
    [
        [[0, 0.5], [0.4, 0]],
        [[0.1, 0.5], [0.5, 0]],
        [[0, 1.5], [1.5, 0]],
        [[0, -0.1], [-0.1, 0]],
        [[0, 0.5, 0.5], [0.5, 0, 0.5]],
    ],
)
def test_tsp_instance_validation(d):
    with pytest.raises(ValueError):
        TspInstance(d)


def test_tsp_bounds_bracket_every_tour():
    p = Tsp(gen_random_tsp(6, 11))
    for perm in itertools.permutations(range(6)):
        assert p.f_min <= p.evaluate(perm) <= p.f_max


def test_pmx_hand_traced_example():
    child = pmx_crossover((1, 2, 3, 4, 5), (3, 4, 5, 1, 2), 1, 3)
    assert child[1:3] == (2, 3)
    assert sorted(child) == [1, 2, 3, 4, 5]
    # 3 -> 5 via the mapping, 2 -> 4
    assert child == (5, 2, 3, 1, 4)


def test_pmx_identities():
    p = (4, 0, 3, 1, 2)
    assert pmx_crossover(p, p, 1, 4) == p
    assert pmx_crossover(p, (0, 1, 2, 3, 4), 0, 5) == p


@pytest.mark.parametrize("cuts", [(2, 2), (3, 1), (-1, 2), (0, 6)])
def test_pmx_rejects_bad_cuts(cuts):
    with pytest.raises(ValueError):
        pmx_crossover((0, 1, 2, 3, 4), (4, 3, 2, 1, 0), *cuts)


def test_pmx_rejects_length_mismatch():
    with pytest.raises(ValueError):
        pmx_crossover((0, 1, 2), (0, 1), 0, 1)


perms = st.integers(2, 30).flatmap(
    lambda n: st.tuples(
        st.permutations(range(n)),
        st.permutations(range(n)),
        st.integers(0, n - 1).flatmap(lambda a: st.tuples(st.just(a), st.integers(a + 1, n))),
    )
)


@settings(max_examples=300, deadline=None)
@given(perms)
def test_pmx_always_yields_permutation(args):
    p1, p2, (c1, c2) = args
    child = pmx_crossover(tuple(p1), tuple(p2), c1, c2)
    assert sorted(child) == list(range(len(p1)))
    assert child[c1:c2] == tuple(p1[c1:c2])
    # outside the segment, p2's value is kept whenever it is not in the segment
    seg = set(p1[c1:c2])
    for i, v in enumerate(p2):
        if not c1 <= i < c2 and v not in seg:
            assert child[i] == v


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 40), st.integers(0, 2**32 - 1))
def test_swap_mutation_and_random_pmx_keep_permutations(n, seed):
    rng = random.Random(seed)
    t = list(range(n))
    rng.shuffle(t)
    m = swap_mutation(tuple(t), rng)
    assert sorted(m) == list(range(n))
    assert sum(a != b for a, b in zip(m, t)) == 2
    rng.shuffle(t)
    c = pmx_crossover(m, tuple(t), rng=rng)
    assert sorted(c) == list(range(n))


# ---------------------------------------------------------------- SCP

def _brute_scp(inst):
    best = None
    for bits in itertools.product([0, 1], repeat=inst.n_cols):
        x = np.array(bits, dtype=bool)
        if inst.is_feasible(x):
            c = scp_cost(x, inst)
            if best is None or c < best:
                best = c
    return best


def test_toy_scp_optimum_by_enumeration(toy_scp):
    assert _brute_scp(toy_scp) == 5
    x = np.zeros(6, dtype=bool)
    x[[0, 3]] = True
    assert scp_evaluate(x, toy_scp) == pytest.approx(1 / 5)


def test_scp_single_column_and_all_columns():
    inst = ScpInstance([[1], [1], [0, 1]], [2, 5])
    x = np.array([False, True])
    assert scp_evaluate(x, inst) == pytest.approx(1 / 5)
    assert scp_evaluate(np.ones(2, dtype=bool), inst) == pytest.approx(1 / 7)


def test_scp_evaluate_rejects_infeasible(toy_scp):
    with pytest.raises(ValueError):
        scp_evaluate(np.zeros(6, dtype=bool), toy_scp)


def test_scp_instance_validation():
    with pytest.raises(ValueError):
        ScpInstance([[0], []], [1, 1])
    with pytest.raises(ValueError):
        ScpInstance([[0], [2]], [1, 1])
    with pytest.raises(ValueError):
        ScpInstance([[0], [1]], [1, 0])


def test_repair_greedy_hand_trace():
    # ratios on the empty cover: col0 = 1/2, col1 = 3/2, col2 = 1/2 -> col0 (lowest index);
    # then only row 1 is open: col1 = 3, col2 = 1 -> col2; nothing is redundant
    inst = ScpInstance([[0, 1], [1, 2], [0, 2]], [1, 3, 1])
    out = scp_repair(np.zeros(3, dtype=bool), inst)
    assert out.tolist() == [True, False, True]


def test_repair_fixed_point(toy_scp):
    x = np.zeros(6, dtype=bool)
    x[[0, 3]] = True
    assert scp_repair(x, toy_scp).tolist() == x.tolist()


def test_repair_drops_expensive_redundant_columns_first(toy_scp):
    out = scp_repair(np.ones(6, dtype=bool), toy_scp)
    assert toy_scp.is_feasible(out)
    # column 4 (cost 6) goes first, then 1 (cost 4), then 3 before 2 at cost 3
    assert np.flatnonzero(out).tolist() == [0, 2, 5]


def _assert_redundancy_free(x, inst):
    assert inst.is_feasible(x)
    for j in np.flatnonzero(x):
        y = x.copy()
        y[j] = False
        assert not inst.is_feasible(y)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 12),
    st.integers(1, 15),
    st.floats(0.05, 0.6),
    st.integers(0, 10**6),
    st.data(),
)
def test_repair_yields_feasible_redundancy_free(m, n, density, seed, data):
    inst = gen_random_scp(m, n, density, seed, max_cost=20)
    x = np.array(data.draw(st.lists(st.booleans(), min_size=n, max_size=n)), dtype=bool)
    out = scp_repair(x, inst)
    _assert_redundancy_free(out, inst)
    # repair only ever removes columns that were already selected or added by greedy
    assert scp_repair(out, inst).tolist() == out.tolist()


def test_scp_operators_keep_covers_repaired():
    inst = gen_random_scp(30, 60, 0.1, 3)
    p = SetCover(inst)
    rng = random.Random(2)
    a, b = p.random_genome(rng), p.random_genome(rng)
    for _ in range(50):
        c = p.crossover(a, b, rng)
        _assert_redundancy_free(c, inst)
        a, b = b, p.mutate(c, rng)
        _assert_redundancy_free(b, inst)
        assert p.f_min <= p.evaluate(b) <= p.f_max


# ---------------------------------------------------------------- SAT

def test_sat_two_clause_score_of_one():
    a, b, c, e, f = 1, 2, 3, 4, 5
    inst = Cnf3Instance(5, [[a, b, -c], [a, -e, f]])
    assign = np.array([False, True, True, True, False])
    assert sat_evaluate(assign, inst) == 1


def test_sat_single_clause():
    inst = Cnf3Instance(3, [[1, -2, 3]])
    assert sat_evaluate(np.array([False, False, False]), inst) == 1
    assert sat_evaluate(np.array([False, True, False]), inst) == 0


def _sat_oracle(assign, clauses):
    return sum(any(assign[abs(l) - 1] == (l > 0) for l in c) for c in clauses)


def test_sat_matches_clause_by_clause_oracle():
    inst = gen_random_3sat(20, 50, 9)
    gen = np.random.default_rng(4)
    for _ in range(100):
        a = gen.random(20) < 0.5
        assert sat_evaluate(a, inst) == _sat_oracle(a.tolist(), inst.clauses)
        assert MaxSat(inst).evaluate(a) == sat_evaluate(a, inst)


def test_sat_short_clauses_are_flagged():
    inst = Cnf3Instance(3, [[1], [2, -3], [1, 2, 3]])
    assert inst.short_clauses == 2
    assert sat_evaluate(np.array([True, False, True]), inst) == 2


@pytest.mark.parametrize("clauses", [[[]], [[1, 2, 3, 4]], [[0, 1]], [[4]]])
def test_sat_instance_validation(clauses):
    with pytest.raises(ValueError):
        Cnf3Instance(3, clauses)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_sat_order_invariant(seed):
    inst = gen_random_3sat(15, 40, seed)
    rng = random.Random(seed)
    shuffled = list(inst.clauses)
    rng.shuffle(shuffled)
    other = Cnf3Instance(15, shuffled)
    a = np.array([rng.random() < 0.5 for _ in range(15)])
    assert sat_evaluate(a, inst) == sat_evaluate(a, other)


def test_sat_operators():
    p = MaxSat(gen_random_3sat(30, 100, 1))
    rng = random.Random(3)
    g, h = p.random_genome(rng), p.random_genome(rng)
    m = p.mutate(g, rng)
    assert (m != g).sum() == 1
    c = p.crossover(g, h, rng)
    assert np.all((c == g) | (c == h))
    assert p.f_min == 0 and p.f_max == 100


def test_evaluate_is_pure():
    rng = random.Random(0)
    for p in [Deceptive2D(INST), Tsp(gen_random_tsp(9, 1)), SetCover(ScpInstance(TOY_SCP_ROWS, TOY_SCP_COST)),
              MaxSat(gen_random_3sat(10, 30, 2))]:
        g = p.random_genome(rng)
        assert p.evaluate(g) == p.evaluate(g)
