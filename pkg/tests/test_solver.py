import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from obstacle_sat import graphs
from obstacle_sat.cnf import CnfInstance, eval_model
from obstacle_sat.encode import encode_outside
from obstacle_sat.solver import BRUTE_MAX_VARS, Outcome, SolverConfig, brute_solve, solve


def pigeonhole(p, h):
    var = lambda i, j: i * h + j + 1  # noqa: E731
    cls = [[var(i, j) for j in range(h)] for i in range(p)]
    for j in range(h):
        for i, k in itertools.combinations(range(p), 2):
            cls.append([-var(i, j), -var(k, j)])
    return CnfInstance(p * h, cls)


def test_trivial_unsat():
    assert solve(CnfInstance(1, [(1,), (-1,)])).outcome is Outcome.UNSAT


def test_empty_instance_is_sat():
    res = solve(CnfInstance(3, []))
    assert res.is_sat and len(res.model) == 4


@pytest.mark.parametrize("p,h,expect", [(3, 2, Outcome.UNSAT), (5, 4, Outcome.UNSAT), (4, 4, Outcome.SAT)])
def test_pigeonhole(p, h, expect):
    inst = pigeonhole(p, h)
    assert solve(inst).outcome is expect
    if p * h <= BRUTE_MAX_VARS:
        assert brute_solve(inst).outcome is expect


def test_duplicate_clauses_tolerated():
    inst = CnfInstance(2, [(1, 2), (1, 2), (2, 1), (-1,), (-2,)])
    assert solve(inst).is_unsat


def test_budget_gives_indeterminate():
    inst = encode_outside(graphs.gyro_bipyramid(4))
    res = solve(inst, SolverConfig(conflict_budget=5))
    assert res.outcome is Outcome.INDETERMINATE
    assert res.stats["conflicts"] <= 6
    res = solve(inst, SolverConfig(time_budget=0.0))
    assert res.outcome is Outcome.INDETERMINATE


def test_stats_and_determinism():
    inst = pigeonhole(5, 4)
    a, b = solve(inst, SolverConfig(seed=3)), solve(inst, SolverConfig(seed=3))
    assert {k: v for k, v in a.stats.items() if k != "wall_time"} == \
           {k: v for k, v in b.stats.items() if k != "wall_time"}
    assert a.stats["conflicts"] > 0 and a.stats["learnt"] > 0


def test_brute_guard():
    with pytest.raises(ValueError, match="at most"):
        brute_solve(CnfInstance(BRUTE_MAX_VARS + 1, []))


def test_satisfiable_graph_instance_model_checks():
    inst = encode_outside(graphs.cycle(8))
    res = solve(inst)
    assert res.is_sat and eval_model(inst, res.model)[0]


@st.composite
def random_cnf(draw):
    n = draw(st.integers(1, 12))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    cls = draw(st.lists(st.lists(lit, min_size=1, max_size=4), max_size=50))
    return CnfInstance(n, cls)


@settings(max_examples=300)
@given(random_cnf(), st.integers(0, 3))
def test_agrees_with_brute_force(inst, seed):
    res = solve(inst, SolverConfig(seed=seed, random_freq=0.02 * seed))
    ref = brute_solve(inst)
    assert res.outcome is ref.outcome
    if res.is_sat:
        assert eval_model(inst, res.model)[0]


def test_agrees_on_harder_random_3sat():
    # near the 3-SAT threshold, where restarts and clause deletion get exercised
    rng = random.Random(11)
    for _ in range(40):
        n = 20
        cls = [[rng.choice([-1, 1]) * v for v in rng.sample(range(1, n + 1), 3)] for _ in range(86)]
        inst = CnfInstance(n, cls)
        res = solve(inst, SolverConfig(restart_first=5, learnt_ratio=0.05))
        assert res.outcome is brute_solve(inst).outcome
