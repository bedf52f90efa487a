from fractions import Fraction

import pytest

from alcove.catalog import affine, skew_a2, skew_affine_a2, skew_start
from alcove.errors import DiamondFailure, IllegalMove, NodeCapExceeded, NoSinkReached, NotExtending
from alcove.game import explore_plays
from alcove.strategy import (
    check_diamond,
    check_sinks,
    iota,
    iota_automorphism,
    kappa,
    omega,
    optimality,
    reverse_symmetry,
    rho,
    run_substrategy,
    shifted_game_equivalence,
    strategy_tree,
)


def test_rho():
    assert rho(affine("A~2"), 0) == (-2, 1, 1)
    assert rho(affine("A~3"), 0) == (-3, 1, 1, 1)
    d4 = affine("D~4")
    for tip in d4.extending:
        v = rho(d4, tip)
        assert v[tip] == -5 and sorted(v) == [-5, 1, 1, 1, 1]
    with pytest.raises(NotExtending):
        rho(d4, d4.delta.index(2))


def test_substrategy_a2():
    run = run_substrategy(affine("A~2"), (-2, 1, 1))
    assert run.length == 1 and run.record.end == (2, -1, -1) and run.end_vertex == 0


def test_substrategy_a3():
    run = run_substrategy(affine("A~3"), rho(affine("A~3"), 0))
    assert run.length == 4
    assert run.record.end == (-1, -1, 3, -1) and run.end_vertex == 2


@pytest.mark.parametrize("policy", ["min-index", "most-negative", "random:1"])
def test_skew_affine_has_no_sink(policy):
    with pytest.raises(NoSinkReached):
        run_substrategy(skew_affine_a2(), skew_start(), policy, step_cap=500)


def test_skew_affine_play_tree_unbounded():
    with pytest.raises(NodeCapExceeded):
        explore_plays(skew_affine_a2(), skew_start(), -1, node_cap=300)


def test_iota_examples():
    assert iota(affine("A~2")).is_trivial
    assert dict(iota(affine("A~3")).mapping) == {0: 2, 1: 3, 2: 0, 3: 1}
    assert dict(iota(affine("C~2")).mapping) == {0: 2, 2: 0}


@pytest.mark.parametrize("name", ["A~4", "A~5", "B~3", "B~4", "C~3", "D~4", "D~5", "G~2", "F~4"])
def test_iota_table_and_automorphism(name):
    d = affine(name)
    inv = iota(d)
    sigma = iota_automorphism(d, inv)
    assert sigma in d.automorphisms
    for i, j in inv.mapping:
        assert inv(j) == i


@pytest.mark.parametrize("name, sinks, size", [("A~2", 3, 6), ("A~3", 4, 24), ("C~2", 2, 8)])
def test_sinks(name, sinks, size):
    r = check_sinks(affine(name))
    assert len(r.sinks) == sinks and r.orbit_size == size


def test_sinks_a2_exact():
    r = check_sinks(affine("A~2"))
    assert set(r.sinks) == {(2, -1, -1), (-1, 2, -1), (-1, -1, 2)}


def test_diamond_even():
    g = affine("A~3").graph
    r = check_diamond(g, (3, -2, 1, -2), 1, 3)
    assert r.order == 2 and (r.meet[1], r.meet[3]) == (2, 2)
    assert r.paths[0].length == r.paths[1].length == 2


def test_diamond_odd():
    g = affine("A~2").graph
    r = check_diamond(g, (-2, -2, 4), 0, 1)
    assert r.order == 3 and (r.meet[0], r.meet[1]) == (2, 2)
    assert r.paths[0].length == 3


def test_diamond_skew_fails():
    with pytest.raises(DiamondFailure):
        check_diamond(skew_a2(), (-2, -2), 0, 1)


def test_diamond_precondition():
    with pytest.raises(IllegalMove):
        check_diamond(affine("A~2").graph, (-2, 1, 1), 0, 1)


def test_kappa():
    assert kappa(affine("A~2")) == Fraction(3, 2)
    assert kappa(affine("A~3")) == Fraction(4, 3)
    assert kappa(affine("A~1")) == Fraction(3, 2)
    assert 1 < kappa(affine("A~2"), "reflection") < kappa(affine("A~2"))


def test_shifted_a2():
    d = affine("A~2")
    k = Fraction(3, 2)
    r = shifted_game_equivalence(d, k=k)
    assert r.shifted_start == (Fraction(-1, 2), 1, 1)
    assert r.shifted_end == (Fraction(1, 2),) * 3
    want = tuple((k - 1) * a + b for a, b in zip(rho(d, 0), omega(3, 0, k)))
    assert r.shifted_end == want
    assert r.end == (2, -1, -1)


def test_shifted_a3():
    r = shifted_game_equivalence(affine("A~3"))
    assert r.max_length == 4 and r.end_vertex == 2


@pytest.mark.parametrize("name", ["A~3", "B~3", "D~4", "G~2"])
def test_tree_reverse_optimality(name):
    d = affine(name)
    for i in d.extending:
        tr = strategy_tree(d, i)
        assert tr.exhaustive
        assert tr.end_vertex == iota(d)(i)
        rev = reverse_symmetry(d, i)
        assert rev.end_vertex == i
    length, best = optimality(d)
    assert length == best


def test_iota_from_every_vertex_agrees():
    d = affine("A~5")
    for i in d.extending:
        assert run_substrategy(d, rho(d, i)).end_vertex == iota(d)(i)
