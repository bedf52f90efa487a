import pytest

from alcove.catalog import affine
from alcove.errors import GateExceeded
from alcove.polynomial import IntPolynomial, product
from alcove.poset import (
    build_poset,
    curious_identity,
    exponent_assignment,
    hilbert_closed_form,
    hilbert_empirical,
    hypercube_dual,
    interval_isomorphism,
    poset_size,
    top_degree_report,
    verify_identities,
)
from alcove.strategy import iota, rho

P = IntPolynomial


def test_a2_poset():
    p = build_poset(affine("A~2"))
    assert len(p.nodes) == 2 and len(p.edges) == 1
    assert hilbert_empirical(p) == P((1, 1))


def test_a3_poset():
    d = affine("A~3")
    p = build_poset(d)
    assert len(p.nodes) == 6
    assert p.rank_counts() == [1, 1, 2, 1, 1]
    assert hilbert_empirical(p) == P((1, 1, 2, 1, 1))
    assert p.nodes[p.bottom] == rho(d, 0)
    assert p.nodes[p.top] == tuple(-x for x in rho(d, iota(d)(0)))


def test_c2_chain():
    p = build_poset(affine("C~2"))
    assert p.rank_counts() == [1, 1, 1, 1]
    assert len(p.edges) == 3


def test_every_cover_raises_rank_by_one():
    for name in ("B~3", "D~4", "G~2"):
        p = build_poset(affine(name))
        assert all(p.ranks[b] == p.ranks[a] + 1 for a, b, _ in p.edges)


def test_closed_forms():
    assert hilbert_closed_form(affine("A~2")) == P((1, 1))
    g2 = product([P.geometric(2, 5), P.geometric(6)])
    assert hilbert_closed_form(affine("G~2")) == g2
    assert hilbert_closed_form(affine("C~2")) == P((1, 1, 1, 1))


def test_assignments():
    a2 = exponent_assignment(affine("A~2"))
    assert sorted(tuple(m for _, m in a) for a in a2) == [(1, 2), (2, 1)]
    (g2,) = exponent_assignment(affine("G~2"))
    lengths = dict(zip(affine("G~2").finite_vertices, affine("G~2").translation_root_sums))
    assert {lengths[v]: m for v, m in g2} == {10: 5, 6: 1}
    (b3,) = exponent_assignment(affine("B~3"))
    lengths = dict(zip(affine("B~3").finite_vertices, (5, 8, 9)))
    assert {lengths[v]: m for v, m in b3} == {5: 5, 8: 1, 9: 3}


@pytest.mark.parametrize("name, left, ext", [("A~2", 12, 3), ("G~2", 60, 1), ("B~3", 720, 2)])
def test_curious_identity_values(name, left, ext):
    d = affine(name)
    assert len(d.extending) == ext
    assert curious_identity(d) == (left, left)


@pytest.mark.parametrize("name", ["A~1", "A~4", "B~4", "C~4", "D~5", "G~2"])
def test_identity_clauses(name):
    r = verify_identities(affine(name))
    assert set(r.clauses) == set("abcde")
    assert all(v == "pass" for v in r.clauses.values())


def test_identities_gate():
    r = verify_identities(affine("E~7"))
    assert r.clauses["a"] == "pass" and r.clauses["b"] == "skipped"


def test_top_degree_report():
    a2 = top_degree_report(affine("A~2"))
    assert a2["bruteForceDegree"] == 1 and a2["tableValue"] == 4 and a2["flagged"]
    a3 = top_degree_report(affine("A~3"))
    assert a3["bruteForceDegree"] == 4 and a3["flagged"]
    for name, degree in [("B~3", 13), ("C~3", 13), ("D~4", 16), ("G~2", 10), ("F~4", 86)]:
        r = top_degree_report(affine(name))
        assert r["formulaDegree"] == r["tableValue"] == degree and not r["flagged"]
    assert top_degree_report(affine("E~8"), gate=10)["bruteForceDegree"] is None


def test_hypercube_dual():
    assert hypercube_dual(affine("A~2")).chambers == 2
    b2 = hypercube_dual(affine("B~2"))
    assert (b2.chambers, b2.edges) == (4, 3)
    a3 = hypercube_dual(affine("A~3"))
    assert a3.chambers == 6 and a3.edges == len(build_poset(affine("A~3")).edges)


def test_interval():
    a2 = interval_isomorphism(affine("A~2"))
    assert a2.size == 2 and a2.top_length == 1
    a3 = interval_isomorphism(affine("A~3"))
    assert a3.rank_counts == (1, 1, 2, 1, 1)
    a1 = interval_isomorphism(affine("A~1"))
    assert a1.size == 1


def test_gate():
    assert poset_size(affine("E~6")) == 17280
    with pytest.raises(GateExceeded):
        hypercube_dual(affine("E~6"))


def test_dot_ranks():
    p = build_poset(affine("A~3"))
    dot = p.to_dot()
    assert dot.count("rank=same") == 5
    assert dot.count("->") == len(p.edges)
