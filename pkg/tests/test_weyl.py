import pytest

from alcove.catalog import affine
from alcove.errors import FactorizationFailure, NotInPoset
from alcove.game import play_to_termination
from alcove.poset import build_poset
from alcove.strategy import rho
from alcove.weyl import (
    ball,
    base_point,
    check_gamma_homomorphism,
    element_from_word,
    factorization_check,
    factorize,
    generator,
    identity,
    left_descents,
    left_leq,
    length,
    phi,
    phi_map,
    reduced_word,
    right_leq,
    translation,
    translations,
)

A2 = affine("A~2")
A3 = affine("A~3")


def test_words():
    g = A2.graph
    assert element_from_word(g, []) == identity(3)
    assert element_from_word(g, [1, 1]) == identity(3)
    assert element_from_word(g, [0, 1, 0]) == element_from_word(g, [1, 0, 1])
    assert element_from_word(g, [0, 1]) != element_from_word(g, [1, 0])


def test_generators_square_and_preserve_delta():
    for d in (A3, affine("G~2"), affine("B~3")):
        for i in range(d.n):
            s = generator(d.graph, i)
            assert (s @ s).is_identity()
            v = tuple(range(1, d.n + 1))
            w = s.apply(v)
            assert sum(a * b for a, b in zip(d.delta, v)) == sum(a * b for a, b in zip(d.delta, w))


def test_lengths():
    g = A2.graph
    assert length(g, identity(3)) == 0
    assert all(length(g, generator(g, i)) == 1 for i in range(3))
    w = element_from_word(g, [0, 1, 2, 0])
    word = reduced_word(g, w)
    assert element_from_word(g, word) == w
    assert len(word) == length(g, w)


def test_left_descents():
    g = A2.graph
    w = element_from_word(g, [1, 0])
    assert left_descents(g, w) == [1]


def test_a2_translations():
    datums = translations(A2)
    assert [t.length for t in datums] == [2, 2]
    for t in datums:
        assert sorted(t.gamma) == [0, 1, 2]
        assert all(t.gamma[k] != k for k in range(3))  # a rotation of the triangle


@pytest.mark.parametrize("name, lengths", [("B~3", (5, 8, 9)), ("G~2", (10, 6)), ("A~3", (3, 4, 3))])
def test_translation_lengths(name, lengths):
    d = affine(name)
    assert tuple(t.length for t in translations(d)) == lengths == d.translation_root_sums


def test_translation_gamma_trivial_for_g2():
    g2 = affine("G~2")
    assert all(t.gamma == (0, 1, 2) for t in translations(g2))


def test_translation_is_recovered_by_play():
    d = affine("C~3")
    t = translation(d, 1)
    rec = play_to_termination(d.graph, t.element.apply(base_point(d.n)))
    assert rec.length == t.length


def test_translation_rejects_affine_vertex():
    with pytest.raises(ValueError):
        translation(A3, 0)


@pytest.mark.parametrize("name", ["A~2", "A~3", "A~4", "B~3", "C~3", "D~4", "D~5", "E~6", "G~2"])
def test_gamma_homomorphism(name):
    d = affine(name)
    r = check_gamma_homomorphism(d)
    assert r.order == len(d.extending)


def test_phi_examples():
    table = phi_map(A2)
    assert phi(A2, rho(A2, 0), table).is_identity()
    assert phi(A2, tuple(-x for x in rho(A2, 0)), table) == generator(A2.graph, 0)
    with pytest.raises(NotInPoset):
        phi(A2, (5, 5, -10), table)


def test_phi_a3_top():
    table = phi_map(A3)
    p = build_poset(A3)
    top = p.nodes[p.top]
    assert length(A3.graph, table[top]) == 4
    # both two-step paths into each rank-2 node give the same matrix
    g = A3.graph
    rank2 = [v for v, r in zip(p.nodes, p.ranks) if r == 2]
    for v in rank2:
        preds = [(p.nodes[a], i) for a, b, i in p.edges if p.nodes[b] == v]
        mats = {generator(g, i) @ table[u] for u, i in preds}
        assert len(mats) == 1


def test_factorization_examples():
    a, h, z = factorize(A2, identity(3))
    assert a.is_identity() and h.is_identity() and z.is_identity()
    p = build_poset(A3)
    top = phi_map(A3)[p.nodes[p.top]]
    a, h, z = factorize(A3, top.inverse())
    assert a.is_identity() and h.is_identity() and z == top.inverse()


def test_factorization_balls():
    # growth series of the affine A2 group: 1, 3, 6, 9, 12
    assert factorization_check(A2, 4).ball_size == 31
    assert factorization_check(affine("B~2"), 4).ball_size > 0


def test_bare_tail_is_not_unique():
    with pytest.raises(FactorizationFailure):
        factorization_check(A2, 4, conjugate=False)


def test_weak_order_on_ball():
    g = A2.graph
    elems = list(ball(g, 3))
    for x in elems:
        assert left_leq(g, identity(3), x) and right_leq(g, x, x)
        for y in elems:
            if left_leq(g, x, y) and left_leq(g, y, x):
                assert x == y
            for z in elems:
                if left_leq(g, x, y) and left_leq(g, y, z):
                    assert left_leq(g, x, z)
