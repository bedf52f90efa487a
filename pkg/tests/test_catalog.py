from math import prod

import pytest

from alcove.catalog import (
    affine,
    catalog_types,
    dynkin,
    exponents,
    extending_vertices,
    fold,
    folding_cover,
    fundamental_group_order,
    graph_for,
    highest_root,
    iota_table,
    parse_type,
)
from alcove.core import apply_generator, are_isomorphic, determinant, validate_graph
from alcove.errors import AdjacentOrbit, InvalidRank, NotAutomorphism, NotFiniteType, UnknownType
from alcove.poset import finite_order_by_orbit


def test_a2_affine():
    d = affine("A~2")
    assert all(d.graph.cartan[i][j] == -1 for i in range(3) for j in range(3) if i != j)
    assert d.delta == (1, 1, 1)
    assert d.extending == (0, 1, 2)


def test_d4_affine():
    d = affine("D~4")
    assert sorted(d.delta) == [1, 1, 1, 1, 2]
    centre = d.delta.index(2)
    assert set(d.extending) == set(range(5)) - {centre}
    assert all(d.graph.cartan[centre][k] == -1 for k in d.extending)


def test_c2_affine():
    d = affine("C~2")
    assert d.delta == (1, 2, 1)
    assert d.extending == (0, 2)


@pytest.mark.parametrize("name, count", [("A~3", 4), ("E~8", 1), ("D~4", 4), ("E~6", 3), ("E~7", 2)])
def test_extending_counts(name, count):
    assert len(extending_vertices(affine(name))) == count


def test_null_root_is_column_kernel():
    for name in catalog_types(6):
        d = affine(name)
        c = d.graph.cartan
        assert all(sum(c[i][j] * d.delta[j] for j in range(d.n)) == 0 for i in range(d.n))


@pytest.mark.parametrize("fam, rank, want", [("A", 3, (1, 2, 3)), ("B", 3, (1, 3, 5)), ("G", 2, (1, 5))])
def test_exponents(fam, rank, want):
    assert exponents(dynkin(fam, rank)) == want


def test_highest_root():
    assert highest_root(dynkin("A", 4)) == (1, 1, 1, 1)
    assert highest_root(dynkin("A", 1)) == (1,)
    assert sorted(highest_root(dynkin("G", 2))) == [2, 3]


def test_affine_graph_not_finite():
    with pytest.raises(NotFiniteType):
        exponents(affine("A~2").graph)


def test_fold_examples():
    d4 = dynkin("D", 4)
    tips = [k for k in range(4) if len(d4.neighbors(k)) == 1]
    rot = list(range(4))
    rot[tips[0]], rot[tips[1]], rot[tips[2]] = tips[1], tips[2], tips[0]
    assert fold(d4, [tuple(rot)]).cartan == ((2, -3), (-1, 2))
    assert fold(dynkin("A", 3), [(2, 1, 0)]).cartan == ((2, -2), (-1, 2))


def test_fold_errors():
    with pytest.raises(NotAutomorphism):
        fold(dynkin("A", 3), [(1, 0, 2)])
    with pytest.raises(AdjacentOrbit):
        fold(dynkin("A", 2), [(1, 0)])


@pytest.mark.parametrize("name", ["B~2", "B~3", "B~4", "C~2", "C~3", "F~4", "G~2"])
def test_folding_consistency(name):
    spec = parse_type(name)
    cover, gens = folding_cover(spec.family, spec.rank)
    assert are_isomorphic(fold(cover.graph, gens), affine(name).graph)


def test_fold_matches_game_on_invariant_configurations():
    cover, gens = folding_cover("G", 2)
    folded = fold(cover.graph, gens)
    # invariant configuration on the cover: constant on orbits
    from alcove.catalog import orbits

    orbs = orbits(cover.n, gens)
    vals = [-1, 2, -3]
    v = [0] * cover.n
    for idx, orb in enumerate(orbs):
        for k in orb:
            v[k] = vals[idx]
    for idx, orb in enumerate(orbs):
        w = tuple(v)
        for k in orb:
            w = apply_generator(cover.graph, w, k)
        q = apply_generator(folded, tuple(vals), idx)
        assert tuple(w[o[0]] for o in orbs) == q


def test_exponent_product_equals_orbit_size():
    for name in ["A~3", "B~3", "C~3", "D~4", "G~2", "F~4"]:
        d = affine(name)
        assert prod(m + 1 for m in d.exponents) == finite_order_by_orbit(d)


def test_extending_count_is_determinant():
    for name in catalog_types(8):
        d = affine(name)
        assert len(d.extending) == determinant(d.finite.cartan) == fundamental_group_order(d)


def test_iota_table_is_automorphism():
    for name in catalog_types(7):
        d = affine(name)
        t = iota_table(d)
        assert t in d.automorphisms
        assert all(t[t[k]] == k for k in range(d.n))


def test_parse_type():
    assert parse_type("C~2").affine
    assert not parse_type("B3").affine
    with pytest.raises(UnknownType):
        parse_type("Z9")
    with pytest.raises(UnknownType):
        parse_type("E9")
    with pytest.raises(InvalidRank):
        dynkin("D", 3)


def test_presets():
    assert graph_for("A2-skew").odd_asymmetric
    g = graph_for("A~2-skew")
    assert g.radicand == 2 and g.null_root is None
    assert graph_for("B3") == dynkin("B", 3)
