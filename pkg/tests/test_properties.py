from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

from alcove.catalog import affine, dynkin, skew_affine_a2
from alcove.core import (
    apply_generator,
    format_configuration,
    graph_from_json,
    graph_to_json,
    pair,
    parse_configuration,
    positive_roots,
    reflect_root,
)
from alcove.game import explore_plays, orbit, play_to_termination
from alcove.scalar import Scalar, format_scalar, parse_scalar
from alcove.typea import AffinePermutation, gamma_inverse, gamma_vector
from alcove.weyl import element_from_word, generator, length

GRAPHS = [
    dynkin("A", 3),
    dynkin("B", 3),
    dynkin("C", 3),
    dynkin("G", 2),
    dynkin("F", 4),
    affine("A~3").graph,
    affine("B~3").graph,
    affine("G~2").graph,
    affine("C~2").graph,
    skew_affine_a2(),
]
AFFINE = [affine(n) for n in ("A~2", "A~3", "B~2", "C~2", "G~2", "B~3", "D~4")]

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=6)
surds = st.builds(lambda a, b: a + Scalar.sqrt(2, b), rationals, rationals)
scalars = st.one_of(rationals, surds)


@st.composite
def graph_and_config(draw, values=scalars):
    g = draw(st.sampled_from(GRAPHS))
    v = tuple(draw(values) for _ in range(g.n))
    return g, v


@given(graph_and_config(), st.data())
def test_firing_is_an_involution(gv, data):
    g, v = gv
    i = data.draw(st.integers(0, g.n - 1))
    assert apply_generator(g, apply_generator(g, v, i), i) == v


@given(graph_and_config(), st.data())
def test_pairing_duality(gv, data):
    g, v = gv
    i = data.draw(st.integers(0, g.n - 1))
    alpha = tuple(data.draw(st.integers(-4, 4)) for _ in range(g.n))
    assert pair(reflect_root(g, alpha, i), apply_generator(g, v, i)) == pair(alpha, v)


@given(st.sampled_from(GRAPHS[:5]))
def test_root_dichotomy_finite(g):
    for r in positive_roots(g):
        assert all(x >= 0 for x in r)
        for i in range(g.n):
            s = reflect_root(g, r, i)
            assert all(x >= 0 for x in s) or all(x <= 0 for x in s)


@given(st.sampled_from(AFFINE), st.integers(1, 6), st.data())
def test_root_dichotomy_affine(d, bound, data):
    roots = positive_roots(d.graph, bound=bound)
    r = data.draw(st.sampled_from(roots))
    word = data.draw(st.lists(st.integers(0, d.n - 1), max_size=8))
    for i in word:
        r = reflect_root(d.graph, r, i)
    assert any(r)
    assert all(x >= 0 for x in r) or all(x <= 0 for x in r)


@given(st.sampled_from(AFFINE), st.data())
def test_delta_invariance(d, data):
    v = tuple(data.draw(rationals) for _ in range(d.n))
    i = data.draw(st.integers(0, d.n - 1))
    assert pair(d.delta, apply_generator(d.graph, v, i)) == pair(d.delta, v)


def _level_zero(d, data, lo=-3, hi=3):
    v = [data.draw(st.integers(lo, hi)) for _ in range(d.n)]
    j = d.i0
    rest = sum(dl * x for k, (dl, x) in enumerate(zip(d.delta, v)) if k != j)
    v[j] = -rest  # delta at an extending vertex is 1
    return tuple(v)


@given(st.sampled_from(AFFINE[:5]), st.data())
def test_orbit_negation(d, data):
    v = _level_zero(d, data)
    nodes = set(orbit(d.graph, v, node_cap=20000).nodes)
    neg = set(orbit(d.graph, tuple(-x for x in v), node_cap=20000).nodes)
    assert neg == {tuple(-x for x in u) for u in nodes}
    assert all(pair(d.delta, u) == 0 for u in nodes)


# -1 lies in the finite Weyl group here, so each orbit is closed under negation
@given(st.sampled_from([affine(n) for n in ("B~2", "C~2", "G~2", "B~3", "D~4")]), st.data())
def test_orbit_symmetry_when_minus_one_in_w0(d, data):
    v = _level_zero(d, data, -2, 2)
    nodes = set(orbit(d.graph, v, node_cap=20000).nodes)
    assert tuple(-x for x in v) in nodes


@given(st.sampled_from(AFFINE), st.data())
def test_orbit_symmetry_for_rho(d, data):
    from alcove.strategy import rho

    v = rho(d, data.draw(st.sampled_from(d.extending)))
    nodes = set(orbit(d.graph, v, node_cap=20000).nodes)
    assert tuple(-x for x in v) in nodes


@given(st.sampled_from(AFFINE[:5]), st.data())
def test_termination_dichotomy(d, data):
    v = tuple(data.draw(st.integers(-3, 3)) for _ in range(d.n))
    level = pair(d.delta, v)
    assume(level > 0)
    out = explore_plays(d.graph, v, node_cap=50000)
    assert out.unique
    assert all(x >= 0 for x in out.single()[1])


@given(st.sampled_from([dynkin("A", 3), dynkin("B", 3), dynkin("G", 2), affine("A~2").graph]), st.data())
def test_strong_convergence(g, data):
    v = tuple(data.draw(st.integers(-2, 2)) for _ in range(g.n))
    d = g.null_root
    assume(d is None or pair(d, v) > 0)
    out = explore_plays(g, v, node_cap=50000)
    assert out.unique
    length_, end, _ = out.single()
    assert play_to_termination(g, v, "most-negative").length == length_


@given(st.sampled_from(AFFINE), st.data())
def test_length_changes_by_one(d, data):
    word = data.draw(st.lists(st.integers(0, d.n - 1), max_size=7))
    i = data.draw(st.integers(0, d.n - 1))
    w = element_from_word(d.graph, word)
    lw = length(d.graph, w)
    assert lw <= len(word)
    assert abs(length(d.graph, w @ generator(d.graph, i)) - lw) == 1
    assert abs(length(d.graph, generator(d.graph, i) @ w) - lw) == 1


@given(scalars)
def test_scalar_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(graph_and_config())
def test_configuration_and_graph_roundtrip(gv):
    g, v = gv
    assert parse_configuration(format_configuration(v)) == v
    assert graph_from_json(graph_to_json(g)) == g


@given(st.integers(2, 5), st.data())
def test_gamma_roundtrip(n, data):
    gamma = tuple(data.draw(st.integers(0, 6)) for _ in range(n - 1))
    s = gamma_inverse(gamma, n)
    assert s.is_dominant()
    assert gamma_vector(s) == gamma
    assert gamma_inverse(gamma_vector(s), n) == s


@given(st.integers(2, 5), st.data())
def test_window_invariants_survive_swaps(n, data):
    s = AffinePermutation(tuple(range(1, n + 1)))
    for k in data.draw(st.lists(st.integers(0, n - 1), max_size=10)):
        s = s.swap(k)
    assert sum(s.window) == n * (n + 1) // 2
    assert len({x % n for x in s.window}) == n
