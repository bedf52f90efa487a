"""Affine Weyl group elements as exact matrices on configuration space.

An element acts on configurations by matrix multiplication.  The generator
for vertex ``i`` is the matrix of the firing map ``f_i``; a word
``[i1, ..., im]`` denotes the product ``M_i1 ... M_im``, so playing the
firing sequence ``seq`` applies the element of the *reversed* word.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .catalog import AffineData
from .core import CoxeterGraph, identity_matrix, mat_mul, mat_vec
from .errors import FactorizationFailure, NotInOrbit, NotInPoset
from .game import candidates, play_to_termination
from .scalar import simplify


def _graph(obj) -> CoxeterGraph:
    return obj.graph if isinstance(obj, AffineData) else obj


def _invert(m) -> tuple:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(simplify(x) for x in row[n:]) for row in a)


@dataclass(frozen=True)
class WeylMatrix:
    matrix: tuple
    word: tuple | None = field(default=None, compare=False, hash=False)

    def __matmul__(self, other: "WeylMatrix") -> "WeylMatrix":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylMatrix(mat_mul(self.matrix, other.matrix), word)

    def apply(self, v) -> tuple:
        return mat_vec(self.matrix, v)

    def inverse(self) -> "WeylMatrix":
        if self.word is not None:
            return WeylMatrix(_invert(self.matrix), tuple(reversed(self.word)))
        return WeylMatrix(_invert(self.matrix))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(self.n)

    def permutation(self):
        """``sigma`` with ``self(e_k) = e_sigma(k)`` if this is a permutation matrix."""
        n = self.n
        sigma = []
        for k in range(n):
            col = [self.matrix[r][k] for r in range(n)]
            if sorted(col) != [0] * (n - 1) + [1]:
                return None
            sigma.append(col.index(1))
        return tuple(sigma) if sorted(sigma) == list(range(n)) else None


def identity(n: int) -> WeylMatrix:
    return WeylMatrix(identity_matrix(n), ())


def generator(graph, i: int) -> WeylMatrix:
    graph = _graph(graph)
    n = graph.n
    rows = [[int(r == k) for k in range(n)] for r in range(n)]
    rows[i][i] = -1
    for j, c in graph.rows[i]:
        rows[j][i] = simplify(-c)
    return WeylMatrix(tuple(tuple(r) for r in rows), (i,))


def element_from_word(graph, word) -> WeylMatrix:
    graph = _graph(graph)
    out = identity(graph.n)
    for i in word:
        out = out @ generator(graph, i)
    return out


def from_permutation(sigma) -> WeylMatrix:
    n = len(sigma)
    rows = [[0] * n for _ in range(n)]
    for k, s in enumerate(sigma):
        rows[s][k] = 1
    return WeylMatrix(tuple(tuple(r) for r in rows))


def base_point(n: int) -> tuple:
    return (1,) * n


def length(graph, w: WeylMatrix) -> int:
    """Moves needed to bring ``w`` applied to the all-ones point back home."""
    graph = _graph(graph)
    return play_to_termination(graph, w.apply(base_point(graph.n))).length


def reduced_word(graph, w: WeylMatrix) -> tuple:
    graph = _graph(graph)
    seq = play_to_termination(graph, w.apply(base_point(graph.n))).seq
    return tuple(seq)


def left_descents(graph, w: WeylMatrix) -> list:
    return candidates(w.apply(base_point(len(w.matrix))))


# translations ------------------------------------------------------------


def translation_matrix(data: AffineData, j: int) -> WeylMatrix:
    """``T_j(v) = v + (delta . v)(omega_j - delta_j omega_i0)``."""
    n = data.n
    shift = [0] * n
    shift[j] += 1
    shift[data.i0] -= data.delta[j]
    rows = [[int(r == c) + shift[r] * data.delta[c] for c in range(n)] for r in range(n)]
    return WeylMatrix(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class TranslationDatum:
    vertex: int
    element: WeylMatrix
    gamma: tuple
    length: int

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "length": self.length,
            "gamma": list(self.gamma),
            "matrix": [[str(x) for x in row] for row in self.element.matrix],
        }


def translation_element(data: AffineData, coeffs) -> tuple:
    """The element of W acting like ``prod T_j^{n_j}`` on the all-ones point.

    ``coeffs`` maps finite vertices to nonnegative multiplicities.  Returns
    ``(element, gamma, length)`` where ``T^-1 * element`` is the permutation
    matrix of the diagram automorphism ``gamma``.
    """
    big_t = identity(data.n)
    for j, k in sorted(dict(coeffs).items()):
        for _ in range(k):
            big_t = big_t @ translation_matrix(data, j)
    u = base_point(data.n)
    rec = play_to_termination(data.graph, big_t.apply(u))
    if rec.end != u:
        raise NotInOrbit(f"{data.name}: translate of u by {dict(coeffs)} is not in its orbit")
    t = element_from_word(data.graph, rec.seq)
    gamma = (big_t.inverse() @ t).permutation()
    if gamma is None or gamma not in data.automorphisms:
        raise NotInOrbit(f"{data.name}: {dict(coeffs)} gives no diagram automorphism")
    return t, gamma, rec.length


def translation(data: AffineData, j: int) -> TranslationDatum:
    """Recover ``t_j`` by playing ``T_j(u)`` home and split off its automorphism."""
    if j == data.i0 or j not in data.finite_vertices:
        raise ValueError(f"vertex {j} is not a finite vertex of {data.name}")
    t, gamma, ell = translation_element(data, {j: 1})
    return TranslationDatum(j, t, gamma, ell)


def translations(data: AffineData) -> list:
    return [translation(data, j) for j in data.finite_vertices]


def _compose(p, q):
    return tuple(p[q[k]] for k in range(len(q)))


def _power(p, e: int):
    ident = tuple(range(len(p)))
    if e < 0:
        inv = [0] * len(p)
        for k, x in enumerate(p):
            inv[x] = k
        p, e = tuple(inv), -e
    out = ident
    for _ in range(e):
        out = _compose(p, out)
    return out


@dataclass(frozen=True)
class GammaReport:
    image: tuple  # sorted distinct automorphisms reached
    order: int
    commute: bool
    kernel_ok: bool


def check_gamma_homomorphism(data: AffineData, datums=None) -> GammaReport:
    """``j -> gamma_j`` kills the coroot lattice and has image of order det."""
    from .catalog import fundamental_group_order, generate_group

    datums = datums or translations(data)
    gammas = {d.vertex: d.gamma for d in datums}
    commute = all(
        _compose(a, b) == _compose(b, a) for a in gammas.values() for b in gammas.values()
    )
    ident = tuple(range(data.n))
    kernel_ok = True
    fin = data.finite
    for i in range(fin.n):
        acc = ident
        for k in range(fin.n):
            c = fin.cartan[i][k]
            acc = _compose(_power(gammas[data.to_affine_index(k)], int(c)), acc)
        kernel_ok &= acc == ident
    group = generate_group(data.n, list(gammas.values()))
    order = len(group)
    if not (commute and kernel_ok and order == fundamental_group_order(data)):
        raise NotInOrbit(
            f"{data.name}: gamma map is not a monomorphism from the fundamental group "
            f"(commute={commute}, kernel={kernel_ok}, order={order})"
        )
    return GammaReport(tuple(sorted(group)), order, commute, kernel_ok)


# the poset embedding -----------------------------------------------------


def phi_map(data: AffineData, i0: int | None = None) -> dict:
    """``phi`` on the whole strategy poset from ``rho(i0)``.

    Built along a BFS; every further cover edge is checked to give the same
    element, so the result does not depend on the sequence chosen.
    """
    from .strategy import SUB, rho

    i0 = data.i0 if i0 is None else i0
    g = data.graph
    start = rho(data, i0)
    phi = {start: identity(data.n)}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for k in candidates(v, SUB):
            w = generator(g, k).apply(v)
            elt = generator(g, k) @ phi[v]
            if w in phi:
                if phi[w] != elt:
                    raise NotInPoset(f"{data.name}: phi is not well defined at {w}")
                continue
            phi[w] = elt
            queue.append(w)
    return phi


def phi(data: AffineData, v, table: dict | None = None) -> WeylMatrix:
    table = table if table is not None else phi_map(data)
    key = tuple(v)
    if key not in table:
        raise NotInPoset(f"{key} is not in the strategy poset of {data.name}")
    return table[key]


# weak orders and balls ---------------------------------------------------


def ball(graph, radius: int) -> dict:
    """Elements of length ``<= radius`` mapped to their length (BFS on words)."""
    graph = _graph(graph)
    gens = [generator(graph, i) for i in range(graph.n)]
    start = identity(graph.n)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        if dist[w] == radius:
            continue
        for s in gens:
            x = w @ s
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return dist


def _length_fn(graph):
    graph = _graph(graph)

    @lru_cache(maxsize=None)
    def ell(w: WeylMatrix) -> int:
        return length(graph, w)

    return ell


def left_leq(graph, g: WeylMatrix, h: WeylMatrix, ell=None) -> bool:
    ell = ell or _length_fn(graph)
    return ell(h) == ell(g) + ell(h @ g.inverse())


def right_leq(graph, g: WeylMatrix, h: WeylMatrix, ell=None) -> bool:
    ell = ell or _length_fn(graph)
    return ell(h) == ell(g) + ell(g.inverse() @ h)


def finite_group(data: AffineData) -> list:
    """All elements of the finite Weyl group as matrices on the affine space."""
    gens = [generator(data.graph, j) for j in data.finite_vertices]
    start = identity(data.n)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in gens:
            x = w @ s
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return sorted(seen, key=lambda m: m.matrix)


def dominant_translations(data: AffineData, budget: int, datums=None) -> dict:
    """Elements of W realising nonnegative coweight translations.

    Maps each element to ``(length, gamma)``.
    Lengths add along the dominant cone, so the multiplicities with
    ``sum n_j l(t_j) <= budget`` give every such element of length
    ``<= budget``; the additivity is asserted while building.
    """
    datums = datums or translations(data)
    lens = [d.length for d in datums]
    verts = [d.vertex for d in datums]
    found: dict = {}

    def rec(k, coeffs, used):
        if k == len(verts):
            t, gamma, ell = translation_element(data, coeffs)
            if ell != used:
                raise FactorizationFailure(f"{data.name}: lengths of translations do not add")
            found[t] = (ell, gamma)
            return
        n = 0
        while used + n * lens[k] <= budget:
            rec(k + 1, {**coeffs, verts[k]: n}, used + n * lens[k])
            n += 1

    rec(0, {}, 0)
    return found


@dataclass(frozen=True)
class FactorizationReport:
    radius: int
    ball_size: int
    w0_size: int
    semigroup_size: int
    poset_size: int


def factor_table(data: AffineData, radius: int, conjugate: bool = True) -> dict:
    """Map each product ``w0 * h * z`` to the list of triples producing it.

    ``h`` ranges over nonnegative translations of length at most ``radius``.
    """
    hs = dominant_translations(data, radius)
    w0s = finite_group(data)
    tails = [p.inverse() for p in phi_map(data).values()]
    products: dict = {}
    for h, (_, gamma) in hs.items():
        p = from_permutation(gamma)
        pinv = p.inverse()
        zs = [pinv @ t @ p for t in tails] if conjugate else tails
        for a in w0s:
            ah = a @ h
            for z in zs:
                products.setdefault(ah @ z, []).append((a, h, z))
    return products


def factorize(data: AffineData, w: WeylMatrix, conjugate: bool = True) -> tuple:
    """The unique ``(w0, h, z)`` with ``w = w0 h z`` and additive lengths."""
    ell = _length_fn(data.graph)
    facts = factor_table(data, ell(w), conjugate).get(w, [])
    if len(facts) != 1:
        raise FactorizationFailure(f"{data.name}: {len(facts)} factorizations")
    a, h, z = facts[0]
    if ell(a) + ell(h) + ell(z) != ell(w):
        raise FactorizationFailure(f"{data.name}: lengths do not add")
    return a, h, z


def factorization_check(data: AffineData, radius: int, conjugate: bool = True) -> FactorizationReport:
    """Every ``w`` in the ball factors uniquely as ``w0 * h * z`` with additive lengths.

    ``h`` realises a nonnegative translation ``T`` with ``h = T * gamma``.
    ``z`` is ``phi(w')^-1`` conjugated by ``gamma``: its chamber lies in the
    cube that ``h`` carries onto the translated cube at ``T``.  With
    ``conjugate=False`` the bare ``phi(w')^-1`` is used instead.
    """
    g = data.graph
    ell = _length_fn(g)
    balls = ball(g, radius)
    products = factor_table(data, radius, conjugate)
    for w, lw in balls.items():
        if ell(w) != lw:
            raise FactorizationFailure(f"{data.name}: BFS length {lw} differs from game length {ell(w)}")
        facts = products.get(w, [])
        if len(facts) != 1:
            raise FactorizationFailure(f"{data.name}: element of length {lw} has {len(facts)} factorizations")
        a, h, z = facts[0]
        if ell(a) + ell(h) + ell(z) != lw:
            raise FactorizationFailure(f"{data.name}: lengths do not add for an element of length {lw}")
    return FactorizationReport(
        radius,
        len(balls),
        len(finite_group(data)),
        len(dominant_translations(data, radius)),
        len(phi_map(data)),
    )
