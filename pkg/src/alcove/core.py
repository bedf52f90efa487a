"""Coxeter graphs with exact Cartan matrices, the firing rule and roots.

Conventions used throughout the package:

* Vertices are ``0 .. n-1``.
* A configuration is a tuple of exact amplitudes in fundamental-coweight
  coordinates.  Firing vertex ``i`` sends ``v`` to ``w`` with ``w_i = -v_i``
  and ``w_j = v_j - c_ij * v_i``; row ``i`` of the Cartan matrix is therefore
  the coroot of vertex ``i`` written in coweight coordinates.
* A root is a tuple in the simple-root basis.  The simple reflection is
  ``s_i(a) = a - (sum_j c_ij a_j) e_i``, the unique orientation for which
  ``pair(s_i(a), f_i(v)) == pair(a, v)``.
* The null root of an affine graph is the positive primitive vector
  ``delta`` with ``C @ delta == 0``, which is exactly the condition making
  ``pair(delta, v)`` invariant under firing.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterator, Sequence

from .errors import (
    BondValueInvalid,
    BoundExceeded,
    DiagonalNotTwo,
    LengthMismatch,
    NonNegativeAmplitude,
    RadicandMismatch,
    ScalarParseError,
    SignPatternViolation,
)
from .scalar import Scalar, format_scalar, parse_scalar, sign, simplify

Configuration = tuple
RootVector = tuple

INFINITE_ORDER = math.inf

# bond products 4cos^2(pi/m) that live in a real quadratic field
_BOND_ORDERS = [
    (Fraction(1), 3),
    (Fraction(2), 4),
    (Fraction(3), 6),
    (Scalar(Fraction(3, 2), Fraction(1, 2), 5), 5),
    (Scalar(Fraction(5, 2), Fraction(1, 2), 5), 10),
    (Scalar(2, 1, 2), 8),
    (Scalar(2, 1, 3), 12),
]


def _edge_order(product):
    for value, order in _BOND_ORDERS:
        try:
            if product == value:
                return order
        except RadicandMismatch:
            continue
    if sign(product - 4) >= 0:
        return INFINITE_ORDER
    return None


def _radicand_of(x) -> int:
    return x.d if isinstance(x, Scalar) else 0


@dataclass(frozen=True)
class CoxeterGraph:
    """A vertex set together with a validated exact Cartan matrix.

    Construction validates; see :func:`validate_graph`.  ``odd_asymmetric``
    is set when some bond of odd order has ``c_ij != c_ji``: such matrices
    are accepted but the looping-case theory does not apply to them.
    """

    cartan: tuple
    radicand: int = 0
    name: str = ""
    n: int = field(init=False)
    orders: tuple = field(init=False, repr=False)
    rows: tuple = field(init=False, repr=False)
    odd_asymmetric: bool = field(init=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(simplify(parse_scalar(x)) for x in row) for row in self.cartan)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise LengthMismatch("Cartan matrix must be square")
        radicand = int(self.radicand)
        for r in rows:
            for x in r:
                d = _radicand_of(x)
                if d:
                    if radicand == 0:
                        radicand = d
                    elif d != radicand:
                        raise RadicandMismatch(f"entry {x} is not in Q(sqrt({radicand}))")
        orders = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        odd_asym = False
        for i in range(n):
            if rows[i][i] != 2:
                raise DiagonalNotTwo(f"c_{i}{i} = {format_scalar(rows[i][i])}")
            for j in range(i + 1, n):
                a, b = rows[i][j], rows[j][i]
                if a == 0 and b == 0:
                    continue
                if not (sign(a) < 0 and sign(b) < 0):
                    raise SignPatternViolation(
                        f"c_{i}{j} = {format_scalar(a)}, c_{j}{i} = {format_scalar(b)}"
                    )
                m = _edge_order(a * b)
                if m is None:
                    raise BondValueInvalid(
                        f"c_{i}{j} c_{j}{i} = {format_scalar(a * b)} is not 4cos^2(pi/m) or >= 4"
                    )
                orders[i][j] = orders[j][i] = m
                if m != INFINITE_ORDER and m % 2 == 1 and a != b:
                    odd_asym = True
        object.__setattr__(self, "cartan", rows)
        object.__setattr__(self, "radicand", radicand)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "orders", tuple(tuple(r) for r in orders))
        object.__setattr__(
            self,
            "rows",
            tuple(
                tuple((j, rows[i][j]) for j in range(n) if j != i and rows[i][j] != 0)
                for i in range(n)
            ),
        )
        object.__setattr__(self, "odd_asymmetric", odd_asym)

    def __hash__(self):
        return hash((self.cartan, self.radicand))

    def __eq__(self, other):
        if not isinstance(other, CoxeterGraph):
            return NotImplemented
        return self.cartan == other.cartan and self.radicand == other.radicand

    @property
    def flags(self) -> tuple:
        return ("odd-asymmetric",) if self.odd_asymmetric else ()

    def neighbors(self, i: int) -> tuple:
        return tuple(j for j, _ in self.rows[i])

    def edge_order(self, i: int, j: int):
        return self.orders[i][j]

    @property
    def is_rational(self) -> bool:
        return all(not isinstance(x, Scalar) for r in self.cartan for x in r)

    def subgraph(self, vertices: Sequence[int], name: str = "") -> "CoxeterGraph":
        vs = list(vertices)
        return CoxeterGraph(
            tuple(tuple(self.cartan[i][j] for j in vs) for i in vs), self.radicand, name
        )

    def permuted(self, perm: Sequence[int]) -> "CoxeterGraph":
        """Relabel so that new vertex ``k`` is old vertex ``perm[k]``."""
        return self.subgraph(perm, self.name)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        todo = [0]
        while todo:
            i = todo.pop()
            for j in self.neighbors(i):
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return len(seen) == self.n

    @cached_property
    def null_root(self):
        """Positive primitive integer ``delta`` with ``C delta = 0``, or ``None``."""
        if not self.is_rational or not self.is_connected():
            return None
        basis = rational_nullspace(self.cartan)
        if len(basis) != 1:
            return None
        vec = basis[0]
        signs = {sign(x) for x in vec}
        if signs not in ({1}, {-1}):
            return None
        if signs == {-1}:
            vec = [-x for x in vec]
        return primitive_integer_vector(vec)

    @property
    def is_affine(self) -> bool:
        return self.null_root is not None

    @cached_property
    def is_finite_type(self) -> bool:
        try:
            positive_roots(self)
        except BoundExceeded:
            return False
        return True

    def automorphisms(self) -> list:
        """All vertex permutations preserving the Cartan matrix, identity first."""
        return sorted(cartan_isomorphisms(self, self))


def validate_graph(cartan, radicand: int = 0, name: str = "") -> CoxeterGraph:
    """Validate a square matrix of exact scalars and wrap it as a graph."""
    return CoxeterGraph(tuple(tuple(r) for r in cartan), radicand, name)


# configurations ----------------------------------------------------------


def configuration(values, graph: CoxeterGraph | None = None) -> Configuration:
    v = tuple(simplify(parse_scalar(x)) for x in values)
    if graph is not None and len(v) != graph.n:
        raise LengthMismatch(f"configuration has {len(v)} entries, graph has {graph.n} vertices")
    return v


def parse_configuration(text: str, graph: CoxeterGraph | None = None) -> Configuration:
    """Parse ``"(-2,1,1)"``-style text (brackets optional)."""
    body = text.strip()
    if body[:1] in "([" and body[-1:] in ")]":
        body = body[1:-1]
    parts = [p for p in re.split(r",(?![^()]*\))", body) if p.strip()]
    try:
        return configuration(parts, graph)
    except ScalarParseError as exc:
        raise ScalarParseError(f"bad configuration {text!r}: {exc}") from None


def format_configuration(v) -> str:
    return "(" + ",".join(format_scalar(x) for x in v) + ")"


def apply_generator(graph: CoxeterGraph, v, i: int) -> Configuration:
    """The linear map f_i, applied regardless of the sign of ``v_i``."""
    a = v[i]
    if a == 0:
        return tuple(v)
    w = list(v)
    w[i] = -a
    for j, c in graph.rows[i]:
        w[j] = simplify(w[j] - c * a)
    return tuple(w)


def fire(graph: CoxeterGraph, v, i: int) -> Configuration:
    """Fire vertex ``i``; only strictly negative amplitudes may be fired."""
    if len(v) != graph.n:
        raise LengthMismatch(f"configuration has {len(v)} entries, graph has {graph.n} vertices")
    if not sign(v[i]) < 0:
        raise NonNegativeAmplitude(f"vertex {i} has amplitude {format_scalar(v[i])}")
    return apply_generator(graph, v, i)


# roots -------------------------------------------------------------------


def pair(alpha, v):
    if len(alpha) != len(v):
        raise LengthMismatch(f"root of length {len(alpha)} paired with configuration of length {len(v)}")
    total = 0
    for a, x in zip(alpha, v):
        if a:
            total = total + a * x
    return simplify(total)


def reflect_root(graph: CoxeterGraph, alpha, i: int) -> RootVector:
    p = 0
    for j, c in graph.rows[i]:
        if alpha[j]:
            p = p + c * alpha[j]
    p = p + 2 * alpha[i]
    if p == 0:
        return tuple(alpha)
    out = list(alpha)
    out[i] = simplify(out[i] - p)
    return tuple(out)


def simple_root(n: int, i: int) -> RootVector:
    return tuple(1 if k == i else 0 for k in range(n))


def height(alpha):
    return simplify(sum(alpha))


def positive_roots(graph: CoxeterGraph, bound=None, limit: int | None = None) -> list:
    """Positive real roots, as the reflection closure of the simple roots.

    With ``bound=None`` the closure must stabilise (finite type), otherwise
    :class:`BoundExceeded` is raised once more than ``limit`` roots have
    appeared.  With a bound, all positive roots of height ``<= bound`` are
    returned; since every non-simple positive real root has a simple
    reflection lowering its height, the bounded closure is complete.
    Result is sorted by height, then lexicographically.
    """
    n = graph.n
    if limit is None:
        limit = 8 * n * n + 16
    seen = {}
    queue = deque()
    for i in range(n):
        a = simple_root(n, i)
        seen[a] = None
        queue.append(a)
    while queue:
        a = queue.popleft()
        for i in range(n):
            b = reflect_root(graph, a, i)
            if b in seen or any(sign(x) < 0 for x in b):
                continue
            if bound is not None and sign(height(b) - bound) > 0:
                continue
            seen[b] = None
            queue.append(b)
            if bound is None and len(seen) > limit:
                raise BoundExceeded(f"reflection closure exceeded {limit} roots; not of finite type")
    return sorted(seen, key=lambda r: (height(r), r))


# exact linear algebra ----------------------------------------------------


def rational_nullspace(matrix) -> list:
    """Basis of ``{x : M x = 0}`` over Q, by Gauss-Jordan elimination."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            vec[pc] = -rows[k][fc]
        basis.append(vec)
    return basis


def primitive_integer_vector(vec) -> tuple:
    vec = [Fraction(x) for x in vec]
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in vec), 1)
    ints = [int(x * lcm) for x in vec]
    g = reduce(math.gcd, (abs(x) for x in ints), 0)
    return tuple(x // g for x in ints)


def exact_div(a, b):
    if isinstance(a, Scalar) or isinstance(b, Scalar):
        return simplify(a / b)
    return simplify(Fraction(a) / Fraction(b))


def determinant(matrix):
    m = [[simplify(x) for x in r] for r in matrix]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((k for k in range(c, n) if m[k][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        for k in range(c + 1, n):
            if m[k][c] != 0:
                f = exact_div(m[k][c], p)
                m[k] = [simplify(x - f * y) for x, y in zip(m[k], m[c])]
    return simplify(det)


def mat_mul(a, b) -> tuple:
    bt = list(zip(*b))
    return tuple(tuple(simplify(sum(x * y for x, y in zip(row, col))) for col in bt) for row in a)


def mat_vec(a, v) -> tuple:
    return tuple(simplify(sum(x * y for x, y in zip(row, v))) for row in a)


def identity_matrix(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


# graph isomorphism -------------------------------------------------------


def cartan_isomorphisms(g1: CoxeterGraph, g2: CoxeterGraph) -> Iterator[tuple]:
    """Yield permutations ``p`` with ``g2.cartan[p[i]][p[j]] == g1.cartan[i][j]``."""
    n = g1.n
    if g2.n != n:
        return
    sig1 = [sorted(map(format_scalar, r)) for r in g1.cartan]
    sig2 = [sorted(map(format_scalar, r)) for r in g2.cartan]
    # assign vertices in BFS order so that each new vertex has an assigned neighbour
    order = []
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        seen.add(start)
        q = deque([start])
        while q:
            i = q.popleft()
            order.append(i)
            for j in g1.neighbors(i):
                if j not in seen:
                    seen.add(j)
                    q.append(j)
    p = [None] * n
    used = [False] * n

    def extend(k):
        if k == n:
            yield tuple(p)
            return
        i = order[k]
        for t in range(n):
            if used[t] or sig1[i] != sig2[t]:
                continue
            ok = True
            for s in order[:k]:
                if g1.cartan[i][s] != g2.cartan[t][p[s]] or g1.cartan[s][i] != g2.cartan[p[s]][t]:
                    ok = False
                    break
            if not ok:
                continue
            p[i] = t
            used[t] = True
            yield from extend(k + 1)
            used[t] = False
            p[i] = None

    yield from extend(0)


def are_isomorphic(g1: CoxeterGraph, g2: CoxeterGraph) -> bool:
    return next(cartan_isomorphisms(g1, g2), None) is not None


# JSON graph format ---------------------------------------------------------


def graph_to_json(graph: CoxeterGraph) -> dict:
    return {
        "cartan": [[format_scalar(x) for x in row] for row in graph.cartan],
        "n": graph.n,
        "name": graph.name,
        "radicand": graph.radicand,
    }


def graph_from_json(data: dict) -> CoxeterGraph:
    radicand = int(data.get("radicand", 0))
    cartan = [[parse_scalar(x, radicand or None) for x in row] for row in data["cartan"]]
    if "n" in data and int(data["n"]) != len(cartan):
        raise LengthMismatch(f"n = {data['n']} but the Cartan matrix has {len(cartan)} rows")
    return validate_graph(cartan, radicand, data.get("name", ""))
