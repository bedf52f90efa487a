"""Finite and extended Dynkin diagrams.

Vertex numbering: finite diagrams use Bourbaki's order, shifted to start at
0 (so Bourbaki's alpha_1 is vertex 0).  Extended diagrams put the affine
vertex at 0 and finite vertex ``k`` (Bourbaki alpha_k) at index ``k``.
Rows of short simple roots carry the bond multiplicity, e.g. in ``B_n``
``c[n-1][n-2] == -2``.

The extended Cartan matrix is produced from the finite one by adjoining
``-theta`` for the highest root ``theta``; the null root, extending vertices
and exponents are then recomputed from scratch rather than read from a
table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod

from .core import (
    CoxeterGraph,
    are_isomorphic,
    determinant,
    height,
    positive_roots,
    validate_graph,
)
from .errors import (
    AdjacentOrbit,
    BoundExceeded,
    CertificateFailure,
    InvalidRank,
    NotAutomorphism,
    NotFiniteType,
    UnknownType,
)
from .scalar import Scalar

FAMILIES = "ABCDEFG"


def _min_rank(family: str) -> int:
    return {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}[family]


def _check_rank(family: str, rank: int):
    if family not in FAMILIES:
        raise UnknownType(f"unknown family {family!r}")
    if rank < _min_rank(family):
        raise InvalidRank(f"{family}_{rank} is not a Dynkin type")
    if family == "E" and rank > 8:
        raise InvalidRank(f"E_{rank} is not a Dynkin type")
    if family == "F" and rank != 4:
        raise InvalidRank("F only exists in rank 4")
    if family == "G" and rank != 2:
        raise InvalidRank("G only exists in rank 2")


@dataclass(frozen=True)
class DynkinSpec:
    family: str
    rank: int
    affine: bool = True

    def __post_init__(self):
        _check_rank(self.family, self.rank)

    @property
    def name(self) -> str:
        return f"{self.family}{'~' if self.affine else ''}{self.rank}"

    @property
    def vertex_names(self) -> dict:
        shift = 0 if self.affine else 1
        return {k: f"a{k + shift}" for k in range(self.rank + self.affine)}


def _empty(n):
    return [[2 if i == j else 0 for j in range(n)] for i in range(n)]


def _bond(c, i, j, row_i=-1, row_j=-1):
    c[i][j] = row_i
    c[j][i] = row_j


def finite_cartan(family: str, rank: int) -> list:
    """Finite Cartan matrix in Bourbaki order (0-based)."""
    _check_rank(family, rank)
    n = rank
    c = _empty(n)
    if family in "ABC":
        for k in range(n - 1):
            _bond(c, k, k + 1)
        if family == "B":
            _bond(c, n - 2, n - 1, -1, -2)
        elif family == "C":
            _bond(c, n - 2, n - 1, -2, -1)
    elif family == "D":
        for k in range(n - 2):
            _bond(c, k, k + 1)
        _bond(c, n - 3, n - 1)
    elif family == "E":
        # 1-3-4-5-6-7-8 with 2 attached to 4
        for a, b in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]:
            if a <= n and b <= n:
                _bond(c, a - 1, b - 1)
    elif family == "F":
        _bond(c, 0, 1)
        _bond(c, 1, 2, -1, -2)
        _bond(c, 2, 3)
    elif family == "G":
        _bond(c, 0, 1, -3, -1)
    return c


def dynkin(family: str, rank: int) -> CoxeterGraph:
    return validate_graph(finite_cartan(family, rank), 0, f"{family}{rank}")


def symmetrizer(graph: CoxeterGraph) -> list:
    """Half squared lengths ``eps`` with ``eps_i c_ij`` symmetric (connected graph)."""
    n = graph.n
    eps = [None] * n
    for start in range(n):
        if eps[start] is not None:
            continue
        eps[start] = Fraction(1)
        todo = [start]
        while todo:
            i = todo.pop()
            for j, cij in graph.rows[i]:
                e = eps[i] * Fraction(cij) / Fraction(graph.cartan[j][i])
                if eps[j] is None:
                    eps[j] = e
                    todo.append(j)
                elif eps[j] != e:
                    raise ValueError("Cartan matrix is not symmetrizable")
    return eps


def highest_root(finite: CoxeterGraph) -> tuple:
    """Unique positive root of maximal height (finite type only)."""
    try:
        roots = positive_roots(finite)
    except BoundExceeded as exc:
        raise NotFiniteType(str(exc)) from None
    top = max(roots, key=height)
    if any(r != top and height(r) == height(top) for r in roots):
        raise CertificateFailure("highest root is not unique")
    if not all(all(x <= y for x, y in zip(r, top)) for r in roots):
        raise CertificateFailure("highest root does not dominate every positive root")
    return top


def exponents(finite: CoxeterGraph) -> tuple:
    """Exponents from the root height histogram.

    ``#{i : m_i >= k}`` equals the number of positive roots of height ``k``
    (the partition of heights is conjugate to the exponent partition).
    """
    try:
        roots = positive_roots(finite)
    except BoundExceeded as exc:
        raise NotFiniteType(str(exc)) from None
    hist = {}
    for r in roots:
        hist[height(r)] = hist.get(height(r), 0) + 1
    top = max(hist)
    counts = [hist.get(k, 0) for k in range(1, top + 2)]
    out = []
    for k in range(1, top + 1):
        out.extend([k] * (counts[k - 1] - counts[k]))
    if len(out) != finite.n:
        raise CertificateFailure(f"height histogram {counts} does not give {finite.n} exponents")
    return tuple(sorted(out))


def affinize(finite: CoxeterGraph, name: str = "") -> CoxeterGraph:
    """Adjoin ``alpha_0 = -theta`` as vertex 0 of an untwisted extension."""
    theta = highest_root(finite)
    eps = symmetrizer(finite)
    n = finite.n
    form = [sum(theta[k] * eps[k] * Fraction(finite.cartan[k][j]) for k in range(n)) for j in range(n)]
    norm = sum(theta[j] * form[j] for j in range(n))
    c = _empty(n + 1)
    for j in range(n):
        for k in range(n):
            c[j + 1][k + 1] = finite.cartan[j][k]
        c[0][j + 1] = -2 * form[j] / norm
        c[j + 1][0] = -form[j] / eps[j]
    return validate_graph(c, 0, name)


def _is_automorphism(graph: CoxeterGraph, perm) -> bool:
    n = graph.n
    return sorted(perm) == list(range(n)) and all(
        graph.cartan[perm[i]][perm[j]] == graph.cartan[i][j] for i in range(n) for j in range(n)
    )


@dataclass(frozen=True)
class ExtendingCertificate:
    vertex: int
    complement_finite: bool
    reextends: bool


@dataclass(frozen=True)
class AffineData:
    """An extended Dynkin diagram with its derived root data.

    ``finite`` is the subgraph on ``finite_vertices`` (reindexed from 0);
    ``highest_root`` and ``exponents`` refer to it.
    """

    family: str
    rank: int
    graph: CoxeterGraph
    i0: int
    delta: tuple
    extending: tuple
    finite_vertices: tuple
    finite: CoxeterGraph
    exponents: tuple
    highest_root: tuple

    @property
    def name(self) -> str:
        return self.graph.name

    @property
    def n(self) -> int:
        return self.graph.n

    def to_affine_index(self, k: int) -> int:
        return self.finite_vertices[k]

    @cached_property
    def automorphisms(self) -> list:
        return self.graph.automorphisms()

    @cached_property
    def finite_order(self) -> int:
        return prod(m + 1 for m in self.exponents)

    @cached_property
    def translation_root_sums(self) -> tuple:
        """``sum over positive finite roots of alpha_j`` for each finite vertex."""
        roots = positive_roots(self.finite)
        return tuple(sum(r[j] for r in roots) for j in range(self.finite.n))


def parse_type(name: str) -> DynkinSpec:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(~?)\s*_?(\d+)\s*", name)
    if not m:
        raise UnknownType(f"unknown type {name!r}")
    try:
        return DynkinSpec(m.group(1).upper(), int(m.group(3)), bool(m.group(2)))
    except InvalidRank as exc:
        raise UnknownType(str(exc)) from None


def affine_cartan(spec) -> AffineData:
    if isinstance(spec, str):
        spec = parse_type(spec)
    if not spec.affine:
        spec = DynkinSpec(spec.family, spec.rank, True)
    fin = dynkin(spec.family, spec.rank)
    graph = affinize(fin, spec.name)
    delta = graph.null_root
    if delta is None or delta[0] != 1:
        raise CertificateFailure(f"{spec.name}: no positive null root with delta_0 = 1")
    theta = highest_root(fin)
    if tuple(delta[1:]) != theta:
        raise CertificateFailure(f"{spec.name}: delta {delta} is not alpha_0 + theta {theta}")
    return AffineData(
        family=spec.family,
        rank=spec.rank,
        graph=graph,
        i0=0,
        delta=delta,
        extending=tuple(i for i, d in enumerate(delta) if d == 1),
        finite_vertices=tuple(range(1, spec.rank + 1)),
        finite=fin,
        exponents=exponents(fin),
        highest_root=theta,
    )


def affine(name: str) -> AffineData:
    return affine_cartan(parse_type(name))


def extending_vertices(data: AffineData) -> list:
    """Vertices with mark 1, each certified by removal and re-extension."""
    certs = []
    for i, d in enumerate(data.delta):
        if d != 1:
            continue
        rest = [k for k in range(data.n) if k != i]
        sub = data.graph.subgraph(rest)
        if not sub.is_finite_type:
            raise CertificateFailure(f"removing vertex {i} leaves an infinite type")
        if not are_isomorphic(affinize(sub), data.graph):
            raise CertificateFailure(f"re-extending the complement of {i} does not give {data.name}")
        certs.append(ExtendingCertificate(i, True, True))
    return certs


def fundamental_group_order(data: AffineData) -> int:
    return int(determinant(data.finite.cartan))


# folding -----------------------------------------------------------------


def generate_group(n: int, generators) -> list:
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in generators]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[k]] for k in range(n))
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(group)


def orbits(n: int, generators) -> list:
    group = generate_group(n, generators)
    seen = set()
    out = []
    for k in range(n):
        if k in seen:
            continue
        orb = sorted({g[k] for g in group})
        seen.update(orb)
        out.append(tuple(orb))
    return out


def fold(graph: CoxeterGraph, generators, name: str = "") -> CoxeterGraph:
    """Quotient of a simply-laced graph by a group of automorphisms.

    Orbits become vertices, ordered by their smallest member.  For adjacent
    orbits I, J the entry ``-c_IJ`` is the number of neighbours a vertex of
    J has in I, equivalently ``|Stab(j)| / |Stab(i) & Stab(j)|``.  With this
    orientation firing the orbit I on the quotient is the same as firing
    every vertex of I on an invariant configuration of the cover.
    """
    n = graph.n
    for g in generators:
        if not _is_automorphism(graph, g):
            raise NotAutomorphism(f"{tuple(g)} is not an automorphism")
    orbs = orbits(n, generators)
    where = {k: idx for idx, orb in enumerate(orbs) for k in orb}
    for orb in orbs:
        for a in orb:
            for b in orb:
                if graph.cartan[a][b] != 0 and a != b:
                    raise AdjacentOrbit(f"orbit {orb} contains adjacent vertices")
    m = len(orbs)
    c = _empty(m)
    for I in range(m):
        for J in range(m):
            if I == J:
                continue
            j = orbs[J][0]
            count = sum(1 for i in orbs[I] if graph.cartan[i][j] != 0)
            if count:
                c[I][J] = -count
    return validate_graph(c, 0, name)


def folding_cover(family: str, rank: int):
    """Simply-laced cover and automorphism generators for a non-simply-laced extended type."""
    if family == "C":
        cover = affine(f"A~{2 * rank - 1}")
        size = 2 * rank
        return cover, [tuple((-k) % size for k in range(size))]
    if family == "B":
        if rank == 2:
            return folding_cover("C", 2)
        cover = affine(f"D~{rank + 1}")
        p = list(range(rank + 2))
        p[rank], p[rank + 1] = rank + 1, rank
        return cover, [tuple(p)]
    if family == "F":
        cover = affine("E~6")
        # Bourbaki 1<->6, 3<->5 fixing 0, 2, 4
        p = [0, 6, 2, 5, 4, 3, 1]
        return cover, [tuple(p)]
    if family == "G":
        cover = affine("D~4")
        # three of the four tips rotated, affine tip 0 fixed
        return cover, [(0, 3, 2, 4, 1)]
    return None


# involution table --------------------------------------------------------


def iota_table(data: AffineData) -> tuple:
    """The diagram automorphism predicted for the involution, per family."""
    fam, n = data.family, data.rank
    size = data.n
    ident = tuple(range(size))
    if fam == "A":
        if n % 2 == 0:
            return ident
        return tuple((k + size // 2) % size for k in range(size))
    if fam == "B":
        if n >= 3 and n % 4 in (0, 3):
            return ident
        p = list(ident)
        # B~2 is the chain 0 - 2 - 1; its flip also swaps 0 and 1
        p[0], p[1] = 1, 0
        return tuple(p)
    if fam == "C":
        return tuple(n - k for k in range(size))
    if fam == "D":
        if n % 4 in (0, 1):
            return ident
        p = list(ident)
        p[0], p[1] = 1, 0
        p[n - 1], p[n] = n, n - 1
        return tuple(p)
    if fam == "E" and n == 7:
        nontrivial = [a for a in data.automorphisms if a != ident]
        if len(nontrivial) != 1:
            raise CertificateFailure("E~7 should have exactly one nontrivial automorphism")
        return nontrivial[0]
    return ident


def catalog_types(max_rank: int = 8, affine_only: bool = True) -> list:
    out = []
    for fam in FAMILIES:
        for r in range(_min_rank(fam), max_rank + 1):
            try:
                out.append(DynkinSpec(fam, r, affine_only).name)
            except InvalidRank:
                continue
    return out


def skew_a2() -> CoxeterGraph:
    """A_2 with an asymmetric odd bond: the standard counterexample matrix."""
    return validate_graph([[2, -2], [Fraction(-1, 2), 2]], 0, "A2-skew")


def skew_affine_a2() -> CoxeterGraph:
    return validate_graph(
        [[2, -2, -1], [Fraction(-1, 2), 2, -1], [-1, -1, 2]], 2, "A~2-skew"
    )


def skew_start() -> tuple:
    return (-2, -2, Scalar.sqrt(2, 3))


PRESETS = {"A2-skew": skew_a2, "A~2-skew": skew_affine_a2}


def graph_for(name: str) -> CoxeterGraph:
    """Resolve a type name or preset to a graph (finite or affine)."""
    if name in PRESETS:
        return PRESETS[name]()
    spec = parse_type(name)
    if spec.affine:
        return affine_cartan(spec).graph
    return dynkin(spec.family, spec.rank)
