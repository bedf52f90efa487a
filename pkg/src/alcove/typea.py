"""Affine permutations of type A and the gamma-vector bijection.

A window ``(s_1, ..., s_n)`` stands for the bijection of the integers with
``s_{i+n} = s_i + n``.  Its boundary is the configuration on the n-cycle
whose coordinate ``k`` is ``s_{k+1} - s_k`` (with ``s_0 = s_n - n``), so
coordinate 0 sits on the affine vertex of the catalog numbering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .catalog import affine
from .errors import FormulaMismatch, InvalidWindow, NotDominant
from .game import play_to_termination
from .polynomial import IntPolynomial, product


@dataclass(frozen=True)
class AffinePermutation:
    window: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        n = len(w)
        if n < 2:
            raise InvalidWindow("windows need at least two entries")
        if len({x % n for x in w}) != n:
            raise InvalidWindow(f"{w}: residues mod {n} are not distinct")
        if sum(w) != n * (n + 1) // 2:
            raise InvalidWindow(f"{w}: entries must sum to {n * (n + 1) // 2}")
        object.__setattr__(self, "window", w)

    @property
    def n(self) -> int:
        return len(self.window)

    def __getitem__(self, i: int) -> int:
        """``s_i`` for any integer ``i`` (1-based, extended periodically)."""
        n = self.n
        q, r = divmod(i - 1, n)
        return self.window[r] + q * n

    def swap(self, k: int) -> "AffinePermutation":
        """Right multiplication by the simple transposition at ``k`` (0 <= k < n)."""
        n = self.n
        w = list(self.window)
        if k == 0:
            w[0], w[-1] = self.window[-1] - n, self.window[0] + n
        else:
            w[k - 1], w[k] = w[k], w[k - 1]
        return AffinePermutation(tuple(w))

    def is_dominant(self) -> bool:
        return all(a < b for a, b in zip(self.window, self.window[1:]))


def boundary(s: AffinePermutation) -> tuple:
    return tuple(s[k + 1] - s[k] for k in range(s.n))


def gamma_vector(s: AffinePermutation) -> tuple:
    """``gamma_i`` counts the allowed integers strictly between ``s_i`` and ``s_{i+1}``."""
    if not s.is_dominant():
        raise NotDominant(f"{s.window} is not increasing")
    n = s.n
    w = s.window
    out = []
    for i in range(n - 1):
        banned = {x % n for x in w[i + 1 :]}
        out.append(sum(1 for t in range(w[i] + 1, w[i + 1]) if t % n not in banned))
    return tuple(out)


def gamma_inverse(gamma, n: int) -> AffinePermutation:
    """Rebuild the dominant window greedily from the top entry down."""
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != n - 1 or any(g < 0 for g in gamma):
        raise InvalidWindow(f"gamma must be {n - 1} nonnegative integers")
    w = [0] * n
    for i in range(n - 2, -1, -1):
        banned = {x % n for x in w[i + 1 :]}
        t, seen = w[i + 1] - 1, -1
        while True:
            if t % n not in banned:
                seen += 1
                if seen == gamma[i]:
                    break
            t -= 1
        w[i] = t
    shift = (n * (n + 1) // 2 - sum(w)) // n
    return AffinePermutation(tuple(x + shift for x in w))


def length_by_game(s: AffinePermutation) -> int:
    return play_to_termination(affine(f"A~{s.n - 1}").graph, boundary(s)).length


def formula_length(gamma) -> int:
    n = len(gamma) + 1
    return sum((n - i) * g for i, g in enumerate(gamma, start=1))


@dataclass(frozen=True)
class LengthReport:
    n: int
    bound: int
    checked: int


def check_length_formula(n: int, bound: int) -> LengthReport:
    """Game length of every dominant window with gamma entries ``<= bound``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    graph = affine(f"A~{n - 1}").graph
    count = 0
    for gamma in itertools.product(range(bound + 1), repeat=n - 1):
        s = gamma_inverse(gamma, n)
        if gamma_vector(s) != gamma:
            raise FormulaMismatch(f"gamma {gamma} does not round-trip through {s.window}")
        got = play_to_termination(graph, boundary(s)).length
        want = formula_length(gamma)
        if got != want:
            raise FormulaMismatch(f"{s.window}: game length {got}, formula {want}")
        count += 1
    return LengthReport(n, bound, count)


def hypercube_windows(n: int) -> list:
    return [gamma_inverse(g, n) for g in itertools.product(*(range(i) for i in range(1, n)))]


def hypercube_hilbert(n: int) -> IntPolynomial:
    """Sum of ``t^length`` over gamma vectors with ``0 <= gamma_i < i``."""
    out = IntPolynomial()
    for g in itertools.product(*(range(i) for i in range(1, n))):
        out = out + IntPolynomial.monomial(formula_length(g))
    return out


def hypercube_product(n: int) -> IntPolynomial:
    """``prod_i (1 + t^(n-i) + ... + t^((i-1)(n-i)))``."""
    return product(IntPolynomial.geometric(i, n - i) for i in range(1, n))
