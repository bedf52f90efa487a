"""Playing the numbers game: sequenced play, policies, orbits and play trees."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable

from .core import CoxeterGraph, apply_generator, fire, format_configuration, pair
from .errors import (
    IllegalMove,
    NodeCapExceeded,
    NonConvergent,
    StepCapExceeded,
    WontTerminate,
)
from .scalar import format_scalar, sign, simplify

DEFAULT_CAP = 10**6

Policy = Callable[[tuple, list], int]


@dataclass(frozen=True)
class PlayRecord:
    start: tuple
    seq: tuple
    configs: tuple
    score: tuple

    @property
    def end(self) -> tuple:
        return self.configs[-1]

    @property
    def length(self) -> int:
        return len(self.seq)

    def to_json(self) -> dict:
        return {
            "start": [format_scalar(x) for x in self.start],
            "seq": list(self.seq),
            "configs": [[format_scalar(x) for x in c] for c in self.configs],
            "score": [format_scalar(x) for x in self.score],
            "end": [format_scalar(x) for x in self.end],
            "length": self.length,
        }


class _Recorder:
    def __init__(self, v):
        self.start = tuple(v)
        self.configs = [self.start]
        self.seq = []
        self.score = [0] * len(v)

    def push(self, i, w):
        self.score[i] = simplify(self.score[i] + self.configs[-1][i])
        self.seq.append(i)
        self.configs.append(w)

    def record(self) -> PlayRecord:
        return PlayRecord(self.start, tuple(self.seq), tuple(self.configs), tuple(self.score))


def play(graph: CoxeterGraph, v, seq) -> PlayRecord:
    """Fire the vertices of ``seq`` in order, failing on the first illegal move."""
    rec = _Recorder(v)
    for step, i in enumerate(seq):
        cur = rec.configs[-1]
        if sign(cur[i]) >= 0:
            raise IllegalMove(step, i, format_scalar(cur[i]))
        rec.push(i, fire(graph, cur, i))
    return rec.record()


def score_vector(record: PlayRecord) -> tuple:
    return record.score


# policies ----------------------------------------------------------------


def _min_index(v, candidates):
    return candidates[0]


def _most_negative(v, candidates):
    best = candidates[0]
    for i in candidates[1:]:
        if v[i] < v[best]:
            best = i
    return best


def make_policy(spec="min-index") -> Policy:
    """Resolve ``min-index``, ``most-negative`` or ``random:SEED``."""
    if callable(spec):
        return spec
    if spec == "min-index":
        return _min_index
    if spec == "most-negative":
        return _most_negative
    if isinstance(spec, str) and spec.startswith("random:"):
        rng = random.Random(int(spec.split(":", 1)[1]))
        return lambda v, candidates: rng.choice(candidates)
    raise ValueError(f"unknown policy {spec!r}")


def candidates(v, threshold=0) -> list:
    """Vertices whose amplitude is strictly below ``threshold``."""
    return [i for i, x in enumerate(v) if sign(x - threshold) < 0]


def play_greedy(
    graph: CoxeterGraph,
    v,
    policy="min-index",
    threshold=0,
    step_cap: int = DEFAULT_CAP,
    detect_cycles: bool = False,
):
    """Fire amplitudes below ``threshold`` until none remain.

    Returns ``(record, cycled)``; ``cycled`` is true when ``detect_cycles``
    is set and a configuration repeated (the record then stops there).
    """
    choose = make_policy(policy)
    rec = _Recorder(v)
    seen = {rec.start} if detect_cycles else None
    while True:
        cur = rec.configs[-1]
        cand = candidates(cur, threshold)
        if not cand:
            return rec.record(), False
        if len(rec.seq) >= step_cap:
            raise StepCapExceeded(f"no termination after {step_cap} moves")
        i = choose(cur, cand)
        w = apply_generator(graph, cur, i)
        rec.push(i, w)
        if seen is not None:
            if w in seen:
                return rec.record(), True
            seen.add(w)


def play_to_termination(graph: CoxeterGraph, v, policy="min-index", step_cap: int = DEFAULT_CAP) -> PlayRecord:
    delta = graph.null_root
    if delta is not None and candidates(v) and sign(pair(delta, v)) <= 0:
        raise WontTerminate(
            f"delta . v = {format_scalar(pair(delta, v))} <= 0 on an affine graph"
        )
    record, _ = play_greedy(graph, v, policy, 0, step_cap)
    return record


@dataclass(frozen=True)
class Outcome:
    """Summary of every maximal play from one configuration."""

    outcomes: frozenset  # of (length, end, score)
    plays: int  # number of distinct maximal firing sequences
    nodes: int  # configurations visited

    @property
    def unique(self) -> bool:
        return len(self.outcomes) == 1

    def single(self):
        (o,) = self.outcomes
        return o


def explore_plays(graph: CoxeterGraph, v, threshold=0, node_cap: int = DEFAULT_CAP) -> Outcome:
    """Exhaustive memoised search of the tree of maximal plays.

    Each configuration contributes the set of ``(length, end, score)``
    triples reachable from it, so the cost is linear in the number of
    distinct configurations rather than in the number of sequences.
    """
    n = len(v)
    start = tuple(v)
    memo: dict = {}
    counts: dict = {}
    active = set()
    stack = [(start, False)]
    while stack:
        cur, expanded = stack.pop()
        if cur in memo:
            continue
        if not expanded and cur in active:
            raise NonConvergent(f"play revisits {format_configuration(cur)}")
        cand = candidates(cur, threshold)
        if not cand:
            memo[cur] = {(0, cur, (0,) * n)}
            counts[cur] = 1
            continue
        kids = [(i, apply_generator(graph, cur, i)) for i in cand]
        if not expanded:
            active.add(cur)
            stack.append((cur, True))
            for _, w in kids:
                if w in active:
                    raise NonConvergent(f"play revisits {format_configuration(w)}")
                if w not in memo:
                    stack.append((w, False))
            if len(memo) + len(stack) > node_cap:
                raise NodeCapExceeded(f"play tree exceeds {node_cap} configurations")
            continue
        out = set()
        total = 0
        for i, w in kids:
            total += counts[w]
            for length, end, score in memo[w]:
                s = list(score)
                s[i] = simplify(s[i] + cur[i])
                out.add((length + 1, end, tuple(s)))
        memo[cur] = out
        counts[cur] = total
        active.discard(cur)
    return Outcome(frozenset(memo[start]), counts[start], len(memo))


# orbits ------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitGraph:
    nodes: tuple  # canonically sorted configurations
    edges: tuple  # (source index, target index, fired vertex), sorted

    def index(self) -> dict:
        return {v: k for k, v in enumerate(self.nodes)}

    def out_edges(self) -> dict:
        out = {k: [] for k in range(len(self.nodes))}
        for a, b, i in self.edges:
            out[a].append((b, i))
        return out

    def to_json(self) -> dict:
        return {
            "nodes": [[format_scalar(x) for x in v] for v in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self, name="orbit") -> str:
        lines = [f"digraph {name} {{"]
        for k, v in enumerate(self.nodes):
            lines.append(f'  n{k} [label="{format_configuration(v)}"];')
        for a, b, i in self.edges:
            lines.append(f'  n{a} -> n{b} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def orbit(graph: CoxeterGraph, v, node_cap: int = DEFAULT_CAP) -> OrbitGraph:
    """All configurations reachable by firing and un-firing, with firing edges."""
    start = tuple(v)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i, x in enumerate(cur):
            if x == 0:
                continue
            w = apply_generator(graph, cur, i)
            if w not in seen:
                seen.add(w)
                if len(seen) > node_cap:
                    raise NodeCapExceeded(f"orbit exceeds {node_cap} configurations")
                queue.append(w)
    nodes = tuple(sorted(seen))
    index = {u: k for k, u in enumerate(nodes)}
    edges = []
    for k, u in enumerate(nodes):
        for i in candidates(u):
            edges.append((k, index[apply_generator(graph, u, i)], i))
    return OrbitGraph(nodes, tuple(sorted(edges)))
