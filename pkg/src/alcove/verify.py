"""One-shot verification suites behind ``alcove verify``.

Each check either passes (its value lands in ``detail``), fails with the
error it raised, or is skipped when the node gate rules it out.  Reports
contain no timing unless asked, so equal inputs give equal output.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from time import perf_counter

from .catalog import AffineData, affine, catalog_types, graph_for, parse_type
from .catalog import PRESETS, skew_a2, skew_affine_a2, skew_start
from .core import CoxeterGraph, positive_roots
from .errors import (
    AlcoveError,
    CheckFailure,
    DiamondFailure,
    GateConflict,
    GateExceeded,
    NodeCapExceeded,
    NoSinkReached,
)
from .game import explore_plays, play, play_to_termination
from .poset import (
    DEFAULT_GATE,
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
from .scalar import format_scalar
from .strategy import (
    check_diamond,
    check_sinks,
    iota,
    iota_automorphism,
    kappa,
    optimality,
    reverse_symmetry,
    run_substrategy,
    shifted_game_equivalence,
    strategy_tree,
)
from .weyl import check_gamma_homomorphism, factorization_check, translations

GATE_ENV = "ALCOVE_GATE_NODES"

# the standard batch: every affine type the acceptance suite exercises
STANDARD_TYPES = ("A~2", "A~3", "A~4", "B~2", "B~3", "C~2", "C~3", "D~4", "G~2", "F~4")


def resolve_gate(flag: int | None, env: dict | None = None) -> int:
    """Combine ``--gate-nodes`` with the environment; differing values conflict."""
    env = os.environ if env is None else env
    raw = env.get(GATE_ENV)
    from_env = None
    if raw not in (None, ""):
        try:
            from_env = int(raw)
        except ValueError:
            raise GateConflict(f"{GATE_ENV}={raw!r} is not an integer") from None
    if flag is not None and from_env is not None and flag != from_env:
        raise GateConflict(f"--gate-nodes {flag} conflicts with {GATE_ENV}={from_env}")
    gate = flag if flag is not None else from_env
    gate = DEFAULT_GATE if gate is None else gate
    if gate < 0:
        raise GateConflict("node gate must be nonnegative")
    return gate


class _Skip(Exception):
    pass


@dataclass
class VerificationReport:
    target: str
    checks: dict = field(default_factory=dict)
    counters: dict = field(default_factory=dict)
    flagged: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c["status"] in ("pass", "skipped", "counterexample") for c in self.checks.values())

    def run(self, name: str, fn, expect=None):
        """Run ``fn``; with ``expect`` an error class, that error is the success case."""
        t = perf_counter()
        try:
            detail = fn()
        except _Skip as exc:
            entry = {"status": "skipped", "detail": str(exc)}
        except GateExceeded as exc:
            entry = {"status": "skipped", "detail": str(exc)}
        except AlcoveError as exc:
            caught = expect is not None and isinstance(exc, expect)
            entry = {
                "status": "counterexample" if caught else "fail",
                "detail": f"{type(exc).__name__}: {exc}",
            }
        else:
            if expect is None:
                entry = {"status": "pass", "detail": detail}
            else:
                entry = {"status": "fail", "detail": f"expected {expect.__name__}, got {detail!r}"}
        self.checks[name] = entry
        self.timing[name] = round(perf_counter() - t, 4)
        return entry

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "target": self.target,
            "ok": self.ok,
            "checks": self.checks,
            "counters": self.counters,
            "flagged": self.flagged,
        }
        if timing:
            out["timing"] = self.timing
        return out


def _cfg(v) -> list:
    return [format_scalar(x) for x in v]


def _within(gate: int, size: int, what: str):
    if size > gate:
        raise _Skip(f"{what} of size {size} exceeds node gate {gate}")


# affine catalog types -------------------------------------------------------


def verify_affine(data: AffineData, gate: int = DEFAULT_GATE, seed: int = 0) -> VerificationReport:
    rep = VerificationReport(data.name)
    size = poset_size(data)
    rep.counters.update(
        posetSize=size,
        finiteOrder=data.finite_order,
        extending=list(data.extending),
        delta=list(data.delta),
        exponents=list(data.exponents),
    )

    def involution():
        inv = iota(data)
        sigma = iota_automorphism(data, inv)
        return {"iota": {str(a): b for a, b in inv.mapping}, "automorphism": list(sigma)}

    def trees():
        out = {}
        for i in data.extending:
            tr = strategy_tree(data, i, gate=max(gate, 1), seed=seed)
            out[str(i)] = {
                "endVertex": tr.end_vertex,
                "length": tr.length,
                "score": _cfg(tr.score),
                "plays": tr.plays,
                "exhaustive": tr.exhaustive,
            }
        return out

    def sinks():
        _within(gate, data.finite_order, "orbit")
        r = check_sinks(data)
        return {"orbit": r.orbit_size, "sinks": len(r.sinks)}

    def shifted():
        _within(gate, size, "poset")
        out = {}
        for rule in ("height", "reflection"):
            r = shifted_game_equivalence(data, k=kappa(data, rule))
            out[rule] = {"kappa": format_scalar(r.kappa), "states": r.states, "endVertex": r.end_vertex}
        return out

    def optimal():
        _within(gate, data.finite_order, "search space")
        run_len, best = optimality(data)
        return {"strategy": run_len, "shortest": best}

    def reversal():
        return {str(i): reverse_symmetry(data, i).end_vertex for i in data.extending}

    def lengths():
        datums = translations(data)
        got = [d.length for d in datums]
        want = list(data.translation_root_sums)
        if got != want:
            raise CheckFailure(f"translation lengths {got} differ from root sums {want}")
        g = check_gamma_homomorphism(data, datums)
        return {"lengths": got, "gammaOrder": g.order}

    def factorization():
        radius = 4 if data.n <= 3 else 3
        _within(gate, 3 ** radius * data.n * size, "factorization ball")
        r = factorization_check(data, radius)
        return {"radius": r.radius, "ball": r.ball_size}

    def identities():
        r = verify_identities(data, gate)
        if any(v == "skipped" for v in r.clauses.values()):
            rep.counters["identityClausesSkipped"] = sorted(k for k, v in r.clauses.items() if v == "skipped")
        return r.to_json()

    def hilbert():
        _within(gate, size, "poset")
        emp = hilbert_empirical(build_poset(data))
        closed = hilbert_closed_form(data)
        if emp != closed:
            raise CheckFailure(f"empirical {emp} differs from closed form {closed}")
        return {"polynomial": str(emp), "assignments": len(exponent_assignment(data))}

    def degree():
        r = top_degree_report(data, gate)
        if r["flagged"]:
            rep.flagged.append(r)
        return r

    def dual():
        r = hypercube_dual(data, gate)
        return {"chambers": r.chambers, "edges": r.edges}

    def interval():
        r = interval_isomorphism(data, gate)
        return {"size": r.size, "topLength": r.top_length}

    rep.run("involution", involution)
    rep.run("strategyTree", trees)
    rep.run("sinks", sinks)
    rep.run("shiftedGame", shifted)
    rep.run("optimality", optimal)
    rep.run("reversal", reversal)
    rep.run("translationLengths", lengths)
    rep.run("factorization", factorization)
    rep.run("identities", identities)
    rep.run("hilbert", hilbert)
    rep.run("topDegree", degree)
    rep.run("hypercubeDual", dual)
    rep.run("interval", interval)
    if data.family == "A":
        from .typea import check_length_formula, hypercube_product

        def type_a():
            n = data.n
            r = check_length_formula(n, 3 if n <= 4 else 2)
            _within(gate, size, "poset")
            if hypercube_product(n) != hilbert_empirical(build_poset(data)):
                raise CheckFailure("hypercube product differs from the poset")
            return {"windows": r.checked}

        rep.run("typeA", type_a)
    return rep


# finite types and bare graphs -----------------------------------------------


def verify_graph(graph: CoxeterGraph, gate: int = DEFAULT_GATE, seed: int = 0) -> VerificationReport:
    rep = VerificationReport(graph.name or "graph")
    rep.counters.update(n=graph.n, finiteType=graph.is_finite_type, affine=graph.is_affine)
    if graph.is_finite_type:
        start = tuple(-1 for _ in range(graph.n))

        def longest():
            roots = len(positive_roots(graph))
            lens = {
                play_to_termination(graph, start, p).length
                for p in ("min-index", "most-negative", f"random:{seed}")
            }
            if lens != {roots}:
                raise CheckFailure(f"play lengths {sorted(lens)} differ from {roots} positive roots")
            return {"positiveRoots": roots}

        def convergence():
            _within(gate, 2 ** graph.n * 8, "play tree")
            out = explore_plays(graph, start, node_cap=max(gate, 1) * 50)
            if not out.unique:
                raise CheckFailure(f"{len(out.outcomes)} distinct outcomes")
            length, end, _ = out.single()
            return {"length": length, "end": _cfg(end), "plays": out.plays}

        rep.run("longestElement", longest)
        rep.run("strongConvergence", convergence)
        data = _affinization(graph)
        if data is not None:
            rep.counters["affinization"] = data.name

            def curious():
                left, right = curious_identity(data)
                if left != right:
                    raise CheckFailure(f"{left} != {right}")
                return [left, right]

            def lengths():
                _within(gate, data.finite_order, "translation play")
                got = [d.length for d in translations(data)]
                if got != list(data.translation_root_sums):
                    raise CheckFailure(f"{got} differs from {list(data.translation_root_sums)}")
                return got

            rep.run("curiousIdentity", curious)
            rep.run("translationLengths", lengths)
    else:
        rep.run("classification", lambda: {"note": "neither finite nor catalog affine"})
    return rep


def _affinization(graph: CoxeterGraph):
    try:
        spec = parse_type(graph.name)
    except AlcoveError:
        return None
    return affine(f"{spec.family}~{spec.rank}")


# designed counterexamples ---------------------------------------------------


def verify_skew(name: str, expect_counterexample: bool, gate: int = DEFAULT_GATE) -> VerificationReport:
    rep = VerificationReport(name)
    expect_d = DiamondFailure if expect_counterexample else None
    expect_s = NoSinkReached if expect_counterexample else None
    expect_n = NodeCapExceeded if expect_counterexample else None
    g2 = skew_a2()
    v = (-2, -2)

    def sequences():
        a = play(g2, v, (1, 0, 1))
        b = play(g2, v, (0, 1))
        return {"first": [_cfg(c) for c in a.configs], "second": [_cfg(c) for c in b.configs]}

    rep.run("sequences", sequences)
    rep.run("diamond", lambda: check_diamond(g2, v, 0, 1).meet, expect=expect_d)
    if name == "A~2-skew":
        g3 = skew_affine_a2()
        start = skew_start()
        rep.counters.update(nullRoot=g3.null_root is not None, start=_cfg(start))
        rep.run(
            "strategy",
            lambda: _cfg(run_substrategy(g3, start, step_cap=max(gate, 1)).record.end),
            expect=expect_s,
        )
        rep.run(
            "playTree",
            lambda: explore_plays(g3, start, -1, node_cap=max(gate, 1)).nodes,
            expect=expect_n,
        )
    return rep


# dispatch -------------------------------------------------------------------


def verify_target(name: str, gate: int = DEFAULT_GATE, seed: int = 0, expect_counterexample: bool = False):
    if name in PRESETS:
        return verify_skew(name, expect_counterexample, gate)
    spec = parse_type(name)
    if spec.affine:
        return verify_affine(affine(name), gate, seed)
    return verify_graph(graph_for(name), gate, seed)


def run_verify(
    names,
    gate: int = DEFAULT_GATE,
    seed: int = 0,
    expect_counterexample: bool = False,
    workers: int = 1,
) -> list:
    """Verify every name in ``names``; results come back in input order."""
    names = list(names)
    for n in names:
        if n not in PRESETS:
            parse_type(n)  # fail fast on unknown names
    jobs = [(n, gate, seed, expect_counterexample) for n in names]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_verify_one, jobs))
    return [_verify_one(j) for j in jobs]


def _verify_one(job) -> VerificationReport:
    return verify_target(*job)


def expand_selector(selector: str | None, max_rank: int = 8) -> list:
    """``None``/``standard`` -> the standard batch; ``catalog`` -> every affine type."""
    if selector in (None, "", "standard"):
        return list(STANDARD_TYPES)
    if selector == "catalog":
        return catalog_types(max_rank)
    return [s.strip() for s in selector.split(",") if s.strip()]
