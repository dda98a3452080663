"""Bounded joinability search and local-confluence reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .critical_pairs import CriticalPair, enumerate_essential_critical_pairs
from .hypergraph import InterfacedHypergraph
from .iso import invariant, isomorphic
from .rewriting import Derivation, RewriteSystem, one_step_rewrites, rewrite_step

LOCALLY_CONFLUENT = "locally_confluent"
NOT_LOCALLY_CONFLUENT = "not_locally_confluent"
UNKNOWN = "unknown"


def derive_pair(system: RewriteSystem, cp: CriticalPair) -> tuple[Derivation, Derivation]:
    d1 = rewrite_step(cp.source, system.rules[cp.rule_i], cp.match1, cp.rule_i)
    d2 = rewrite_step(cp.source, system.rules[cp.rule_j], cp.match2, cp.rule_j)
    return d1, d2


@dataclass(frozen=True, eq=False)
class JoinabilityResult:
    """Outcome of a bounded search for a common reduct.

    ``joinable`` is ``True`` with witnesses, ``False`` when both closures
    were exhausted without meeting, and ``None`` when a bound was hit.
    """

    joinable: bool | None
    depth: int
    reason: str
    left: tuple[Derivation, ...] = ()
    right: tuple[Derivation, ...] = ()


@dataclass
class _State:
    graph: InterfacedHypergraph
    key: str
    path: tuple[Derivation, ...]


@dataclass
class _Closure:
    states: dict[str, list[_State]] = field(default_factory=dict)
    frontier: list[_State] = field(default_factory=list)
    size: int = 0

    def find(self, g: InterfacedHypergraph, key: str) -> _State | None:
        for s in self.states.get(key, ()):
            if isomorphic(s.graph, g) is not None:
                return s
        return None

    def add(self, state: _State) -> None:
        self.states.setdefault(state.key, []).append(state)
        self.size += 1


def normalise(g: InterfacedHypergraph) -> InterfacedHypergraph:
    return g.relabel()[0]


def _start(g: InterfacedHypergraph) -> _State:
    g = normalise(g)
    return _State(g, invariant(g), ())


def joinable(
    system: RewriteSystem,
    h1: InterfacedHypergraph,
    h2: InterfacedHypergraph,
    max_depth: int = 5,
    max_states: int = 10_000,
) -> JoinabilityResult:
    """Breadth-first search from both graphs for interface-isomorphic reducts."""
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    a, b = _start(h1), _start(h2)
    if a.key == b.key and isomorphic(a.graph, b.graph) is not None:
        return JoinabilityResult(True, 0, "joined")
    sides = (_Closure(), _Closure())
    for side, s in zip(sides, (a, b)):
        side.add(s)
        side.frontier = [s]

    for depth in range(1, max_depth + 1):
        for k in (0, 1):
            side, other = sides[k], sides[1 - k]
            fresh: list[_State] = []
            for s in side.frontier:
                for d in one_step_rewrites(system, s.graph):
                    g = normalise(d.result)
                    key = invariant(g)
                    if side.find(g, key) is not None:
                        continue
                    state = _State(g, key, s.path + (d,))
                    side.add(state)
                    fresh.append(state)
                    meet = other.find(g, key)
                    if meet is not None:
                        left, right = (state, meet) if k == 0 else (meet, state)
                        return JoinabilityResult(True, depth, "joined", left.path, right.path)
                    if sides[0].size + sides[1].size > max_states:
                        return JoinabilityResult(None, depth, "states")
            side.frontier = fresh
        if not sides[0].frontier and not sides[1].frontier:
            return JoinabilityResult(False, depth, "exhausted")
    return JoinabilityResult(None, max_depth, "depth")


@dataclass(frozen=True, eq=False)
class PairReport:
    pair: CriticalPair
    left: Derivation
    right: Derivation
    result: JoinabilityResult


@dataclass(frozen=True, eq=False)
class ConfluenceReport:
    verdict: str
    max_depth: int
    pairs: tuple[PairReport, ...]

    @property
    def unjoined(self) -> list[PairReport]:
        return [p for p in self.pairs if p.result.joinable is not True]


def check_pair(system: RewriteSystem, cp: CriticalPair, max_depth: int = 5, max_states: int = 10_000) -> PairReport:
    d1, d2 = derive_pair(system, cp)
    return PairReport(cp, d1, d2, joinable(system, d1.result, d2.result, max_depth, max_states))


def _check_pair_args(args: tuple) -> PairReport:
    return check_pair(*args)


def verdict_of(results: Iterable[JoinabilityResult]) -> str:
    outcomes = [r.joinable for r in results]
    if any(o is False for o in outcomes):
        return NOT_LOCALLY_CONFLUENT
    if any(o is None for o in outcomes):
        return UNKNOWN
    return LOCALLY_CONFLUENT


def check_local_confluence(
    system: RewriteSystem,
    max_depth: int = 5,
    max_states: int = 10_000,
    jobs: int = 1,
) -> ConfluenceReport:
    """Test every hyperedge-only critical pair for joinability.

    Local confluence is never extrapolated to confluence.
    """
    pairs = list(enumerate_essential_critical_pairs(system, jobs=jobs))
    if jobs <= 1:
        reports = [check_pair(system, cp, max_depth, max_states) for cp in pairs]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_check_pair_args, [(system, cp, max_depth, max_states) for cp in pairs]))
    return ConfluenceReport(verdict_of(r.result for r in reports), max_depth, tuple(reports))
