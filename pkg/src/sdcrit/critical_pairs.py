"""Enumeration of critical pairs by gluing left-hand sides.

A candidate source ``S`` is obtained from ``L_i + L_j`` in two rounds:
first same-label hyperedges across the two sides are glued (one
independent edge set per label), then optionally inputs of one side are
glued to outputs of the other.  A candidate is kept when
``in(S) -> S <- out(S)`` is monogamous acyclic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence, TypeVar

from .hypergraph import (
    Edge,
    Hypergraph,
    InterfacedHypergraph,
    Morphism,
    coequalizer,
    coproduct,
    discrete,
    identity,
    in_nodes,
    is_monogamous_acyclic,
    out_nodes,
)
from .rewriting import RewriteSystem

T = TypeVar("T", bound=Hashable)
IndependentEdgeSet = tuple[tuple[T, T], ...]


class GluingError(ValueError):
    pass


def enumerate_k_independent_edge_sets(a: Sequence[T], b: Sequence[T], k: int) -> Iterator[IndependentEdgeSet]:
    for x in itertools.combinations(a, k):
        for y in itertools.permutations(b, k):
            yield tuple(zip(x, y))


def enumerate_independent_edge_sets(a: Sequence[T], b: Sequence[T]) -> Iterator[IndependentEdgeSet]:
    for k in range(min(len(a), len(b)) + 1):
        yield from enumerate_k_independent_edge_sets(a, b, k)


def count_independent_edge_sets(n: int, m: int) -> int:
    from math import comb, factorial

    return sum(factorial(k) * comb(n, k) * comb(m, k) for k in range(min(n, m) + 1))


@dataclass(frozen=True, eq=False)
class GluingScheme:
    gamma: Hypergraph
    proj1: Morphism
    proj2: Morphism


def induced_hypergraph(
    left: Hypergraph,
    right: Hypergraph,
    edge_pairs: Iterable[tuple[str, str]],
    node_pairs: Iterable[tuple[str, str]] = (),
    into: tuple[Hypergraph, Morphism, Morphism] | None = None,
) -> GluingScheme:
    """Gluing scheme for the given cross pairs of edges (and extra nodes).

    Each edge pair contributes one hyperedge together with its positionwise
    source and target node pairs.  The projections land in ``left + right``
    (or in ``into``, a precomputed coproduct with its injections).
    """
    total, inj1, inj2 = into if into is not None else coproduct(left, right)
    nodes: dict[tuple[str, str], str] = {}

    def pair_node(a: str, b: str) -> str:
        return nodes.setdefault((a, b), f"({a},{b})")

    edges = []
    p1n: dict[str, str] = {}
    p2n: dict[str, str] = {}
    p1e: dict[str, str] = {}
    p2e: dict[str, str] = {}
    for a, b in edge_pairs:
        ea, eb = left.edge(a), right.edge(b)
        if ea.label != eb.label:
            raise GluingError(f"cannot glue {a!r} ({ea.label}) with {b!r} ({eb.label})")
        srcs = tuple(pair_node(v, w) for v, w in zip(ea.sources, eb.sources))
        tgts = tuple(pair_node(v, w) for v, w in zip(ea.targets, eb.targets))
        eid = f"({a},{b})"
        edges.append(Edge(eid, ea.label, srcs, tgts))
        p1e[eid], p2e[eid] = inj1.edge_map[a], inj2.edge_map[b]
    for a, b in node_pairs:
        pair_node(a, b)
    for (a, b), n in nodes.items():
        p1n[n], p2n[n] = inj1.node_map[a], inj2.node_map[b]
    gamma = Hypergraph(tuple(nodes.values()), tuple(edges), total.signature)
    return GluingScheme(gamma, Morphism(gamma, total, p1n, p1e), Morphism(gamma, total, p2n, p2e))


@dataclass(frozen=True, eq=False)
class HyperedgeGluing:
    """``L_i + L_j`` glued along an independent set of hyperedge pairs."""

    rule_i: int
    rule_j: int
    edge_scheme: tuple[tuple[str, str], ...]
    scheme: GluingScheme
    sum: Hypergraph
    inj1: Morphism
    inj2: Morphism
    epi: Morphism  # L_i + L_j ->> S_gamma

    @property
    def graph(self) -> Hypergraph:
        return self.epi.target

    def _restricted(self, inj: Morphism, ports: Iterable[str], pool: list[str]) -> list[str]:
        hit = {self.epi.node_map[inj.node_map[v]] for v in ports}
        return [v for v in pool if v in hit]

    def io_sets(self) -> tuple[list[str], list[str], list[str], list[str]]:
        """``(I1, I2, O1, O2)``: surviving inputs/outputs of each side, in ``S`` order."""
        s_in, s_out = in_nodes(self.graph), out_nodes(self.graph)
        li, lj = self.inj1.source, self.inj2.source
        return (
            self._restricted(self.inj1, in_nodes(li), s_in),
            self._restricted(self.inj2, in_nodes(lj), s_in),
            self._restricted(self.inj1, out_nodes(li), s_out),
            self._restricted(self.inj2, out_nodes(lj), s_out),
        )


@dataclass(frozen=True, eq=False)
class CriticalPair:
    rule_i: int
    rule_j: int
    edge_scheme: tuple[tuple[str, str], ...]
    node_scheme: tuple[tuple[str, str], ...]
    source: InterfacedHypergraph
    epi: Morphism  # L_i + L_j ->> S
    match1: Morphism
    match2: Morphism
    parent: Morphism  # L_i + L_j ->> S_gamma, before any node gluing
    node_gluing: Morphism  # S_gamma ->> S

    def glued_edges(self) -> list[tuple[str, str]]:
        return _cross_pairs(self.match1.edge_map, self.match2.edge_map)

    def glued_nodes(self) -> list[tuple[str, str]]:
        """All ``(node of L_i, node of L_j)`` pairs sent to the same node of ``S``."""
        return _cross_pairs(self.match1.node_map, self.match2.node_map)


def _cross_pairs(m1: dict[str, str], m2: dict[str, str]) -> list[tuple[str, str]]:
    back: dict[str, str] = {}
    for b, img in m2.items():
        back.setdefault(img, b)
    return [(a, back[img]) for a, img in m1.items() if img in back]


def _edges_by_label(g: Hypergraph, labels: Sequence[str]) -> list[list[str]]:
    return [[e.id for e in g.edges if e.label == lab] for lab in labels]


def _label_order(system: RewriteSystem, li: Hypergraph, lj: Hypergraph) -> list[str]:
    labels = list(system.signature.labels)
    for e in (*li.edges, *lj.edges):
        if e.label not in labels:
            labels.append(e.label)
    return labels


def enumerate_hyperedge_gluings(system: RewriteSystem, i: int, j: int) -> Iterator[HyperedgeGluing]:
    """Gluings of ``L_i + L_j`` along at least one pair of same-label hyperedges.

    One independent edge set is chosen per label and the choices are merged
    (a Cartesian product over labels).  No acyclicity filter is applied here.
    """
    li, lj = system.rules[i].left.graph, system.rules[j].left.graph
    labels = _label_order(system, li, lj)
    per_label = [
        list(enumerate_independent_edge_sets(a, b))
        for a, b in zip(_edges_by_label(li, labels), _edges_by_label(lj, labels))
    ]
    into = coproduct(li, lj)
    for choice in itertools.product(*per_label):
        pairs = tuple(p for chosen in choice for p in chosen)
        if not pairs:
            continue
        scheme = induced_hypergraph(li, lj, pairs, into=into)
        _, epi = coequalizer(scheme.proj1, scheme.proj2)
        yield HyperedgeGluing(i, j, pairs, scheme, into[0], into[1], into[2], epi)


def node_gluing_schemes(hg: HyperedgeGluing) -> Iterator[tuple[tuple[str, str], ...]]:
    """Input/output gluings: independent edge sets on ``(I1, O2)`` then on ``(I2, O1)``."""
    i1, i2, o1, o2 = hg.io_sets()
    seen = set()
    for scheme in enumerate_independent_edge_sets(i1, o2):
        seen.add(frozenset(scheme))
        yield scheme
    # set union: an edge set present in both families is produced once
    for scheme in enumerate_independent_edge_sets(i2, o1):
        if frozenset(scheme) not in seen:
            yield scheme


def glue_nodes(s: Hypergraph, pairs: Sequence[tuple[str, str]]) -> Morphism:
    if not pairs:
        return identity(s)
    gamma = discrete([f"({a},{b})" for a, b in pairs], s.signature)
    p1 = Morphism(gamma, s, {n: a for n, (a, _) in zip(gamma.nodes, pairs)}, {})
    p2 = Morphism(gamma, s, {n: b for n, (_, b) in zip(gamma.nodes, pairs)}, {})
    return coequalizer(p1, p2)[1]


def _candidate(hg: HyperedgeGluing, node_scheme: tuple[tuple[str, str], ...]) -> CriticalPair | None:
    eps2 = glue_nodes(hg.graph, node_scheme)
    s = eps2.target
    if not is_monogamous_acyclic(s):
        return None
    epi = hg.epi.then(eps2)
    m1, m2 = hg.inj1.then(epi), hg.inj2.then(epi)
    # the closure of the gluing may still identify two elements of one side
    if not (m1.is_mono() and m2.is_mono()):
        return None
    source = InterfacedHypergraph(s, tuple(in_nodes(s)), tuple(out_nodes(s)))
    return CriticalPair(hg.rule_i, hg.rule_j, hg.edge_scheme, node_scheme, source, epi, m1, m2, hg.epi, eps2)


def rule_pairs(system: RewriteSystem, mirrors: bool = True) -> list[tuple[int, int]]:
    """Ordered rule pairs; ``mirrors=False`` drops ``(j, i)`` whenever ``i < j``."""
    n = len(system.rules)
    return [(i, j) for i in range(n) for j in range(n) if mirrors or i <= j]


def all_critical_pairs_for(system: RewriteSystem, i: int, j: int) -> Iterator[CriticalPair]:
    for hg in enumerate_hyperedge_gluings(system, i, j):
        for node_scheme in node_gluing_schemes(hg):
            cp = _candidate(hg, node_scheme)
            if cp is not None:
                yield cp


def essential_critical_pairs_for(system: RewriteSystem, i: int, j: int) -> Iterator[CriticalPair]:
    for hg in enumerate_hyperedge_gluings(system, i, j):
        cp = _candidate(hg, ())
        if cp is not None:
            yield cp


def _collect(args: tuple[RewriteSystem, int, int, bool]) -> list[CriticalPair]:
    system, i, j, essential = args
    produce = essential_critical_pairs_for if essential else all_critical_pairs_for
    return list(produce(system, i, j))


def _enumerate(
    system: RewriteSystem,
    essential: bool,
    pairs: Iterable[tuple[int, int]] | None,
    mirrors: bool,
    jobs: int,
) -> Iterator[CriticalPair]:
    todo = list(pairs) if pairs is not None else rule_pairs(system, mirrors)
    if jobs <= 1:
        produce = essential_critical_pairs_for if essential else all_critical_pairs_for
        for i, j in todo:
            yield from produce(system, i, j)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves submission order, so output order is independent of jobs
        for batch in pool.map(_collect, [(system, i, j, essential) for i, j in todo]):
            yield from batch


def enumerate_all_critical_pairs(
    system: RewriteSystem,
    pairs: Iterable[tuple[int, int]] | None = None,
    mirrors: bool = True,
    jobs: int = 1,
) -> Iterator[CriticalPair]:
    """Every critical pair: hyperedge gluings followed by input/output gluings."""
    return _enumerate(system, False, pairs, mirrors, jobs)


def enumerate_essential_critical_pairs(
    system: RewriteSystem,
    pairs: Iterable[tuple[int, int]] | None = None,
    mirrors: bool = True,
    jobs: int = 1,
) -> Iterator[CriticalPair]:
    """Critical pairs that glue hyperedges only; enough to decide local confluence."""
    return _enumerate(system, True, pairs, mirrors, jobs)


def is_parallel(cp: CriticalPair) -> bool:
    """No hyperedges glued, and every glued node pair sits in both rule interfaces."""
    if cp.glued_edges():
        return False
    li, lj = cp.match1.source, cp.match2.source
    ports_i = set(in_nodes(li)) | set(out_nodes(li))
    ports_j = set(in_nodes(lj)) | set(out_nodes(lj))
    return all(a in ports_i and b in ports_j for a, b in cp.glued_nodes())


def _induced_bijection(pairs: Iterable[tuple[Morphism, Morphism]]) -> bool:
    """Do the ``(f, g)`` pairs induce a well-defined bijection ``f(x) -> g(x)``?"""
    nmap: dict[str, str] = {}
    emap: dict[str, str] = {}
    for f, g in pairs:
        for x, img in f.node_map.items():
            if nmap.setdefault(img, g.node_map[x]) != g.node_map[x]:
                return False
        for x, img in f.edge_map.items():
            if emap.setdefault(img, g.edge_map[x]) != g.edge_map[x]:
                return False
    return len(set(nmap.values())) == len(nmap) and len(set(emap.values())) == len(emap)


def same_critical_pair(a: CriticalPair, b: CriticalPair, mirrors: bool = True) -> bool:
    """Is there an isomorphism of sources commuting with both matches?

    ``[m1, m2]`` is epi, so such an isomorphism is unique when it exists: it
    sends ``m1(x)`` to ``m1'(x)`` and ``m2(y)`` to ``m2'(y)``.  Being a graph
    isomorphism it maps ``in(S)``/``out(S)`` onto ``in(S')``/``out(S')``.
    With ``mirrors=False`` the swapped pair (rules and matches exchanged)
    also counts as the same.
    """
    if len(a.source.graph.nodes) != len(b.source.graph.nodes) or len(a.source.graph.edges) != len(
        b.source.graph.edges
    ):
        return False
    if (a.rule_i, a.rule_j) == (b.rule_i, b.rule_j) and _induced_bijection(
        [(a.match1, b.match1), (a.match2, b.match2)]
    ):
        return True
    if mirrors:
        return False
    return (a.rule_i, a.rule_j) == (b.rule_j, b.rule_i) and _induced_bijection(
        [(a.match1, b.match2), (a.match2, b.match1)]
    )


def is_trivial(cp: CriticalPair) -> bool:
    """Self-overlap of a rule along the identity: both derivations coincide."""
    return (
        cp.rule_i == cp.rule_j
        and cp.match1.node_map == cp.match2.node_map
        and cp.match1.edge_map == cp.match2.edge_map
    )


def iter_unique(pairs: Iterable[CriticalPair], mirrors: bool = True, trivial: bool = True) -> Iterator[CriticalPair]:
    """Lazily yield the first of each class of equivalent critical pairs.

    ``mirrors=False`` also identifies a pair with its swap; ``trivial=False``
    drops identity self-overlaps.
    """
    buckets: dict[tuple, list[CriticalPair]] = {}
    for cp in pairs:
        if not trivial and is_trivial(cp):
            continue
        rules = (cp.rule_i, cp.rule_j) if mirrors else tuple(sorted((cp.rule_i, cp.rule_j)))
        bucket = buckets.setdefault(rules, [])
        if any(same_critical_pair(other, cp, mirrors) for other in bucket):
            continue
        bucket.append(cp)
        yield cp


def dedup_up_to_iso(pairs: Iterable[CriticalPair], mirrors: bool = True, trivial: bool = True) -> list[CriticalPair]:
    return list(iter_unique(pairs, mirrors, trivial))
