"""Σ-labelled hypergraphs, morphisms and their set-theoretic colimits.

Everything here is immutable: constructions return new graphs and never
touch their inputs.  Node and edge identifiers are opaque strings and the
order in which nodes and edges were given is preserved and treated as the
canonical total order of the graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


class HypergraphError(ValueError):
    pass


class SignatureError(HypergraphError):
    pass


class MorphismError(HypergraphError):
    pass


class InconsistentGluing(HypergraphError):
    """Two hyperedges with different labels were identified."""


class NoPushoutComplement(HypergraphError):
    pass


class Signature:
    """Finite set of ``(label, arity, coarity)`` triples, unique per label."""

    __slots__ = ("_arities",)

    def __init__(self, entries: Iterable[tuple[str, int, int]] = ()):
        arities: dict[str, tuple[int, int]] = {}
        for label, arity, coarity in entries:
            if arity < 0 or coarity < 0:
                raise SignatureError(f"negative arity for label {label!r}")
            known = arities.get(label)
            if known is not None and known != (arity, coarity):
                raise SignatureError(
                    f"label {label!r} declared as {known} and {(arity, coarity)}"
                )
            arities[label] = (arity, coarity)
        self._arities = arities

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> Signature:
        return cls((e.label, len(e.sources), len(e.targets)) for e in edges)

    def __contains__(self, label: object) -> bool:
        return label in self._arities

    def __getitem__(self, label: str) -> tuple[int, int]:
        return self._arities[label]

    def __iter__(self) -> Iterator[tuple[str, int, int]]:
        for label, (n, m) in self._arities.items():
            yield label, n, m

    def __len__(self) -> int:
        return len(self._arities)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return self._arities == other._arities

    def __hash__(self) -> int:
        return hash(frozenset(self._arities.items()))

    def __repr__(self) -> str:
        return f"Signature({list(self)!r})"

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self._arities)

    def merge(self, other: Signature) -> Signature:
        """Union of two signatures; raises if they disagree on a shared label."""
        return Signature([*self, *other])


@dataclass(frozen=True)
class Edge:
    id: str
    label: str
    sources: tuple[str, ...]
    targets: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "targets", tuple(self.targets))


@dataclass(frozen=True)
class Hypergraph:
    nodes: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()
    signature: Signature | None = None
    _edge_index: dict[str, Edge] = field(
        init=False, repr=False, compare=False, hash=False
    )
    _node_pos: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        node_pos = {v: k for k, v in enumerate(nodes)}
        if len(node_pos) != len(nodes):
            raise HypergraphError("duplicate node id")
        index = {e.id: e for e in edges}
        if len(index) != len(edges):
            raise HypergraphError("duplicate edge id")
        sig = self.signature
        if sig is None:
            sig = Signature.from_edges(edges)
            object.__setattr__(self, "signature", sig)
        for e in edges:
            for v in (*e.sources, *e.targets):
                if v not in node_pos:
                    raise HypergraphError(f"edge {e.id!r} touches unknown node {v!r}")
            if e.label not in sig:
                raise SignatureError(f"label {e.label!r} not in signature")
            if sig[e.label] != (len(e.sources), len(e.targets)):
                raise SignatureError(
                    f"edge {e.id!r}: label {e.label!r} has arity {sig[e.label]}, "
                    f"got {(len(e.sources), len(e.targets))}"
                )
        object.__setattr__(self, "_edge_index", index)
        object.__setattr__(self, "_node_pos", node_pos)

    def edge(self, edge_id: str) -> Edge:
        return self._edge_index[edge_id]

    def has_node(self, v: str) -> bool:
        return v in self._node_pos

    def has_edge(self, e: str) -> bool:
        return e in self._edge_index

    def node_index(self, v: str) -> int:
        return self._node_pos[v]

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    @property
    def is_discrete(self) -> bool:
        return not self.edges

    def relabel(self, prefix_nodes: str = "n", prefix_edges: str = "e") -> tuple[Hypergraph, Morphism]:
        """Copy with ids replaced by ``n0, n1, ...`` / ``e0, e1, ...`` in graph order."""
        nmap = {v: f"{prefix_nodes}{k}" for k, v in enumerate(self.nodes)}
        emap = {e.id: f"{prefix_edges}{k}" for k, e in enumerate(self.edges)}
        g = self.rename(nmap, emap)
        return g, Morphism(self, g, nmap, emap, check=False)

    def rename(self, node_map: Mapping[str, str], edge_map: Mapping[str, str]) -> Hypergraph:
        return Hypergraph(
            tuple(node_map[v] for v in self.nodes),
            tuple(
                Edge(
                    edge_map[e.id],
                    e.label,
                    tuple(node_map[v] for v in e.sources),
                    tuple(node_map[v] for v in e.targets),
                )
                for e in self.edges
            ),
            self.signature,
        )


def discrete(nodes: Iterable[str], signature: Signature | None = None) -> Hypergraph:
    return Hypergraph(tuple(nodes), (), signature if signature is not None else Signature())


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Hypergraph
    target: Hypergraph
    node_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "node_map", dict(self.node_map))
        object.__setattr__(self, "edge_map", dict(self.edge_map))
        if self.check:
            problem = self.violation()
            if problem:
                raise MorphismError(problem)

    def violation(self) -> str | None:
        """Describe the first structural defect, or ``None`` for a valid morphism."""
        src, tgt = self.source, self.target
        for v in src.nodes:
            if v not in self.node_map:
                return f"node {v!r} unmapped"
            if not tgt.has_node(self.node_map[v]):
                return f"node {v!r} mapped outside target"
        for e in src.edges:
            if e.id not in self.edge_map:
                return f"edge {e.id!r} unmapped"
            image = self.edge_map[e.id]
            if not tgt.has_edge(image):
                return f"edge {e.id!r} mapped outside target"
            f = tgt.edge(image)
            if f.label != e.label:
                return f"edge {e.id!r} changes label"
            if f.sources != tuple(self.node_map[v] for v in e.sources):
                return f"edge {e.id!r} sources not preserved"
            if f.targets != tuple(self.node_map[v] for v in e.targets):
                return f"edge {e.id!r} targets not preserved"
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.node_map == other.node_map
            and self.edge_map == other.edge_map
        )

    __hash__ = None  # type: ignore[assignment]

    def then(self, other: Morphism) -> Morphism:
        """Diagrammatic composite ``self ; other``."""
        if self.target != other.source:
            raise MorphismError("morphisms are not composable")
        return Morphism(
            self.source,
            other.target,
            {v: other.node_map[w] for v, w in self.node_map.items()},
            {e: other.edge_map[f] for e, f in self.edge_map.items()},
            check=False,
        )

    def is_mono(self) -> bool:
        return len(set(self.node_map.values())) == len(self.node_map) and len(
            set(self.edge_map.values())
        ) == len(self.edge_map)

    def is_epi(self) -> bool:
        return set(self.node_map.values()) == set(self.target.nodes) and set(
            self.edge_map.values()
        ) == set(self.target.edge_ids)

    def inverse(self) -> Morphism:
        if not (self.is_mono() and self.is_epi()):
            raise MorphismError("only isomorphisms can be inverted")
        return Morphism(
            self.target,
            self.source,
            {w: v for v, w in self.node_map.items()},
            {f: e for e, f in self.edge_map.items()},
        )

    def image_nodes(self, nodes: Iterable[str] | None = None) -> list[str]:
        """Images of ``nodes`` (default: all), deduplicated, in target order."""
        src = self.source.nodes if nodes is None else nodes
        hit = {self.node_map[v] for v in src}
        return [v for v in self.target.nodes if v in hit]


def identity(g: Hypergraph) -> Morphism:
    return Morphism(g, g, {v: v for v in g.nodes}, {e.id: e.id for e in g.edges}, check=False)


@dataclass(frozen=True)
class InterfacedHypergraph:
    """Cospan ``inputs -> graph <- outputs`` with ordered discrete legs."""

    graph: Hypergraph
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        for v in (*self.inputs, *self.outputs):
            if not self.graph.has_node(v):
                raise HypergraphError(f"interface node {v!r} not in graph")

    def relabel(self) -> tuple[InterfacedHypergraph, Morphism]:
        g, m = self.graph.relabel()
        return (
            InterfacedHypergraph(
                g,
                tuple(m.node_map[v] for v in self.inputs),
                tuple(m.node_map[v] for v in self.outputs),
            ),
            m,
        )


# -- degrees and structural predicates ---------------------------------------


def degrees(g: Hypergraph, v: str) -> tuple[int, int]:
    """``(in_degree, out_degree)`` counting every ``(edge, position)`` occurrence."""
    if not g.has_node(v):
        raise HypergraphError("node not in graph")
    indeg = sum(e.targets.count(v) for e in g.edges)
    outdeg = sum(e.sources.count(v) for e in g.edges)
    return indeg, outdeg


def _degree_table(g: Hypergraph) -> dict[str, list[int]]:
    table = {v: [0, 0] for v in g.nodes}
    for e in g.edges:
        for v in e.targets:
            table[v][0] += 1
        for v in e.sources:
            table[v][1] += 1
    return table


def in_nodes(g: Hypergraph) -> list[str]:
    """Nodes of in-degree 0, in graph order."""
    table = _degree_table(g)
    return [v for v in g.nodes if table[v][0] == 0]


def out_nodes(g: Hypergraph) -> list[str]:
    table = _degree_table(g)
    return [v for v in g.nodes if table[v][1] == 0]


def is_monogamous(g: Hypergraph) -> bool:
    return all(i <= 1 and o <= 1 for i, o in _degree_table(g).values())


def is_acyclic(g: Hypergraph) -> bool:
    # Kahn's algorithm on the bipartite node/edge incidence graph.
    pending_nodes = {v: 0 for v in g.nodes}
    pending_edges = {e.id: len(e.sources) for e in g.edges}
    consumers: dict[str, list[str]] = {v: [] for v in g.nodes}
    for e in g.edges:
        for v in e.targets:
            pending_nodes[v] += 1
        for v in e.sources:
            consumers[v].append(e.id)
    ready_nodes = deque(v for v, k in pending_nodes.items() if k == 0)
    ready_edges = deque(e for e, k in pending_edges.items() if k == 0)
    done = 0
    while ready_nodes or ready_edges:
        if ready_edges:
            e = g.edge(ready_edges.popleft())
            done += 1
            for v in e.targets:
                pending_nodes[v] -= 1
                if pending_nodes[v] == 0:
                    ready_nodes.append(v)
        else:
            v = ready_nodes.popleft()
            for e in consumers[v]:
                pending_edges[e] -= 1
                if pending_edges[e] == 0:
                    ready_edges.append(e)
    return done == len(g.edges)


def is_monogamous_acyclic(g: Hypergraph) -> bool:
    return is_monogamous(g) and is_acyclic(g)


def is_ma_cospan(ig: InterfacedHypergraph) -> bool:
    g = ig.graph
    if len(set(ig.inputs)) != len(ig.inputs) or len(set(ig.outputs)) != len(ig.outputs):
        return False
    if not is_monogamous_acyclic(g):
        return False
    return set(ig.inputs) == set(in_nodes(g)) and set(ig.outputs) == set(out_nodes(g))


def successors(g: Hypergraph) -> dict[str, list[str]]:
    """Node -> nodes reachable in one hyperedge step (source to target)."""
    succ: dict[str, list[str]] = {v: [] for v in g.nodes}
    for e in g.edges:
        for v in e.sources:
            succ[v].extend(e.targets)
    return succ


def reachable(g: Hypergraph, start: str) -> set[str]:
    """Nodes reachable from ``start`` by a (possibly empty) path."""
    succ = successors(g)
    seen = {start}
    todo = [start]
    while todo:
        for w in succ[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def is_strongly_connected(g: Hypergraph) -> bool:
    """Every input reaches every output; vacuously true without either."""
    outs = out_nodes(g)
    for x in in_nodes(g):
        reach = reachable(g, x)
        if any(y not in reach for y in outs):
            return False
    return True


def is_convex_match(m: Morphism) -> bool:
    if not m.is_mono():
        return False
    g = m.target
    img_nodes = set(m.node_map.values())
    img_edges = set(m.edge_map.values())
    # An edge lies on a path between image nodes iff it is reachable from one
    # and can reach one; walks may be concatenated through it.
    forward = _edges_reachable(g, img_nodes, forward=True)
    backward = _edges_reachable(g, img_nodes, forward=False)
    return (forward & backward) <= img_edges


def _edges_reachable(g: Hypergraph, start: set[str], forward: bool) -> set[str]:
    touching: dict[str, list[Edge]] = {v: [] for v in g.nodes}
    for e in g.edges:
        for v in e.sources if forward else e.targets:
            touching[v].append(e)
    found: set[str] = set()
    seen = set(start)
    todo = list(start)
    while todo:
        for e in touching[todo.pop()]:
            if e.id in found:
                continue
            found.add(e.id)
            for w in e.targets if forward else e.sources:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
    return found


# -- colimits ------------------------------------------------------------------


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: str, y: str) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


def coproduct(g1: Hypergraph, g2: Hypergraph) -> tuple[Hypergraph, Morphism, Morphism]:
    sig = g1.signature.merge(g2.signature)
    tag1 = lambda x: "L:" + x  # noqa: E731
    tag2 = lambda x: "R:" + x  # noqa: E731
    nodes = tuple(map(tag1, g1.nodes)) + tuple(map(tag2, g2.nodes))
    edges = []
    for g, tag in ((g1, tag1), (g2, tag2)):
        for e in g.edges:
            edges.append(Edge(tag(e.id), e.label, tuple(map(tag, e.sources)), tuple(map(tag, e.targets))))
    total = Hypergraph(nodes, tuple(edges), sig)
    inj1 = Morphism(g1, total, {v: tag1(v) for v in g1.nodes}, {e.id: tag1(e.id) for e in g1.edges}, check=False)
    inj2 = Morphism(g2, total, {v: tag2(v) for v in g2.nodes}, {e.id: tag2(e.id) for e in g2.edges}, check=False)
    return total, inj1, inj2


def quotient(g: Hypergraph, node_pairs: Iterable[tuple[str, str]], edge_pairs: Iterable[tuple[str, str]] = ()) -> Morphism:
    """Quotient ``g`` by the least congruence containing the given pairs.

    Identified edges have their source and target lists identified
    positionwise.  Each class is named after its least member in ``g``'s
    order.  Returns the quotient map.
    """
    nodes_uf = _UnionFind(g.nodes)
    edges_uf = _UnionFind(g.edge_ids)
    for a, b in node_pairs:
        nodes_uf.union(a, b)
    pending = list(edge_pairs)
    while pending:
        a, b = pending.pop()
        if not edges_uf.union(a, b):
            continue
        ea, eb = g.edge(a), g.edge(b)
        if ea.label != eb.label or len(ea.sources) != len(eb.sources) or len(ea.targets) != len(eb.targets):
            raise InconsistentGluing(f"cannot identify edges {a!r} ({ea.label}) and {b!r} ({eb.label})")
    # positionwise merging; edges within a class all share the class root's lists
    for e in g.edges:
        root = g.edge(edges_uf.find(e.id))
        for v, w in zip(e.sources + e.targets, root.sources + root.targets):
            nodes_uf.union(v, w)

    node_rep: dict[str, str] = {}
    for v in g.nodes:  # first member seen in graph order names the class
        node_rep.setdefault(nodes_uf.find(v), v)
    edge_rep: dict[str, str] = {}
    for e in g.edges:
        edge_rep.setdefault(edges_uf.find(e.id), e.id)

    nmap = {v: node_rep[nodes_uf.find(v)] for v in g.nodes}
    emap = {e.id: edge_rep[edges_uf.find(e.id)] for e in g.edges}
    q_nodes = tuple(v for v in g.nodes if nmap[v] == v)
    q_edges = tuple(
        Edge(e.id, e.label, tuple(nmap[v] for v in e.sources), tuple(nmap[v] for v in e.targets))
        for e in g.edges
        if emap[e.id] == e.id
    )
    q = Hypergraph(q_nodes, q_edges, g.signature)
    return Morphism(g, q, nmap, emap, check=False)


def coequalizer(f: Morphism, g: Morphism) -> tuple[Hypergraph, Morphism]:
    if f.source != g.source or f.target != g.target:
        raise MorphismError("coequalizer needs parallel morphisms")
    src = f.source
    eps = quotient(
        f.target,
        ((f.node_map[v], g.node_map[v]) for v in src.nodes),
        ((f.edge_map[e.id], g.edge_map[e.id]) for e in src.edges),
    )
    return eps.target, eps


def pushout(f: Morphism, g: Morphism) -> tuple[Hypergraph, Morphism, Morphism]:
    """Pushout of the span ``f.target <- f.source -> g.target``."""
    if f.source != g.source:
        raise MorphismError("pushout needs a span with a common source")
    total, inj1, inj2 = coproduct(f.target, g.target)
    p, eps = coequalizer(f.then(inj1), g.then(inj2))
    return p, inj1.then(eps), inj2.then(eps)


def pushout_complement(k2l: Morphism, l2g: Morphism) -> tuple[Hypergraph, Morphism, Morphism]:
    """Context ``C`` with ``K -> C -> G`` completing ``K -> L -> G`` to a pushout.

    ``C`` is ``G`` without the image of ``L`` except for the image of ``K``.
    """
    if k2l.target != l2g.source:
        raise MorphismError("morphisms are not composable")
    if not l2g.is_mono():
        raise NoPushoutComplement("match is not mono")
    if not k2l.is_mono():
        raise NoPushoutComplement("interface embedding is not mono")
    g = l2g.target
    kept_boundary = {l2g.node_map[k2l.node_map[v]] for v in k2l.source.nodes}
    deleted_nodes = {l2g.node_map[v] for v in k2l.target.nodes} - kept_boundary
    deleted_edges = {l2g.edge_map[e.id] for e in k2l.target.edges}
    kept_edges = []
    for e in g.edges:
        if e.id in deleted_edges:
            continue
        if any(v in deleted_nodes for v in e.sources + e.targets):
            raise NoPushoutComplement(f"no pushout complement: edge {e.id!r} would dangle")
        kept_edges.append(e)
    c = Hypergraph(tuple(v for v in g.nodes if v not in deleted_nodes), tuple(kept_edges), g.signature)
    k2c = Morphism(
        k2l.source,
        c,
        {v: l2g.node_map[k2l.node_map[v]] for v in k2l.source.nodes},
        {e.id: l2g.edge_map[k2l.edge_map[e.id]] for e in k2l.source.edges},
    )
    c2g = Morphism(c, g, {v: v for v in c.nodes}, {e.id: e.id for e in c.edges}, check=False)
    return c, k2c, c2g
