"""Isomorphism of (interfaced) hypergraphs.

Colour refinement gives a cheap invariant used both as a bucketing key and
to prune the backtracking search.  The search assigns hyperedges one at a
time; every node touched by an edge is then forced positionally, so only
isolated nodes are left to pair up at the end.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from typing import Mapping

from .hypergraph import Hypergraph, InterfacedHypergraph, Morphism


def _digest(obj: object) -> str:
    return hashlib.blake2b(repr(obj).encode(), digest_size=8).hexdigest()


def node_colours(g: Hypergraph, pins: Mapping[str, object] | None = None, rounds: int | None = None) -> dict[str, str]:
    """Stable colour refinement; ``pins`` gives extra initial colours."""
    pins = pins or {}
    incidence: dict[str, list[tuple[str, str, int]]] = {v: [] for v in g.nodes}
    for e in g.edges:
        for k, v in enumerate(e.sources):
            incidence[v].append((e.id, "s", k))
        for k, v in enumerate(e.targets):
            incidence[v].append((e.id, "t", k))
    colour = {v: _digest(("init", len(incidence[v]), pins.get(v))) for v in g.nodes}
    n_classes = len(set(colour.values()))
    for _ in range(rounds if rounds is not None else len(g.nodes) + 1):
        edge_col = {
            e.id: (e.label, tuple(colour[v] for v in e.sources), tuple(colour[v] for v in e.targets))
            for e in g.edges
        }
        colour = {
            v: _digest((colour[v], sorted((edge_col[e], role, k) for e, role, k in incidence[v])))
            for v in g.nodes
        }
        now = len(set(colour.values()))
        if now == n_classes:
            break
        n_classes = now
    return colour


def _interface_pins(ig: InterfacedHypergraph) -> dict[str, object]:
    pins: dict[str, list] = {}
    for k, v in enumerate(ig.inputs):
        pins.setdefault(v, []).append(("in", k))
    for k, v in enumerate(ig.outputs):
        pins.setdefault(v, []).append(("out", k))
    return {v: tuple(p) for v, p in pins.items()}


def invariant(ig: InterfacedHypergraph | Hypergraph) -> str:
    """Isomorphism invariant; equal for interface-isomorphic inputs."""
    if isinstance(ig, InterfacedHypergraph):
        g, pins = ig.graph, _interface_pins(ig)
        shape = (len(ig.inputs), len(ig.outputs))
    else:
        g, pins, shape = ig, {}, None
    colours = node_colours(g, pins)
    edge_sigs = sorted(
        (e.label, tuple(colours[v] for v in e.sources), tuple(colours[v] for v in e.targets))
        for e in g.edges
    )
    return _digest((shape, sorted(colours.values()), edge_sigs))


def find_isomorphism(a: Hypergraph, b: Hypergraph, node_pins: Mapping[str, str] | None = None) -> Morphism | None:
    """Some isomorphism ``a -> b`` extending ``node_pins``, or ``None``."""
    if len(a.nodes) != len(b.nodes) or len(a.edges) != len(b.edges):
        return None
    if Counter(e.label for e in a.edges) != Counter(e.label for e in b.edges):
        return None
    node_pins = dict(node_pins or {})
    if len(set(node_pins.values())) != len(node_pins):
        return None
    ca = node_colours(a, {v: k for k, v in enumerate(node_pins)})
    cb = node_colours(b, {w: k for k, w in enumerate(node_pins.values())})
    if Counter(ca.values()) != Counter(cb.values()):
        return None
    for v, w in node_pins.items():
        if ca.get(v) != cb.get(w):
            return None

    # order a's edges so that each is adjacent to already-placed ones if possible
    order: list[str] = []
    placed_nodes = set(node_pins)
    remaining = list(a.edges)
    while remaining:
        pick = next(
            (e for e in remaining if placed_nodes.intersection(e.sources + e.targets)),
            remaining[0],
        )
        remaining.remove(pick)
        order.append(pick.id)
        placed_nodes.update(pick.sources + pick.targets)

    b_by_key: dict[tuple, list[str]] = {}
    for f in b.edges:
        key = (f.label, tuple(cb[w] for w in f.sources), tuple(cb[w] for w in f.targets))
        b_by_key.setdefault(key, []).append(f.id)

    nmap: dict[str, str] = dict(node_pins)
    used_nodes = set(node_pins.values())
    emap: dict[str, str] = {}
    used_edges: set[str] = set()

    def assign(e_id: str, f_id: str) -> list[str] | None:
        e, f = a.edge(e_id), b.edge(f_id)
        added: list[str] = []
        for v, w in zip(e.sources + e.targets, f.sources + f.targets):
            if v in nmap:
                if nmap[v] != w:
                    break
            elif w in used_nodes:
                break
            else:
                nmap[v] = w
                used_nodes.add(w)
                added.append(v)
        else:
            return added
        for v in added:
            used_nodes.discard(nmap.pop(v))
        return None

    def search(k: int) -> bool:
        if k == len(order):
            return True
        e = a.edge(order[k])
        key = (e.label, tuple(ca[v] for v in e.sources), tuple(ca[v] for v in e.targets))
        for f_id in b_by_key.get(key, ()):
            if f_id in used_edges:
                continue
            added = assign(e.id, f_id)
            if added is None:
                continue
            emap[e.id] = f_id
            used_edges.add(f_id)
            if search(k + 1):
                return True
            used_edges.discard(f_id)
            del emap[e.id]
            for v in added:
                used_nodes.discard(nmap.pop(v))
        return False

    if not search(0):
        return None
    # leftover nodes touch no edge; pair them by colour
    spare: dict[str, list[str]] = {}
    for w in b.nodes:
        if w not in used_nodes:
            spare.setdefault(cb[w], []).append(w)
    for v in a.nodes:
        if v in nmap:
            continue
        pool = spare.get(ca[v])
        if not pool:
            return None
        nmap[v] = pool.pop(0)
    return Morphism(a, b, nmap, emap)


def isomorphic(a: InterfacedHypergraph, b: InterfacedHypergraph) -> Morphism | None:
    """Interface-preserving isomorphism: inputs and outputs match positionally."""
    if len(a.inputs) != len(b.inputs) or len(a.outputs) != len(b.outputs):
        return None
    pins: dict[str, str] = {}
    for v, w in zip(a.inputs + a.outputs, b.inputs + b.outputs):
        if pins.setdefault(v, w) != w:
            return None
    return find_isomorphism(a.graph, b.graph, pins)
