"""Left-connected rewrite rules and convex DPOI rewriting."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    InterfacedHypergraph,
    Morphism,
    Signature,
    discrete,
    in_nodes,
    is_ma_cospan,
    is_monogamous_acyclic,
    is_strongly_connected,
    out_nodes,
    pushout,
    pushout_complement,
)


class RewriteError(HypergraphError):
    pass


@dataclass(frozen=True)
class RewriteRule:
    name: str
    left: InterfacedHypergraph
    right: InterfacedHypergraph

    @cached_property
    def interface(self) -> Hypergraph:
        """The discrete graph ``I + O``: nodes ``i0.. o0..``."""
        names = [f"i{k}" for k in range(len(self.left.inputs))]
        names += [f"o{k}" for k in range(len(self.left.outputs))]
        return discrete(names, self.left.graph.signature)

    def _leg(self, side: InterfacedHypergraph) -> Morphism:
        k = self.interface
        ports = side.inputs + side.outputs
        return Morphism(k, side.graph, dict(zip(k.nodes, ports)), {}, check=False)

    @cached_property
    def left_leg(self) -> Morphism:
        """``[i_L, o_L] : I + O -> L``"""
        return self._leg(self.left)

    @cached_property
    def right_leg(self) -> Morphism:
        return self._leg(self.right)


@dataclass(frozen=True)
class RewriteSystem:
    signature: Signature
    rules: tuple[RewriteRule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def __len__(self) -> int:
        return len(self.rules)

    def __getitem__(self, k: int) -> RewriteRule:
        return self.rules[k]


@dataclass(frozen=True, eq=False)
class Derivation:
    source: InterfacedHypergraph
    rule_index: int | None
    rule: RewriteRule
    match: Morphism
    context: Hypergraph
    result: InterfacedHypergraph
    interface_to_context: Morphism
    context_to_source: Morphism
    context_to_result: Morphism
    right_to_result: Morphism


def validate_rule(r: RewriteRule) -> list[str]:
    """Names of the violated left-connectedness clauses; empty when valid."""
    violations = []
    left, right = r.left, r.right
    if len(left.inputs) != len(right.inputs) or len(left.outputs) != len(right.outputs):
        violations.append("arity")
    # duplicates on the left are reported as mono-interface, not ma-left
    if not (
        is_monogamous_acyclic(left.graph)
        and set(left.inputs) == set(in_nodes(left.graph))
        and set(left.outputs) == set(out_nodes(left.graph))
    ):
        violations.append("ma-left")
    if not is_ma_cospan(right):
        violations.append("ma-right")
    ports = left.inputs + left.outputs
    if len(set(ports)) != len(ports):
        violations.append("mono-interface")
    if not is_strongly_connected(left.graph):
        violations.append("strong-connectivity")
    return violations


def validate_system(system: RewriteSystem) -> dict[str, list[str]]:
    """Violations per rule name, including signature clashes; only failing rules appear."""
    report = {}
    for r in system.rules:
        problems = validate_rule(r)
        for side in (r.left.graph, r.right.graph):
            for e in side.edges:
                if e.label not in system.signature or system.signature[e.label] != (len(e.sources), len(e.targets)):
                    problems.append("signature")
                    break
        if problems:
            report[r.name] = sorted(set(problems), key=problems.index)
    return report


def iter_matches(l: Hypergraph, g: Hypergraph) -> Iterator[Morphism]:
    """Mono morphisms ``l -> g``, edges assigned first in ``g``'s edge order."""
    by_label: dict[str, list[str]] = {}
    for f in g.edges:
        by_label.setdefault(f.label, []).append(f.id)
    for e in l.edges:
        if e.label not in by_label:
            return

    nmap: dict[str, str] = {}
    used_nodes: set[str] = set()
    emap: dict[str, str] = {}
    used_edges: set[str] = set()
    edges = l.edges
    touched = {v for e in edges for v in e.sources + e.targets}
    loose = [v for v in l.nodes if v not in touched]

    def bind_edge(k: int) -> Iterator[None]:
        if k == len(edges):
            yield from bind_loose(0)
            return
        e = edges[k]
        for f_id in by_label[e.label]:
            if f_id in used_edges:
                continue
            f = g.edge(f_id)
            added = []
            ok = True
            for v, w in zip(e.sources + e.targets, f.sources + f.targets):
                if v in nmap:
                    if nmap[v] != w:
                        ok = False
                        break
                elif w in used_nodes:
                    ok = False
                    break
                else:
                    nmap[v] = w
                    used_nodes.add(w)
                    added.append(v)
            if ok:
                emap[e.id] = f_id
                used_edges.add(f_id)
                yield from bind_edge(k + 1)
                used_edges.discard(f_id)
                del emap[e.id]
            for v in added:
                used_nodes.discard(nmap.pop(v))

    def bind_loose(k: int) -> Iterator[None]:
        if k == len(loose):
            yield None
            return
        v = loose[k]
        for w in g.nodes:
            if w in used_nodes:
                continue
            nmap[v] = w
            used_nodes.add(w)
            yield from bind_loose(k + 1)
            used_nodes.discard(w)
            del nmap[v]

    for _ in bind_edge(0):
        yield Morphism(l, g, dict(nmap), dict(emap), check=False)


def enumerate_matches(l: Hypergraph, g: Hypergraph) -> list[Morphism]:
    return list(iter_matches(l, g))


def rewrite_step(
    g: InterfacedHypergraph,
    rule: RewriteRule,
    match: Morphism,
    rule_index: int | None = None,
) -> Derivation:
    if match.source != rule.left.graph or match.target != g.graph:
        raise RewriteError("match does not go from the rule's left side into the graph")
    context, k2c, c2g = pushout_complement(rule.left_leg, match)
    result_graph, c2h, r2h = pushout(k2c, rule.right_leg)
    # the interface of g survives in the context, so it is carried over pointwise
    lost = [v for v in g.inputs + g.outputs if not context.has_node(v)]
    if lost:
        raise RewriteError(f"match deletes interface nodes {lost}")
    result = InterfacedHypergraph(
        result_graph,
        tuple(c2h.node_map[v] for v in g.inputs),
        tuple(c2h.node_map[v] for v in g.outputs),
    )
    if not is_ma_cospan(result):
        raise RewriteError(f"rewriting with {rule.name!r} produced a non-ma cospan")
    return Derivation(g, rule_index, rule, match, context, result, k2c, c2g, c2h, r2h)


def one_step_rewrites(system: RewriteSystem, g: InterfacedHypergraph) -> Iterator[Derivation]:
    """Every derivation out of ``g``, by rule index then match order."""
    for k, rule in enumerate(system.rules):
        for m in iter_matches(rule.left.graph, g.graph):
            yield rewrite_step(g, rule, m, k)
