"""JSON and Graphviz DOT encodings."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .confluence import ConfluenceReport
from .critical_pairs import CriticalPair
from .hypergraph import Edge, Hypergraph, HypergraphError, InterfacedHypergraph, Morphism, Signature
from .rewriting import Derivation, RewriteRule, RewriteSystem


class FormatError(ValueError):
    """Malformed input; ``where`` locates the problem (JSON path or line:col)."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _expect(value: Any, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise FormatError(where, f"expected {name}, got {type(value).__name__}")
    return value


def _strings(value: Any, where: str) -> list[str]:
    _expect(value, list, where)
    return [_expect(v, str, f"{where}[{k}]") for k, v in enumerate(value)]


def _field(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise FormatError(where, f"missing field {key!r}")
    return obj[key]


# -- decoding --------------------------------------------------------------------


def signature_from_json(data: Any, where: str = "signature") -> Signature:
    _expect(data, list, where)
    entries = []
    for k, item in enumerate(data):
        at = f"{where}[{k}]"
        _expect(item, dict, at)
        entries.append(
            (
                _expect(_field(item, "label", at), str, f"{at}.label"),
                _expect(_field(item, "arity", at), int, f"{at}.arity"),
                _expect(_field(item, "coarity", at), int, f"{at}.coarity"),
            )
        )
    try:
        return Signature(entries)
    except HypergraphError as exc:
        raise FormatError(where, str(exc)) from exc


def hypergraph_from_json(data: Any, signature: Signature | None = None, where: str = "graph") -> Hypergraph:
    _expect(data, dict, where)
    nodes = _strings(_field(data, "nodes", where), f"{where}.nodes")
    edges = []
    for k, item in enumerate(_expect(_field(data, "edges", where), list, f"{where}.edges")):
        at = f"{where}.edges[{k}]"
        _expect(item, dict, at)
        edges.append(
            Edge(
                _expect(_field(item, "id", at), str, f"{at}.id"),
                _expect(_field(item, "label", at), str, f"{at}.label"),
                tuple(_strings(_field(item, "sources", at), f"{at}.sources")),
                tuple(_strings(_field(item, "targets", at), f"{at}.targets")),
            )
        )
    try:
        return Hypergraph(tuple(nodes), tuple(edges), signature)
    except HypergraphError as exc:
        raise FormatError(where, str(exc)) from exc


def interfaced_from_json(data: Any, signature: Signature | None = None, where: str = "graph") -> InterfacedHypergraph:
    g = hypergraph_from_json(data, signature, where)
    inputs = _strings(_field(data, "inputs", where), f"{where}.inputs")
    outputs = _strings(_field(data, "outputs", where), f"{where}.outputs")
    try:
        return InterfacedHypergraph(g, tuple(inputs), tuple(outputs))
    except HypergraphError as exc:
        raise FormatError(where, str(exc)) from exc


def rule_from_json(data: Any, signature: Signature | None = None, where: str = "rule") -> RewriteRule:
    _expect(data, dict, where)
    return RewriteRule(
        _expect(_field(data, "name", where), str, f"{where}.name"),
        interfaced_from_json(_field(data, "left", where), signature, f"{where}.left"),
        interfaced_from_json(_field(data, "right", where), signature, f"{where}.right"),
    )


def system_from_json(data: Any) -> RewriteSystem:
    _expect(data, dict, "$")
    sig = signature_from_json(_field(data, "signature", "$"), "signature")
    rules = [
        rule_from_json(r, sig, f"rules[{k}]")
        for k, r in enumerate(_expect(_field(data, "rules", "$"), list, "rules"))
    ]
    return RewriteSystem(sig, tuple(rules))


def loads_system(text: str) -> RewriteSystem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
    return system_from_json(data)


def load_system(path: str | Path) -> RewriteSystem:
    return loads_system(Path(path).read_text(encoding="utf-8"))


# -- encoding --------------------------------------------------------------------


def signature_to_json(sig: Signature) -> list[dict]:
    return [{"label": lab, "arity": n, "coarity": m} for lab, n, m in sig]


def hypergraph_to_json(g: Hypergraph) -> dict:
    return {
        "nodes": list(g.nodes),
        "edges": [
            {"id": e.id, "label": e.label, "sources": list(e.sources), "targets": list(e.targets)}
            for e in g.edges
        ],
    }


def interfaced_to_json(ig: InterfacedHypergraph) -> dict:
    out = hypergraph_to_json(ig.graph)
    out["inputs"] = list(ig.inputs)
    out["outputs"] = list(ig.outputs)
    return out


def rule_to_json(r: RewriteRule) -> dict:
    return {"name": r.name, "left": interfaced_to_json(r.left), "right": interfaced_to_json(r.right)}


def system_to_json(system: RewriteSystem) -> dict:
    return {"signature": signature_to_json(system.signature), "rules": [rule_to_json(r) for r in system.rules]}


def morphism_to_json(m: Morphism) -> dict:
    return {"nodes": dict(m.node_map), "edges": dict(m.edge_map)}


def critical_pair_to_json(cp: CriticalPair) -> dict:
    return {
        "rule_i": cp.rule_i,
        "rule_j": cp.rule_j,
        "glued_edges": [list(p) for p in cp.glued_edges()],
        "glued_nodes": [list(p) for p in cp.glued_nodes()],
        "source": interfaced_to_json(cp.source),
        "match1": morphism_to_json(cp.match1),
        "match2": morphism_to_json(cp.match2),
    }


def critical_pair_from_json(data: Any, system: RewriteSystem, where: str = "pair") -> dict:
    """Decode a record into its parts: rule indices, source and both matches."""
    _expect(data, dict, where)
    i = _expect(_field(data, "rule_i", where), int, f"{where}.rule_i")
    j = _expect(_field(data, "rule_j", where), int, f"{where}.rule_j")
    source = interfaced_from_json(_field(data, "source", where), system.signature, f"{where}.source")
    matches = []
    for key, k in (("match1", i), ("match2", j)):
        raw = _expect(_field(data, key, where), dict, f"{where}.{key}")
        try:
            matches.append(
                Morphism(system.rules[k].left.graph, source.graph, raw.get("nodes", {}), raw.get("edges", {}))
            )
        except (HypergraphError, IndexError) as exc:
            raise FormatError(f"{where}.{key}", str(exc)) from exc
    return {"rule_i": i, "rule_j": j, "source": source, "match1": matches[0], "match2": matches[1]}


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# -- DOT ---------------------------------------------------------------------------


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    g: Hypergraph | InterfacedHypergraph,
    name: str = "G",
    node_colours: dict[str, str] | None = None,
    edge_colours: dict[str, str] | None = None,
) -> str:
    """Nodes as points, hyperedges as labelled boxes with numbered ports."""
    if isinstance(g, InterfacedHypergraph):
        graph, inputs, outputs = g.graph, g.inputs, g.outputs
    else:
        graph, inputs, outputs = g, (), ()
    node_colours = node_colours or {}
    edge_colours = edge_colours or {}
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    for v in graph.nodes:
        attrs = ["shape=point", "width=0.08", f"xlabel={_q(v)}"]
        if v in node_colours:
            attrs.append(f"color={_q(node_colours[v])}")
        lines.append(f"  {_q('v:' + v)} [{', '.join(attrs)}];")
    for e in graph.edges:
        attrs = ["shape=box", f"label={_q(e.label)}"]
        if e.id in edge_colours:
            attrs += [f"color={_q(edge_colours[e.id])}", "penwidth=2"]
        lines.append(f"  {_q('e:' + e.id)} [{', '.join(attrs)}];")
        for k, v in enumerate(e.sources):
            lines.append(f"  {_q('v:' + v)} -> {_q('e:' + e.id)} [arrowhead=none, headlabel={_q(str(k))}];")
        for k, v in enumerate(e.targets):
            lines.append(f"  {_q('e:' + e.id)} -> {_q('v:' + v)} [taillabel={_q(str(k))}];")
    for k, v in enumerate(inputs):
        lines.append(f"  {_q(f'in:{k}')} [shape=plaintext, label={_q(f'in{k}')}];")
        lines.append(f"  {_q(f'in:{k}')} -> {_q('v:' + v)} [style=dashed];")
    for k, v in enumerate(outputs):
        lines.append(f"  {_q(f'out:{k}')} [shape=plaintext, label={_q(f'out{k}')}];")
        lines.append(f"  {_q('v:' + v)} -> {_q(f'out:{k}')} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def critical_pair_to_dot(cp: CriticalPair, name: str = "S") -> str:
    """Source graph with match images coloured: red first rule, blue second, purple both."""
    colour_n: dict[str, str] = {}
    colour_e: dict[str, str] = {}
    for m, col in ((cp.match1, "red"), (cp.match2, "blue")):
        for table, images in ((colour_n, m.node_map.values()), (colour_e, m.edge_map.values())):
            for x in images:
                table[x] = "purple" if table.get(x, col) != col else col
    return to_dot(cp.source, name, colour_n, colour_e)


def rule_to_dot(r: RewriteRule) -> str:
    left = to_dot(r.left, f"{r.name}:left")
    right = to_dot(r.right, f"{r.name}:right")
    return left + right


def derivation_to_json(d: Derivation) -> dict:
    return {
        "rule": d.rule.name,
        "rule_index": d.rule_index,
        "match": morphism_to_json(d.match),
        "result": interfaced_to_json(d.result),
    }


def report_to_json(report: ConfluenceReport) -> dict:
    pairs = []
    for p in report.pairs:
        entry: dict[str, Any] = {
            "pair": critical_pair_to_json(p.pair),
            "joinable": p.result.joinable,
            "depth": p.result.depth,
            "reason": p.result.reason,
            "h1": interfaced_to_json(p.left.result),
            "h2": interfaced_to_json(p.right.result),
        }
        if p.result.joinable:
            entry["witness"] = [
                [derivation_to_json(d) for d in p.result.left],
                [derivation_to_json(d) for d in p.result.right],
            ]
        pairs.append(entry)
    return {"verdict": report.verdict, "max_depth": report.max_depth, "pairs": pairs}
