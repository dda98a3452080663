import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    all_morphisms,
    cocone_targets,
    coequalizer_is_universal,
    has_cycle,
    is_ma,
    path_closed,
    pushout_is_universal,
    random_graph,
    random_parallel,
    random_span,
    same_maps,
)
from sdcrit.hypergraph import (
    Edge,
    Hypergraph,
    HypergraphError,
    InterfacedHypergraph,
    Morphism,
    MorphismError,
    NoPushoutComplement,
    Signature,
    SignatureError,
    coequalizer,
    coproduct,
    degrees,
    discrete,
    identity,
    in_nodes,
    is_acyclic,
    is_convex_match,
    is_ma_cospan,
    is_monogamous,
    is_strongly_connected,
    out_nodes,
    pushout,
    pushout_complement,
)
from sdcrit.iso import find_isomorphism, invariant, isomorphic

MU = Signature([("mu", 2, 1), ("eta", 0, 1)])


def mu_chain() -> Hypergraph:
    # the left side of associativity
    return Hypergraph(
        ("0", "1", "2", "3", "4"),
        (Edge("mu1", "mu", ("0", "1"), ("4",)), Edge("mu2", "mu", ("4", "2"), ("3",))),
        MU,
    )


def test_signature_rejects_conflicting_arity():
    with pytest.raises(SignatureError):
        Signature([("mu", 2, 1), ("mu", 1, 1)])


def test_edge_must_respect_signature():
    with pytest.raises(HypergraphError):
        Hypergraph(("a", "b"), (Edge("e", "mu", ("a",), ("b",)),), MU)


def test_edge_endpoints_must_exist():
    with pytest.raises(HypergraphError):
        Hypergraph(("a",), (Edge("e", "eta", (), ("b",)),), MU)


def test_degrees():
    g = mu_chain()
    assert degrees(g, "4") == (1, 1)
    assert degrees(g, "0") == (0, 1)
    assert degrees(g, "3") == (1, 0)
    with pytest.raises(HypergraphError):
        degrees(g, "nope")


def test_in_out_nodes_of_chain():
    g = mu_chain()
    assert in_nodes(g) == ["0", "1", "2"]
    assert out_nodes(g) == ["3"]


def test_monogamy_and_acyclicity():
    g = mu_chain()
    assert is_monogamous(g) and is_acyclic(g)
    fan = Hypergraph(("a", "b", "c"), (Edge("x", "mu", ("a", "a"), ("b",)),), MU)
    assert not is_monogamous(fan)
    loop = Hypergraph(("a", "b"), (Edge("x", "mu", ("a", "b"), ("b",)),), MU)
    assert not is_acyclic(loop)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_ma_agrees_with_dfs_oracle(seed):
    g = random_graph(random.Random(seed), max_nodes=5, max_edges=4)
    assert is_acyclic(g) == (not has_cycle(g))
    assert (is_monogamous(g) and is_acyclic(g)) == is_ma(g)


def test_ma_cospan_requires_exact_boundary():
    g = mu_chain()
    assert is_ma_cospan(InterfacedHypergraph(g, ("0", "1", "2"), ("3",)))
    assert not is_ma_cospan(InterfacedHypergraph(g, ("0", "1"), ("3",)))
    assert not is_ma_cospan(InterfacedHypergraph(g, ("0", "1", "2", "2"), ("3",)))
    wire = discrete(["w"], MU)
    assert is_ma_cospan(InterfacedHypergraph(wire, ("w",), ("w",)))


def test_strong_connectivity():
    assert is_strongly_connected(mu_chain())
    two = Hypergraph(
        ("a", "b", "c", "d", "e", "f"),
        (Edge("x", "mu", ("a", "b"), ("c",)), Edge("y", "mu", ("d", "e"), ("f",))),
        MU,
    )
    assert not is_strongly_connected(two)


def test_morphism_checks_structure():
    g = mu_chain()
    with pytest.raises(MorphismError):
        Morphism(g, g, {v: "0" for v in g.nodes}, {"mu1": "mu1", "mu2": "mu2"})
    assert identity(g).is_mono() and identity(g).is_epi()


def test_coproduct_tags_and_injections():
    g = mu_chain()
    total, i1, i2 = coproduct(g, g)
    assert len(total.nodes) == 10 and len(total.edges) == 4
    assert i1.node_map["0"] == "L:0" and i2.node_map["0"] == "R:0"
    assert i1.is_mono() and i2.is_mono()
    assert set(i1.node_map.values()).isdisjoint(i2.node_map.values())


def test_coproduct_is_universal():
    rng = random.Random(7)
    for _ in range(20):
        a = random_graph(rng, 3, 2, prefix="a")
        b = random_graph(rng, 3, 2, prefix="b")
        total, i1, i2 = coproduct(a, b)
        # an empty span gives the coproduct as a pushout
        empty = discrete([], a.signature)
        f = Morphism(empty, a, {}, {})
        g = Morphism(empty, b, {}, {})
        assert pushout_is_universal(f, g, i1, i2, cocone_targets(rng, total, 1))


def test_coequalizer_merges_positionally():
    k = discrete(["x"], MU)
    g = mu_chain()
    f1 = Morphism(k, g, {"x": "0"}, {})
    f2 = Morphism(k, g, {"x": "3"}, {})
    q, e = coequalizer(f1, f2)
    assert len(q.nodes) == 4
    assert e.node_map["0"] == e.node_map["3"]
    assert has_cycle(q)


def test_coequalizer_propagates_edge_merges():
    g = Hypergraph(
        ("a", "b", "c", "d", "e", "f"),
        (Edge("x", "mu", ("a", "b"), ("c",)), Edge("y", "mu", ("d", "e"), ("f",))),
        MU,
    )
    one = Hypergraph(("p", "q", "r"), (Edge("z", "mu", ("p", "q"), ("r",)),), MU)
    f1 = Morphism(one, g, {"p": "a", "q": "b", "r": "c"}, {"z": "x"})
    f2 = Morphism(one, g, {"p": "d", "q": "e", "r": "f"}, {"z": "y"})
    q, e = coequalizer(f1, f2)
    assert len(q.nodes) == 3 and len(q.edges) == 1


def test_pushout_of_span_over_shared_node():
    k = discrete(["x"], MU)
    g = mu_chain()
    p, p1, p2 = pushout(Morphism(k, g, {"x": "3"}, {}), Morphism(k, g, {"x": "0"}, {}))
    assert len(p.nodes) == 9 and len(p.edges) == 4
    assert p1.node_map["3"] == p2.node_map["0"]


@pytest.mark.parametrize("seed", range(40))
def test_pushout_universal_property(seed):
    rng = random.Random(seed)
    f, g = random_span(rng)
    p, p1, p2 = pushout(f, g)
    assert pushout_is_universal(f, g, p1, p2, cocone_targets(rng, p))


@pytest.mark.parametrize("seed", range(40))
def test_coequalizer_universal_property(seed):
    rng = random.Random(1000 + seed)
    f, g = random_parallel(rng)
    q, e = coequalizer(f, g)
    assert coequalizer_is_universal(f, g, e, cocone_targets(rng, q))


def test_universal_oracle_detects_a_wrong_pushout():
    rng = random.Random(3)
    f, g = random_span(rng)
    p, p1, p2 = pushout(f, g)
    # adding a junk node breaks uniqueness of mediators into p itself
    bigger = Hypergraph(p.nodes + ("junk",), p.edges, p.signature)
    q1 = Morphism(f.target, bigger, p1.node_map, p1.edge_map)
    q2 = Morphism(g.target, bigger, p2.node_map, p2.edge_map)
    assert not pushout_is_universal(f, g, q1, q2, [p, bigger])


def test_pushout_complement_reconstructs():
    rule_l = mu_chain()
    k = discrete(["i0", "i1", "i2", "o0"], MU)
    k2l = Morphism(k, rule_l, {"i0": "0", "i1": "1", "i2": "2", "o0": "3"}, {})
    host = Hypergraph(
        ("a", "b", "c", "d", "e", "f", "g"),
        (
            Edge("m1", "mu", ("a", "b"), ("d",)),
            Edge("m2", "mu", ("d", "c"), ("e",)),
            Edge("m3", "mu", ("e", "f"), ("g",)),
        ),
        MU,
    )
    m = Morphism(rule_l, host, dict(zip("01234", "abced")), {"mu1": "m1", "mu2": "m2"})
    c, k2c, c2g = pushout_complement(k2l, m)
    assert set(c.nodes) == {"a", "b", "c", "e", "f", "g"}
    assert [x.id for x in c.edges] == ["m3"]
    back, _, _ = pushout(k2c, k2l)
    assert find_isomorphism(back, host) is not None
    assert same_maps(k2c.then(c2g), k2l.then(m))


def test_pushout_complement_rejects_dangling():
    rule_l = Hypergraph(("x",), (Edge("u", "eta", (), ("x",)),), MU)
    k = discrete([], MU)
    host = Hypergraph(
        ("x", "y", "z"), (Edge("u", "eta", (), ("x",)), Edge("m", "mu", ("x", "y"), ("z",))), MU
    )
    with pytest.raises(NoPushoutComplement):
        pushout_complement(Morphism(k, rule_l, {}, {}), identity_into(rule_l, host))


def identity_into(a: Hypergraph, b: Hypergraph) -> Morphism:
    return Morphism(a, b, {v: v for v in a.nodes}, {e.id: e.id for e in a.edges})


def test_convex_match_examples():
    # a -f-> b -f-> c
    sig = Signature([("f", 1, 1)])
    g = Hypergraph(("a", "b", "c"), (Edge("x", "f", ("a",), ("b",)), Edge("y", "f", ("b",), ("c",))), sig)
    two = discrete(["p", "q"], sig)
    assert not is_convex_match(Morphism(two, g, {"p": "a", "q": "c"}, {}))
    # the wire a -> b leaves the image unless its edge is matched too
    assert not is_convex_match(Morphism(two, g, {"p": "a", "q": "b"}, {}))
    one = Hypergraph(("p", "q"), (Edge("e", "f", ("p",), ("q",)),), sig)
    assert is_convex_match(Morphism(one, g, {"p": "a", "q": "b"}, {"e": "x"}))
    assert is_convex_match(identity(g))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_convexity_agrees_with_path_oracle(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_nodes=5, max_edges=4)
    if has_cycle(g):
        return
    small = random_graph(rng, max_nodes=3, max_edges=2, sig=g.signature, prefix="s")
    for m in list(all_morphisms(small, g, mono=True))[:20]:
        assert is_convex_match(m) == path_closed(m)


# -- isomorphism ---------------------------------------------------------------------


def shuffled(g: Hypergraph, rng: random.Random) -> tuple[Hypergraph, dict]:
    nodes = list(g.nodes)
    rng.shuffle(nodes)
    names = {v: f"z{k}" for k, v in enumerate(nodes)}
    edges = [Edge(f"q{e.id}", e.label, tuple(names[v] for v in e.sources), tuple(names[v] for v in e.targets)) for e in g.edges]
    rng.shuffle(edges)
    return Hypergraph(tuple(names[v] for v in nodes), tuple(edges), g.signature), names


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_isomorphism_is_found_for_relabelled_copies(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_nodes=6, max_edges=4)
    h, _ = shuffled(g, rng)
    m = find_isomorphism(g, h)
    assert m is not None and m.is_mono() and m.is_epi()
    assert invariant(g) == invariant(h)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_isomorphism_agrees_with_brute_force(s1, s2):
    a = random_graph(random.Random(s1), max_nodes=4, max_edges=3)
    b = random_graph(random.Random(s2), max_nodes=4, max_edges=3)
    expected = len(a.nodes) == len(b.nodes) and len(a.edges) == len(b.edges) and any(
        True for _ in all_morphisms(a, b, mono=True)
    )
    assert (find_isomorphism(a, b) is not None) == expected


def test_interface_order_matters_for_isomorphism():
    g = mu_chain()
    a = InterfacedHypergraph(g, ("0", "1", "2"), ("3",))
    b = InterfacedHypergraph(g, ("1", "0", "2"), ("3",))
    assert isomorphic(a, a) is not None
    # swapping the two inputs of a non-commutative mu is not an isomorphism over the interface
    assert isomorphic(a, b) is None


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_isomorphism_is_symmetric_and_transitive(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_nodes=5, max_edges=4)
    h, _ = shuffled(g, rng)
    k, _ = shuffled(h, rng)
    ab, bc = find_isomorphism(g, h), find_isomorphism(h, k)
    assert find_isomorphism(h, g) is not None
    assert ab is not None and bc is not None
    assert ab.then(bc).is_mono() and ab.then(bc).is_epi()
