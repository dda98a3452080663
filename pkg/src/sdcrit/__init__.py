"""Critical pair analysis for rewriting of string diagrams as hypergraphs."""

from .confluence import ConfluenceReport, JoinabilityResult, check_local_confluence, derive_pair, joinable
from .critical_pairs import (
    CriticalPair,
    dedup_up_to_iso,
    enumerate_all_critical_pairs,
    enumerate_essential_critical_pairs,
    enumerate_independent_edge_sets,
    enumerate_k_independent_edge_sets,
    induced_hypergraph,
    is_parallel,
)
from .hypergraph import Edge, Hypergraph, InterfacedHypergraph, Morphism, Signature, coequalizer, pushout, pushout_complement
from .iso import isomorphic
from .rewriting import Derivation, RewriteRule, RewriteSystem, enumerate_matches, rewrite_step, validate_rule
from .serialize import load_system, loads_system

__all__ = [
    "ConfluenceReport",
    "CriticalPair",
    "Derivation",
    "Edge",
    "Hypergraph",
    "InterfacedHypergraph",
    "JoinabilityResult",
    "Morphism",
    "RewriteRule",
    "RewriteSystem",
    "Signature",
    "check_local_confluence",
    "coequalizer",
    "dedup_up_to_iso",
    "derive_pair",
    "enumerate_all_critical_pairs",
    "enumerate_essential_critical_pairs",
    "enumerate_independent_edge_sets",
    "enumerate_k_independent_edge_sets",
    "enumerate_matches",
    "induced_hypergraph",
    "is_parallel",
    "isomorphic",
    "joinable",
    "load_system",
    "loads_system",
    "pushout",
    "pushout_complement",
    "rewrite_step",
    "validate_rule",
]
