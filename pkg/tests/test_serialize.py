import json
import random

import pytest

from oracles import isomorphic_interfaced, random_system
from sdcrit.critical_pairs import enumerate_all_critical_pairs
from sdcrit.serialize import (
    FormatError,
    critical_pair_from_json,
    critical_pair_to_dot,
    critical_pair_to_json,
    dumps,
    loads_system,
    rule_to_dot,
    system_to_json,
    to_dot,
)


def assert_same_system(a, b):
    assert a.signature == b.signature
    assert [r.name for r in a.rules] == [r.name for r in b.rules]
    for ra, rb in zip(a.rules, b.rules):
        assert isomorphic_interfaced(ra.left, rb.left)
        assert isomorphic_interfaced(ra.right, rb.right)


def systems(worked, bimonoid):
    rng = random.Random(9)
    return [worked, bimonoid] + [random_system(rng) for _ in range(10)]


def test_system_round_trip(worked, bimonoid):
    for system in systems(worked, bimonoid):
        text = dumps(system_to_json(system))
        again = loads_system(text)
        assert_same_system(system, again)
        assert dumps(system_to_json(again)) == text


def test_critical_pair_round_trip(worked, bimonoid):
    for system in systems(worked, bimonoid):
        for cp in enumerate_all_critical_pairs(system):
            record = json.loads(json.dumps(critical_pair_to_json(cp)))
            back = critical_pair_from_json(record, system)
            assert (back["rule_i"], back["rule_j"]) == (cp.rule_i, cp.rule_j)
            assert isomorphic_interfaced(back["source"], cp.source)
            assert back["match1"] == cp.match1 and back["match2"] == cp.match2


@pytest.mark.parametrize(
    "text, where",
    [
        ('{"signature": [', "line 1 column 16"),
        ("[]", "$"),
        ('{"signature": [{"label": "f", "arity": "1", "coarity": 1}], "rules": []}', "signature[0].arity"),
        ('{"signature": [], "rules": [{"name": "r", "left": {"nodes": [], "edges": [], "inputs": [], "outputs": []}}]}', "rules[0]"),
        ('{"signature": [], "rules": [{"name": "r", "left": {"nodes": [], "edges": []}}]}', "rules[0].left"),
        (
            '{"signature": [{"label": "f", "arity": 1, "coarity": 1}], "rules": [{"name": "r", '
            '"left": {"nodes": ["a"], "edges": [{"id": "e", "label": "f", "sources": ["a"], "targets": ["zz"]}], '
            '"inputs": [], "outputs": []}, "right": {"nodes": [], "edges": [], "inputs": [], "outputs": []}}]}',
            "rules[0].left",
        ),
    ],
)
def test_errors_carry_locations(text, where):
    with pytest.raises(FormatError) as info:
        loads_system(text)
    assert info.value.where == where


def test_dot_output(worked):
    (assoc, _) = worked.rules
    dot = to_dot(assoc.left, "L")
    assert dot.startswith('digraph "L" {')
    assert dot.count("shape=box") == 2 and dot.count("shape=point") == 5
    assert 'headlabel="1"' in dot
    assert rule_to_dot(assoc).count("digraph") == 2
    cp = next(enumerate_all_critical_pairs(worked, pairs=[(0, 1)]))
    coloured = critical_pair_to_dot(cp)
    assert "purple" in coloured and "red" in coloured and "blue" in coloured
