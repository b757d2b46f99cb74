import pytest
from hypothesis import given

from cubekit.classifiers import (
    DOWNWARD,
    FULL_CHAIN,
    OTHER,
    SEMITREE,
    TREE,
    UPWARD,
    classify,
    is_semitree,
    is_tree_distinct_labels,
    is_uniformly_directed_rooted_tree_after_flip,
    is_uniformly_directed_semitree,
    semitree_witness,
    sinks,
    sources,
    verdict_self_and_dual,
)
from cubekit.errors import MemberNotInFamily
from cubekit.oracle import enumerate_systems
from cubekit.oneinclusion import build_graph, is_connected
from cubekit.setsystem import complement_family, power_set
from helpers import S, names, systems, worked_example


def test_tree_distinct_labels_examples():
    assert is_tree_distinct_labels(S("123", "1", "12", "13"))
    assert not is_tree_distinct_labels(worked_example())
    assert not is_tree_distinct_labels(power_set("12"))


def test_rooted_tree_after_flip_examples():
    s = S("123", "1", "12", "13")
    assert is_uniformly_directed_rooted_tree_after_flip(s, ["1"])
    assert is_uniformly_directed_rooted_tree_after_flip(s, ["1", "2"])
    assert is_uniformly_directed_rooted_tree_after_flip(S("12", "", "1", "12"), [])
    with pytest.raises(MemberNotInFamily):
        is_uniformly_directed_rooted_tree_after_flip(s, ["2"])


def test_every_flip_agrees_with_some_flip_exhaustively():
    for n in range(5):
        for s in enumerate_systems(n):
            results = {is_uniformly_directed_rooted_tree_after_flip(s, d) for d in s.family}
            assert len(results) == 1


def test_semitree_on_worked_example():
    s = worked_example()
    g = build_graph(s)
    wit = semitree_witness(g)
    assert [names(s, g.st(v)) for v in wit.cycle] == ["a", "ab", "abc", "ac"]
    assert [s.domain[i] for i in wit.labels] == ["b", "c"]
    assert is_uniformly_directed_semitree(g)


def test_semitree_examples():
    assert not is_semitree(build_graph(S("123", "1", "12", "13")))
    g = build_graph(power_set("12"))
    assert is_semitree(g)
    assert is_uniformly_directed_semitree(g)


def test_semitree_rejects_cycle_with_shared_outside_label():
    # a square plus a pendant edge whose label repeats a cycle label
    s = S("123", "", "1", "2", "12", "3", "13")
    assert not is_semitree(build_graph(s))


def test_classify_examples():
    c = classify(S("123", "", "1", "2"))
    assert c.kind == UPWARD
    assert [w.length for w in c.wings] == [1, 1]

    c = classify(S("12", "", "1", "12"))
    assert c.kind == FULL_CHAIN
    assert c.witness["length"] == 3

    assert classify(S("123", "1", "12", "13")).kind == TREE
    assert classify(S("1", "1")).kind == FULL_CHAIN
    assert classify(power_set("12")).kind == SEMITREE
    assert classify(S("12", "1", "2")).kind == OTHER


def test_classify_worked_example_json():
    s = worked_example()
    out = classify(s).to_json(s)
    assert out["kind"] == SEMITREE
    assert out["witness"]["cycle"] == [["a"], ["a", "b"], ["a", "b", "c"], ["a", "c"]]
    assert out["witness"]["labels"] == ["b", "c"]
    assert out["witness"]["uniform_centres"] == [["a"]]


def test_downward_is_complement_of_upward():
    up = S("1234", "", "1", "12", "3")
    assert classify(up).kind == UPWARD
    down = complement_family(up)
    c = classify(down)
    assert c.kind == DOWNWARD
    assert sorted(w.length for w in c.wings) == [1, 2]


def test_starlike_needs_an_unused_element():
    # {∅, {1}, {2}} on {1,2}: a path centred at ∅ but every element is used
    assert classify(S("12", "", "1", "2")).kind == TREE


def test_starlike_wing_domains_are_disjoint():
    for n in range(5):
        for s in enumerate_systems(n):
            c = classify(s)
            if c.kind in (UPWARD, DOWNWARD):
                seen = 0
                for w in c.wings:
                    assert seen & w.labels == 0
                    seen |= w.labels


def test_verdict_examples():
    assert verdict_self_and_dual(S("123", "", "1", "12", "123"))
    assert not verdict_self_and_dual(S("123", "1", "12", "13"))
    assert not verdict_self_and_dual(worked_example())


def test_verdict_exhaustively():
    for n in range(1, 5):
        for s in enumerate_systems(n):
            verdict_self_and_dual(s)


def test_sources_and_sinks():
    s = S("12", "", "1", "12")
    g = build_graph(s)
    assert [names(s, g.st(v)) for v in sources(g)] == [""]
    assert [names(s, g.st(v)) for v in sinks(g)] == ["12"]
    g = build_graph(worked_example())
    assert [names(g.system, g.st(v)) for v in sources(g)] == ["a"]
    assert sinks(g) == []


@given(systems(max_n=4))
def test_at_most_one_source_and_sink(s):
    g = build_graph(s)
    if is_connected(g):
        assert len(sources(g)) <= 1
        assert len(sinks(g)) <= 1
