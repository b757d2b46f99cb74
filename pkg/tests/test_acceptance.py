"""The ten acceptance criteria, each run exhaustively at its stated bound.

Every test records one pass/fail line; the lines are printed as they are
produced and again, in order, in the terminal summary.
"""

import time
from contextlib import contextmanager

import pytest

from cubekit.classifiers import SEMITREE, classify
from cubekit.oneinclusion import build_graph, edges_from_labels, is_well_graded
from cubekit.oracle import run_all_checks, system_count
from cubekit.setsystem import additionality, essential_mask
from cubekit.shattering import vc_dimension
from helpers import ACCEPTANCE_LINES, WORKED_EDGES, names, worked_example

SYSTEMS = 4
GRAPHS = 6
CLIQUES = 5
ALL_SYSTEMS = sum(system_count(n) for n in range(SYSTEMS + 1))  # 65,535 on |X|=4 plus smaller
ALL_GRAPHS = sum(1 << (k * (k - 1) // 2) for k in range(1, GRAPHS + 1))  # 32,768 on 6 vertices plus smaller


def _record(num, line):
    ACCEPTANCE_LINES.append((num, line))
    print(line)


@contextmanager
def criterion(num, title, limit=None):
    """Time the body and record a PASS/FAIL line; ``note`` may be set by the body."""
    state = {"note": ""}
    start = time.perf_counter()
    try:
        yield state
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        reason = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        _record(num, f"criterion {num:2d} FAIL  {title} ({elapsed:.1f}s): {reason}")
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        _record(num, f"criterion {num:2d} FAIL  {title} ({elapsed:.1f}s, limit {limit}s)")
        raise AssertionError(f"criterion {num} took {elapsed:.1f}s, limit {limit}s")
    note = f" {state['note']}" if state["note"] else ""
    _record(num, f"criterion {num:2d} PASS  {title} ({elapsed:.1f}s){note}")


def run(*check_ids):
    results = run_all_checks(SYSTEMS, GRAPHS, CLIQUES, only=list(check_ids))
    return {r.check_id: r for r in results}


def assert_clean(results, expected_instances):
    for r in results.values():
        assert r.instances == expected_instances, f"{r.check_id}: {r.instances} instances"
        assert r.passed, f"{r.check_id}: {r.failure_count} counterexamples, first {r.failures[:1]}"


def test_criterion_1_worked_example():
    with criterion(1, "worked example fidelity", limit=1.0):
        s = worked_example()
        g = build_graph(s)
        assert len(s) == 13
        assert essential_mask(s).bit_count() == 11
        assert additionality(s) == 2
        assert is_well_graded(s)
        assert vc_dimension(s) == 2
        got = {(names(s, g.st(e.source)), names(s, g.st(e.target)), s.domain[e.label]) for e in g.edges}
        assert got == WORKED_EDGES, "one-inclusion graph differs from the expected edge set"
        counts = {s.domain[k]: v for k, v in edges_from_labels(g).items()}
        assert counts == {x: (2 if x in "bc" else 1) for x in "bcdefghijkl"}
        assert classify(s).kind == SEMITREE


def test_criterion_2_nine_way_equivalence():
    with criterion(2, "nine-way equivalence, |X| <= 4", limit=60.0) as c:
        results = run("thm-3-equivalences")
        assert_clean(results, ALL_SYSTEMS)
        c["note"] = f"{ALL_SYSTEMS} systems"


def test_criterion_3_additionality_two():
    with criterion(3, "additionality-2 characterization and VCdim 2, |X| <= 4") as c:
        assert_clean(run("thm-additionality-2", "rem-vc-add2"), ALL_SYSTEMS)
        c["note"] = f"{ALL_SYSTEMS} systems"


def test_criterion_4_sandwich_and_sauer_shelah():
    with criterion(4, "sandwich, Sauer-Shelah, extremal three-way agreement, |X| <= 4") as c:
        assert_clean(run("sandwich", "prop-ineq"), ALL_SYSTEMS)
        c["note"] = f"{ALL_SYSTEMS} systems"


def test_criterion_5_self_and_dual_theorem():
    with criterion(5, "self-and-dual WG characterization, |X| <= 4") as c:
        assert_clean(run("thm-selfdual-char", "lemma-semitree-dual"), ALL_SYSTEMS)
        c["note"] = f"{ALL_SYSTEMS} systems"


LITERAL_COUNTEREXAMPLES = [
    {"domain": ["1", "2"], "family": [[], ["1", "2"]]},
    {"domain": ["1", "2", "3"], "family": [[], ["1", "2", "3"]]},
    {"domain": ["1", "2", "3", "4"], "family": [[], ["1", "2", "3", "4"]]},
]


def test_criterion_6_self_and_dual_maximum():
    """The statement holds only in the corrected form.

    {∅, X} with |X| >= 2 is self-and-dual WG but not maximum: its trace on X
    has 2 members where the Sauer-Shelah bound is 1 + |X|.  This test asserts
    the corrected form and pins the exact set of counterexamples to the
    literal one; the literal form itself is the strict xfail below.
    """
    num, title = 6, "self-and-dual maximum, |X| <= 4"
    start = time.perf_counter()
    results = run("cor-selfdual-max", "cor-selfdual-max-literal")
    corrected = results["cor-selfdual-max"]
    literal = results["cor-selfdual-max-literal"]
    elapsed = time.perf_counter() - start
    assert corrected.instances == literal.instances == ALL_SYSTEMS
    assert corrected.passed, corrected.failures[:1]
    assert literal.failure_count == 3
    assert [f["instance"] for f in literal.failures] == LITERAL_COUNTEREXAMPLES
    _record(
        num,
        f"criterion {num:2d} FAIL  {title} ({elapsed:.1f}s): as stated it has 3 counterexamples "
        "(F={∅,X}, |X|=2,3,4); corrected form (|F|=1 or F={∅,X} with |X|=1) PASS",
    )


@pytest.mark.xfail(strict=True, reason="F={∅,X} with |X|>=2 is not maximum")
def test_criterion_6_literal_statement():
    (literal,) = run_all_checks(SYSTEMS, GRAPHS, CLIQUES, only=["cor-selfdual-max-literal"])
    assert literal.passed


def test_criterion_7_half_graph_theorem():
    with criterion(7, "half-graph theorem, graphs <= 6 vertices", limit=120.0) as c:
        assert_clean(run("thm-halfgraph"), ALL_GRAPHS)
        c["note"] = f"{ALL_GRAPHS} graphs"


def test_criterion_8_closed_half_graph_theorem():
    with criterion(8, "closed-neighbourhood theorem, graphs <= 6 vertices") as c:
        assert_clean(run("thm-closed-halfgraph", "rem-twins-selfdual"), ALL_GRAPHS)
        c["note"] = f"{ALL_GRAPHS} graphs"


def test_criterion_9_clique_systems():
    with criterion(9, "clique and independent-set systems, graphs <= 5 vertices") as c:
        expected = sum(1 << (k * (k - 1) // 2) for k in range(1, CLIQUES + 1))
        assert_clean(run("rem-clique"), expected)
        c["note"] = f"{expected} graphs"


def test_criterion_10_lemma_level_properties():
    with criterion(10, "below bounds, label counts, cut-sets, second dual, complement/dual, |X| <= 4") as c:
        checks = (
            "lemma-below",
            "rem-shattered-labels",
            "rem-cutset",
            "rem-second-dual",
            "rem-complement-dual",
            "flip-invariants",
            "rem-reverse",
            "purify",
            "source-sink",
        )
        assert_clean(run(*checks), ALL_SYSTEMS)
        c["note"] = f"{ALL_SYSTEMS} systems, {len(checks)} checks"
