from hypothesis import strategies as st

from cubekit import SetSystem

# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES = []

WORKED_DOMAIN = "abcdefghijkl"
WORKED_FAMILY = ["a", "ab", "abc", "ac", "ace", "acef", "aceg", "ah", "abcd", "abi", "abj", "abjk", "abjl"]

# one-inclusion graph of the worked example, edge for edge: (source, target, label)
WORKED_EDGES = {
    ("a", "ac", "c"), ("a", "ab", "b"), ("ac", "abc", "b"), ("ab", "abc", "c"),
    ("ac", "ace", "e"), ("ace", "aceg", "g"), ("ace", "acef", "f"), ("abc", "abcd", "d"),
    ("a", "ah", "h"), ("ab", "abi", "i"), ("ab", "abj", "j"), ("abj", "abjk", "k"),
    ("abj", "abjl", "l"),
}


def S(domain, *members):
    """Shorthand: one-character element names; ``""`` is the empty member."""
    return SetSystem.from_sets(list(domain), [list(m) for m in members])


def worked_example():
    return S(WORKED_DOMAIN, *WORKED_FAMILY)


def names(s, mask):
    return "".join(s.names_of(mask))


@st.composite
def systems(draw, max_n=4):
    n = draw(st.integers(0, max_n))
    masks = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1))
    return SetSystem(tuple(str(i) for i in range(1, n + 1)), tuple(masks))


@st.composite
def loopless_graphs(draw, max_k=6):
    from itertools import combinations

    from cubekit import Graph

    k = draw(st.integers(1, max_k))
    vertices = [f"v{i}" for i in range(1, k + 1)]
    pairs = list(combinations(vertices, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(vertices, chosen)
