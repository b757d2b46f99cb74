"""Structural recognizers: trees with distinct labels, semitrees, full-chains,
upward/downward starlike systems, and the self-and-dual verdict."""

from dataclasses import dataclass, field
from typing import Optional

from .duality import dual
from .errors import InvariantViolation
from .oneinclusion import INF, bfs_distances, build_graph, is_connected, is_well_graded
from .setsystem import flip

FULL_CHAIN = "FullChain"
UPWARD = "UpwardStarlike"
DOWNWARD = "DownwardStarlike"
TREE = "TreeDistinctLabels"
SEMITREE = "Semitree"
OTHER = "Other"
KINDS = (FULL_CHAIN, UPWARD, DOWNWARD, TREE, SEMITREE, OTHER)


def _labels_distinct(edges):
    labels = [e.label for e in edges]
    return len(set(labels)) == len(labels)


def graph_is_tree_distinct_labels(g):
    return (
        len(g.edges) == len(g) - 1
        and _labels_distinct(g.edges)
        and is_connected(g)
    )


def is_tree_distinct_labels(s):
    return graph_is_tree_distinct_labels(build_graph(s))


def _directed_away_from(g, root):
    """Every edge ``a -> b`` satisfies ``d(root, b) > d(root, a)``."""
    dist = bfs_distances(g, root)
    if INF in dist:
        return False
    return all(dist[e.target] > dist[e.source] for e in g.edges)


def _directed_towards(g, root):
    dist = bfs_distances(g, root)
    if INF in dist:
        return False
    return all(dist[e.target] < dist[e.source] for e in g.edges)


def sources(g):
    """Vertices every edge moves away from; at most one in a connected graph."""
    return [v for v in range(len(g)) if _directed_away_from(g, v)]


def sinks(g):
    return [v for v in range(len(g)) if _directed_towards(g, v)]


def is_uniformly_directed_rooted_tree_after_flip(s, d):
    t = flip(s, d, 0)
    g = build_graph(t)
    if not graph_is_tree_distinct_labels(g):
        return False
    root = t.family.index(0)
    return _directed_away_from(g, root)


@dataclass(frozen=True)
class SemitreeWitness:
    cycle: tuple  # four vertex indices in cycle order
    labels: tuple  # label of (c0,c1) and label of (c1,c2)


def semitree_witness(g) -> Optional[SemitreeWitness]:
    """Recognize a semitree on any labelled directed graph.

    The graph must be connected with as many edges as vertices; its unique
    cycle (what is left after peeling leaves) must be a C4 whose opposite
    edges carry the same label and point the same way, with two different
    labels on the cycle.  Edges off the cycle carry pairwise distinct labels
    that also avoid the cycle labels.
    """
    nv = len(g)
    if len(g.edges) != nv or not is_connected(g):
        return None
    adj = g.adjacency
    degree = [len(row) for row in adj]
    removed = [False] * nv
    leaves = [v for v in range(nv) if degree[v] == 1]
    while leaves:
        v = leaves.pop()
        removed[v] = True
        for w, _, _ in adj[v]:
            if not removed[w]:
                degree[w] -= 1
                if degree[w] == 1:
                    leaves.append(w)
    cycle_vertices = [v for v in range(nv) if not removed[v]]
    if len(cycle_vertices) != 4:
        return None
    on_cycle = set(cycle_vertices)
    start = cycle_vertices[0]
    nbrs = sorted(w for w, _, _ in adj[start] if w in on_cycle)
    order = [start, nbrs[0]]
    while len(order) < 4:
        prev, cur = order[-2], order[-1]
        nxt = [w for w, _, _ in adj[cur] if w in on_cycle and w != prev]
        order.append(nxt[0])

    def cycle_edge(a, b):
        # (label, +1 if directed a -> b along the walk, else -1)
        for w, label, direction in adj[a]:
            if w == b:
                return label, direction
        raise InvariantViolation("cycle walk left the cycle")

    steps = [cycle_edge(order[i], order[(i + 1) % 4]) for i in range(4)]
    # Edge (c0,c1) is parallel to (c3,c2), i.e. opposite to (c2,c3) along the walk.
    for i in (0, 1):
        lab, direction = steps[i]
        lab2, direction2 = steps[i + 2]
        if lab != lab2 or direction != -direction2:
            return None
    cycle_labels = (steps[0][0], steps[1][0])
    if cycle_labels[0] == cycle_labels[1]:
        return None
    cycle_edges = set()
    for i in range(4):
        a, b = order[i], order[(i + 1) % 4]
        cycle_edges.add(frozenset((a, b)))
    off = [e for e in g.edges if frozenset((e.source, e.target)) not in cycle_edges]
    if not _labels_distinct(off) or any(e.label in cycle_labels for e in off):
        return None
    return SemitreeWitness(tuple(order), cycle_labels)


def is_semitree(g):
    return semitree_witness(g) is not None


def uniformly_directed_semitree_centres(g):
    """Every vertex ``o`` such that each edge points away from ``o``.

    Returns None when ``g`` is not a semitree.
    """
    if not is_semitree(g):
        return None
    return [v for v in range(len(g)) if _directed_away_from(g, v)]


def is_uniformly_directed_semitree(g):
    centres = uniformly_directed_semitree_centres(g)
    if centres is None:
        return False
    return len(g) == 4 or bool(centres)


def flip_to_empty_graphs(s):
    for d in s.family:
        yield d, build_graph(flip(s, d, 0))


@dataclass(frozen=True)
class Wing:
    chain: tuple  # member masks starting (upward) or ending (downward) at the centre
    labels: int

    @property
    def length(self):
        return len(self.chain) - 1


@dataclass(frozen=True)
class Classification:
    kind: str
    wings: tuple = ()
    witness: dict = field(default_factory=dict)

    def to_json(self, s):
        out = {"kind": self.kind}
        if self.wings:
            out["wings"] = [
                {
                    "chain": [s.names_of(m) for m in w.chain],
                    "domain": s.names_of(w.labels),
                    "length": w.length,
                }
                for w in self.wings
            ]
        if self.witness:
            wit = dict(self.witness)
            if "chain" in wit:
                wit["chain"] = [s.names_of(m) for m in wit["chain"]]
            if "cycle" in wit:
                wit["cycle"] = [s.names_of(m) for m in wit["cycle"]]
                wit["labels"] = [s.domain[i] for i in wit["labels"]]
            out["witness"] = wit
        return out


def full_chain_order(s):
    """The chain order when the family is a full-chain, else None."""
    fam = s.family
    for a, b in zip(fam, fam[1:]):
        if a & b != a or (b ^ a).bit_count() != 1:
            return None
    return fam


def _starlike_from(g, centre, outward):
    """Wings of a starlike tree centred at ``centre``, or None."""
    if not graph_is_tree_distinct_labels(g) or g.degree(centre) < 2:
        return None
    if any(g.degree(v) > 2 for v in range(len(g)) if v != centre):
        return None
    if outward and not _directed_away_from(g, centre):
        return None
    if not outward and not _directed_towards(g, centre):
        return None
    adj = g.adjacency
    wings = []
    for first, _, _ in sorted(adj[centre]):
        path = [centre, first]
        labels = g.st(centre) ^ g.st(first)
        while True:
            nxt = [w for w, _, _ in adj[path[-1]] if w != path[-2]]
            if not nxt:
                break
            labels |= g.st(path[-1]) ^ g.st(nxt[0])
            path.append(nxt[0])
        chain = tuple(g.st(v) for v in path)
        if not outward:
            chain = chain[::-1]
        wings.append(Wing(chain, labels))
    return tuple(wings)


def upward_starlike_wings(s, g=None):
    if 0 not in s._family_set:
        return None
    union = 0
    for m in s.family:
        union |= m
    if union == s.full_mask:
        return None
    g = g or build_graph(s)
    return _starlike_from(g, s.family.index(0), outward=True)


def downward_starlike_wings(s, g=None):
    full = s.full_mask
    if full not in s._family_set:
        return None
    inter = full
    for m in s.family:
        inter &= m
    if inter == 0:
        return None
    g = g or build_graph(s)
    return _starlike_from(g, s.family.index(full), outward=False)


def classify(s):
    """Structural kind of ``s``, checked in a fixed priority order.

    A single-member family counts as a full-chain of length 1.
    """
    chain = full_chain_order(s)
    if chain is not None:
        return Classification(FULL_CHAIN, witness={"chain": chain, "length": len(chain)})
    g = build_graph(s)
    wings = upward_starlike_wings(s, g)
    if wings is not None:
        return Classification(UPWARD, wings=wings)
    wings = downward_starlike_wings(s, g)
    if wings is not None:
        return Classification(DOWNWARD, wings=wings)
    if graph_is_tree_distinct_labels(g):
        return Classification(TREE)
    wit = semitree_witness(g)
    if wit is not None:
        centres = uniformly_directed_semitree_centres(g)
        return Classification(
            SEMITREE,
            witness={
                "cycle": tuple(g.st(v) for v in wit.cycle),
                "labels": wit.labels,
                "uniform_centres": [s.names_of(g.st(v)) for v in centres],
            },
        )
    return Classification(OTHER)


def verdict_self_and_dual(s):
    """Whether ``s`` and its dual are both well-graded.

    Also decides the structural side independently and raises
    InvariantViolation if the two disagree.
    """
    a = is_well_graded(s) and is_well_graded(dual(s).system)
    b = classify(s).kind in (FULL_CHAIN, UPWARD, DOWNWARD)
    if a != b:
        raise InvariantViolation(f"self-and-dual verdict disagrees with classify on {s!r}")
    return a
