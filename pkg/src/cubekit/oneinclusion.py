"""The labelled directed one-inclusion graph of a set system.

Vertex ``i`` of the graph stands for ``system.family[i]``.  An edge
``(source, target, label)`` means ``family[target] = family[source] | {label}``.
"""

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .caps import debug_enabled
from .errors import EmptyVertexSet, InputError, InvariantViolation, NotEssential
from .setsystem import SetSystem, complement_family, essential_mask

INF = math.inf


class Edge(NamedTuple):
    source: int
    target: int
    label: int


@dataclass(frozen=True, eq=False)
class OneInclusionGraph:
    system: SetSystem
    edges: tuple

    @property
    def members(self):
        return self.system.family

    def __len__(self):
        return len(self.system.family)

    def st(self, v):
        return self.system.family[v]

    @cached_property
    def adjacency(self):
        """Per vertex: ``(neighbour, label, +1 outgoing / -1 incoming)``."""
        adj = [[] for _ in self.system.family]
        for e in self.edges:
            adj[e.source].append((e.target, e.label, 1))
            adj[e.target].append((e.source, e.label, -1))
        return tuple(tuple(row) for row in adj)

    def degree(self, v):
        return len(self.adjacency[v])

    def in_degree(self, v):
        return sum(1 for _, _, d in self.adjacency[v] if d < 0)

    def out_degree(self, v):
        return sum(1 for _, _, d in self.adjacency[v] if d > 0)

    def vertex_of(self, member):
        mask = self.system.as_mask(member)
        try:
            return self.system.family.index(mask)
        except ValueError:
            raise InputError(f"{self.system.render_member(mask)} is not a vertex") from None

    def label_name(self, e):
        return self.system.domain[e.label]

    def edge_key(self):
        """Edges as ``(source member, target member, label)`` triples."""
        fam = self.system.family
        return frozenset((fam[e.source], fam[e.target], e.label) for e in self.edges)


def build_graph(s):
    index = {m: i for i, m in enumerate(s.family)}
    edges = []
    full = s.full_mask
    for i, a in enumerate(s.family):
        free = full & ~a
        while free:
            bit = free & -free
            free ^= bit
            j = index.get(a | bit)
            if j is not None:
                edges.append(Edge(i, j, bit.bit_length() - 1))
    return OneInclusionGraph(s, tuple(edges))


def bfs_distances(g, source):
    """Undirected distances from ``source``; unreachable vertices get ``INF``."""
    dist = [INF] * len(g)
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w, _, _ in adj[v]:
            if dist[w] is INF:
                dist[w] = dv
                queue.append(w)
    return dist


def distance_table(g):
    return tuple(tuple(bfs_distances(g, v)) for v in range(len(g)))


def is_connected(g):
    return INF not in bfs_distances(g, 0)


def parity_colouring(g):
    return tuple(m.bit_count() & 1 for m in g.members)


def is_well_graded_midpoint(s):
    """Between any two members at Hamming distance >= 2 lies a third one."""
    fam = s.family
    for i, a in enumerate(fam):
        for b in fam[i + 1:]:
            if (a ^ b).bit_count() < 2:
                continue
            lo, hi = a & b, a | b
            if not any(c != a and c != b and c & lo == lo and c | hi == hi for c in fam):
                return False
    return True


def graph_is_well_graded(g):
    fam = g.members
    for v in range(len(fam)):
        dist = bfs_distances(g, v)
        a = fam[v]
        for w in range(v + 1, len(fam)):
            if dist[w] != (a ^ fam[w]).bit_count():
                return False
    return True


def is_well_graded(s):
    """Graph distance equals Hamming distance for every pair of members.

    A disconnected one-inclusion graph is never well-graded.
    """
    result = graph_is_well_graded(build_graph(s))
    if debug_enabled() and result != is_well_graded_midpoint(s):
        raise InvariantViolation(f"well-gradedness tests disagree on {s!r}")
    return result


def distinct_labels(g):
    return frozenset(e.label for e in g.edges)


def _induced_connected(g, vertices):
    vertices = set(vertices)
    if not vertices:
        return True
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    adj = g.adjacency
    while stack:
        v = stack.pop()
        for w, _, _ in adj[v]:
            if w in vertices and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vertices


def cut_set(g, element):
    """All edges labelled ``element``, checked to be the cut between the
    members containing it and the rest, all directed into the containing side."""
    s = g.system
    a = s.index(element) if isinstance(element, str) else element
    bit = 1 << a
    labelled = tuple(e for e in g.edges if e.label == a)
    if not labelled:
        raise NotEssential(f"{s.domain[a]!r} labels no edge")
    inside = {v for v, m in enumerate(s.family) if m & bit}
    crossing = tuple(e for e in g.edges if (e.source in inside) != (e.target in inside))
    if set(crossing) != set(labelled):
        raise InvariantViolation(f"label class of {s.domain[a]!r} is not a cut-set")
    if any(e.source in inside or e.target not in inside for e in labelled):
        raise InvariantViolation(f"cut edges of {s.domain[a]!r} point the wrong way")
    if graph_is_well_graded(g):
        outside = set(range(len(g))) - inside
        if not (_induced_connected(g, inside) and _induced_connected(g, outside)):
            raise InvariantViolation(f"cut sides of {s.domain[a]!r} are disconnected")
    return labelled


def st_union(g, vertices):
    vertices = list(vertices)
    if not vertices:
        raise EmptyVertexSet("st of an empty vertex set")
    out = 0
    for v in vertices:
        out |= g.st(v)
    return out


def below(g, vertices):
    """Vertices whose member is contained in the member of some vertex of ``vertices``."""
    vertices = list(vertices)
    if not vertices:
        raise EmptyVertexSet("below of an empty vertex set")
    tops = [g.st(u) for u in vertices]
    return frozenset(
        v for v, m in enumerate(g.members) if any(m & t == m for t in tops)
    )


def reverse(g):
    """Same vertices and labels with every edge direction flipped.

    Checked against the one-inclusion graph of the complement family under
    the correspondence between a member and its complement.
    """
    rev = OneInclusionGraph(
        g.system, tuple(Edge(e.target, e.source, e.label) for e in g.edges)
    )
    fam = g.system.family
    upward = all(fam[e.target].bit_count() > fam[e.source].bit_count() for e in g.edges)
    if upward:
        full = g.system.full_mask
        expected = build_graph(complement_family(g.system)).edge_key()
        mapped = frozenset((a ^ full, b ^ full, lab) for a, b, lab in rev.edge_key())
        if mapped != expected:
            raise InvariantViolation("reverse graph does not match the complement family")
    elif rev.edge_key() != build_graph(g.system).edge_key():
        # reversing an already reversed graph must give back the original
        raise InvariantViolation("reverse is not an involution on this graph")
    return rev


def edges_from_labels(g):
    """Count of edges per label index."""
    counts = {}
    for e in g.edges:
        counts[e.label] = counts.get(e.label, 0) + 1
    return counts


def to_dot(g, name="G"):
    s = g.system
    lines = [f"digraph {name} {{"]
    for m in s.family:
        lines.append(f'  "{s.render_member(m)}";')
    for e in g.edges:
        src = s.render_member(g.st(e.source))
        dst = s.render_member(g.st(e.target))
        lines.append(f'  "{src}" -> "{dst}" [label="{s.domain[e.label]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def essential_labels_match(g):
    """For a connected graph the distinct labels are exactly the essential elements."""
    labels = 0
    for e in g.edges:
        labels |= 1 << e.label
    return labels == essential_mask(g.system)
