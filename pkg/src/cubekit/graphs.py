"""Undirected graphs and the set systems they induce.

Adjacency is stored as one bit-vector row per vertex.  Loops are only
representable when ``loops_allowed`` is set, and every characterization
routine here insists on loopless input.
"""

from dataclasses import dataclass
from itertools import combinations

from .caps import debug_enabled, get_caps
from .classifiers import FULL_CHAIN, UPWARD, classify
from .errors import (
    DuplicateElement,
    InputError,
    InvariantViolation,
    LoopsNotSupported,
    NotNeighbourhoodWG,
    UnknownElement,
    VertexCapExceeded,
)
from .oneinclusion import is_well_graded
from .setsystem import SetSystem, bits, canonical_order
from .shattering import is_extremal, is_maximum


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    adj: tuple
    loops_allowed: bool = False
    loops: int = 0

    def __post_init__(self):
        if not self.vertices:
            raise InputError("a graph needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateElement("duplicate vertex names")
        if len(self.adj) != len(self.vertices):
            raise InputError("one adjacency row per vertex is required")
        for i, row in enumerate(self.adj):
            if row >> i & 1:
                raise InputError("loops belong in the loop set, not the adjacency rows")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise InputError("adjacency must be symmetric")
        if self.loops and not self.loops_allowed:
            raise LoopsNotSupported("loops present but loops_allowed is off")

    @classmethod
    def from_edges(cls, vertices, edges, loops=(), loops_allowed=None):
        vertices = tuple(vertices)
        lookup = {v: i for i, v in enumerate(vertices)}
        if len(lookup) != len(vertices):
            raise DuplicateElement("duplicate vertex names")
        rows = [0] * len(vertices)
        for edge in edges:
            u, v = edge
            for w in (u, v):
                if w not in lookup:
                    raise UnknownElement(f"unknown vertex {w!r}")
            if u == v:
                raise InputError(f"edge [{u!r}, {v!r}] is a loop; list it under loops")
            i, j = lookup[u], lookup[v]
            if rows[i] >> j & 1:
                raise InputError(f"duplicate edge {u!r}-{v!r}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        loop_mask = 0
        for v in loops:
            if v not in lookup:
                raise UnknownElement(f"unknown vertex {v!r}")
            loop_mask |= 1 << lookup[v]
        if loops_allowed is None:
            loops_allowed = bool(loop_mask)
        return cls(vertices, tuple(rows), loops_allowed, loop_mask)

    @property
    def n(self):
        return len(self.vertices)

    @property
    def full_mask(self):
        return (1 << len(self.vertices)) - 1

    def index(self, name):
        try:
            return self.vertices.index(name)
        except ValueError:
            raise UnknownElement(f"unknown vertex {name!r}") from None

    def neighbours(self, v):
        """Open neighbourhood mask; a looped vertex is its own neighbour."""
        return self.adj[v] | (self.loops & (1 << v))

    def closed_neighbours(self, v):
        return self.adj[v] | (1 << v)

    def edges(self):
        return [
            (self.vertices[i], self.vertices[j])
            for i in range(self.n)
            for j in bits(self.adj[i])
            if i < j
        ]

    def edge_count(self):
        return sum(row.bit_count() for row in self.adj) // 2

    def is_loopless(self):
        return self.loops == 0

    def to_json(self):
        out = {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges()]}
        if self.loops:
            out["loops"] = [self.vertices[i] for i in bits(self.loops)]
        return out


def _require_loopless(g):
    if not g.is_loopless():
        raise LoopsNotSupported("this operation needs a loopless graph")


def neighbourhood_system(g):
    family = {g.neighbours(v) for v in range(g.n)}
    return SetSystem._trusted(g.vertices, canonical_order(family))


def closed_neighbourhood_system(g):
    family = {g.closed_neighbours(v) for v in range(g.n)}
    return SetSystem._trusted(g.vertices, canonical_order(family))


def twin_analysis(g):
    n = g.n
    full = g.full_mask
    open_n = [g.neighbours(v) for v in range(n)]
    closed_n = [g.closed_neighbours(v) for v in range(n)]
    twins = [(v, w) for v, w in combinations(range(n), 2) if open_n[v] == open_n[w]]
    ctwins = [(v, w) for v, w in combinations(range(n), 2) if closed_n[v] == closed_n[w]]
    return {
        "twin_free": not twins,
        "closed_twin_free": not ctwins,
        "semi_twin_free": all(open_n[v] == 0 for pair in twins for v in pair),
        "semi_closed_twin_free": all(closed_n[v] == full for pair in ctwins for v in pair),
    }


def graph_complement(g):
    _require_loopless(g)
    full = g.full_mask
    rows = tuple((full ^ row) & ~(1 << i) for i, row in enumerate(g.adj))
    return Graph(g.vertices, rows)


def empty_graph(n, prefix="v"):
    return Graph(tuple(f"{prefix}{i}" for i in range(1, n + 1)), (0,) * n)


def complete_graph(n, prefix="v"):
    full = (1 << n) - 1
    return Graph(
        tuple(f"{prefix}{i}" for i in range(1, n + 1)),
        tuple(full & ~(1 << i) for i in range(n)),
    )


def _half_graph_vertices(n):
    return tuple(f"a{i}" for i in range(1, n + 1)) + tuple(f"b{i}" for i in range(1, n + 1))


def make_half_graph(n, orientation="<="):
    """a_i ~ b_j iff i <= j (or i >= j with ``orientation=">="``)."""
    if n < 1:
        raise InputError("half-graph order must be positive")
    if orientation not in ("<=", ">="):
        raise InputError(f"orientation must be '<=' or '>=', got {orientation!r}")
    edges = [
        (f"a{i}", f"b{j}")
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if (i <= j if orientation == "<=" else i >= j)
    ]
    return Graph.from_edges(_half_graph_vertices(n), edges)


def make_co_half_graph(n):
    """a_i ~ b_j for i > j, plus a clique on each side."""
    if n < 1:
        raise InputError("co-half-graph order must be positive")
    edges = [(f"a{i}", f"b{j}") for i in range(1, n + 1) for j in range(1, i)]
    for side in "ab":
        edges += [(f"{side}{i}", f"{side}{j}") for i, j in combinations(range(1, n + 1), 2)]
    g = Graph.from_edges(_half_graph_vertices(n), edges)
    if g != graph_complement(make_half_graph(n)):
        raise InvariantViolation("co-half-graph is not the complement of the half-graph")
    return g


def disjoint_union(g1, g2):
    if set(g1.vertices) & set(g2.vertices):
        raise DuplicateElement("graphs in a union must have disjoint vertex names")
    shift = g1.n
    rows = g1.adj + tuple(row << shift for row in g2.adj)
    loops = g1.loops | (g2.loops << shift)
    return Graph(
        g1.vertices + g2.vertices, rows, g1.loops_allowed or g2.loops_allowed, loops
    )


def between_full_union(g1, g2):
    """Disjoint union plus every edge between the two parts."""
    u = disjoint_union(g1, g2)
    left = g1.full_mask
    right = g2.full_mask << g1.n
    rows = tuple(row | (right if i < g1.n else left) for i, row in enumerate(u.adj))
    return Graph(u.vertices, rows, u.loops_allowed, u.loops)


@dataclass(frozen=True)
class HalfGraphPair:
    """``a[i] ~ b[j]`` iff ``i <= j`` (0-based within the pair)."""

    a: tuple
    b: tuple

    @property
    def order(self):
        return len(self.a)


@dataclass(frozen=True)
class HalfGraphDecomposition:
    pairs: tuple
    isolated: tuple

    def to_json(self):
        return {
            "pairs": [{"a": list(p.a), "b": list(p.b), "order": p.order} for p in self.pairs],
            "isolated": list(self.isolated),
        }


def reassemble(decomposition, vertices):
    edges = []
    for p in decomposition.pairs:
        for i, a in enumerate(p.a):
            for b in p.b[i:]:
                edges.append((a, b))
    return Graph.from_edges(vertices, edges)


def _normalize_pair(g, side_x, side_y):
    """Name the side holding the smallest vertex index ``a``; order it by
    decreasing degree and the other side by increasing degree."""
    if min(side_y) < min(side_x):
        side_x, side_y = side_y, side_x
    a = sorted(side_x, key=lambda v: (-g.adj[v].bit_count(), v))
    b = sorted(side_y, key=lambda v: (g.adj[v].bit_count(), v))
    return HalfGraphPair(tuple(g.vertices[v] for v in a), tuple(g.vertices[v] for v in b))


def _components(g):
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(comp)
    return comps


def recognize_half_graph_union(g):
    """Structural recognizer: every nontrivial component is a half-graph and
    at least one vertex is isolated.  Returns the decomposition or None."""
    _require_loopless(g)
    isolated = [v for v in range(g.n) if g.adj[v] == 0]
    if not isolated:
        return None
    pairs = []
    for comp in _components(g):
        members = bits(comp)
        if len(members) == 1:
            continue
        # 2-colour the component
        colour = {members[0]: 0}
        stack = [members[0]]
        while stack:
            v = stack.pop()
            for w in bits(g.adj[v]):
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return None
        side_x = [v for v in members if colour[v] == 0]
        side_y = [v for v in members if colour[v] == 1]
        if len(side_x) != len(side_y):
            return None
        pair = _normalize_pair(g, side_x, side_y)
        idx = {name: i for i, name in enumerate(g.vertices)}
        for i, a in enumerate(pair.a):
            row = g.adj[idx[a]]
            want = 0
            for b in pair.b[i:]:
                want |= 1 << idx[b]
            if row != want:
                return None
        pairs.append(pair)
    pairs.sort(key=lambda p: g.index(p.a[0]))
    return HalfGraphDecomposition(tuple(pairs), tuple(g.vertices[v] for v in isolated))


def decompose_neighbourhood_wg(g):
    """Half-graph decomposition read off the wings of the neighbourhood system.

    Each wing ``∅ ⊂ {y1} ⊂ {y1,y2} ⊂ ...`` names the vertices ``x_i`` with
    ``N(x_i) = {y1..yi}``; the wing over the ``x_i`` accompanies it and the two
    together span one half-graph.  Raises NotNeighbourhoodWG when the
    neighbourhood system is not well-graded.
    """
    _require_loopless(g)
    s = neighbourhood_system(g)
    if not is_well_graded(s):
        raise NotNeighbourhoodWG("the neighbourhood system is not well-graded")
    c = classify(s)
    if c.kind == UPWARD:
        chains = [w.chain for w in c.wings]
    elif c.kind == FULL_CHAIN and c.witness["chain"][0] == 0:
        chains = [c.witness["chain"]] if len(c.witness["chain"]) > 1 else []
    else:
        raise InvariantViolation(f"neighbourhood-WG system classified as {c.kind}")
    by_nbhd = {}
    for v in range(g.n):
        by_nbhd.setdefault(g.adj[v], []).append(v)
    pairs = {}
    used = 0
    for chain in chains:
        xs = []
        ys = []
        for prev, cur in zip(chain, chain[1:]):
            owners = by_nbhd.get(cur, [])
            if len(owners) != 1:
                raise InvariantViolation("wing member is not the neighbourhood of exactly one vertex")
            xs.append(owners[0])
            ys.append((cur ^ prev).bit_length() - 1)
        pair = _normalize_pair(g, xs, ys)
        pairs[frozenset(pair.a + pair.b)] = pair
        for v in xs + ys:
            used |= 1 << v
    isolated = [v for v in range(g.n) if not used >> v & 1]
    if not isolated or any(g.adj[v] for v in isolated):
        raise InvariantViolation("wing decomposition leaves a non-isolated vertex")
    ordered = sorted(pairs.values(), key=lambda p: g.index(p.a[0]))
    decomposition = HalfGraphDecomposition(
        tuple(ordered), tuple(g.vertices[v] for v in isolated)
    )
    if reassemble(decomposition, g.vertices) != g:
        raise InvariantViolation("half-graph decomposition does not reassemble the graph")
    return decomposition


def neighbourhood_flags(g):
    s = neighbourhood_system(g)
    c = closed_neighbourhood_system(g)
    flags = {
        "nwg": is_well_graded(s),
        "next": is_extremal(s),
        "nmax": is_maximum(s),
        "cnwg": is_well_graded(c),
        "cnext": is_extremal(c),
        "cnmax": is_maximum(c),
    }
    if debug_enabled():
        _require_loopless(g)
        if flags["nwg"] != flags["next"]:
            raise InvariantViolation("neighbourhood extremal and WG disagree")
        if flags["cnwg"] != is_well_graded(neighbourhood_system(graph_complement(g))):
            raise InvariantViolation("closed-neighbourhood WG disagrees with the complement")
    return flags


def _check_vertex_cap(g):
    cap = get_caps().max_vertices
    if g.n > cap:
        raise VertexCapExceeded(f"{g.n} vertices exceeds the cap of {cap}")


def _all_cliques(rows, n):
    out = [0]

    def extend(clique, candidates):
        while candidates:
            low = candidates & -candidates
            candidates ^= low
            v = low.bit_length() - 1
            grown = clique | low
            out.append(grown)
            # only higher-indexed common neighbours, so each clique appears once
            extend(grown, candidates & rows[v])

    extend(0, (1 << n) - 1)
    return out


def _down_closed_system(g, rows):
    family = _all_cliques(rows, g.n)
    fam_set = set(family)
    for m in family:
        for i in bits(m):
            if m ^ (1 << i) not in fam_set:
                raise InvariantViolation("clique-type system is not down-closed")
    return SetSystem._trusted(g.vertices, canonical_order(family))


def clique_system(g):
    """All cliques of ``g``, including ∅ and the singletons."""
    _check_vertex_cap(g)
    return _down_closed_system(g, g.adj)


def independent_set_system(g):
    _check_vertex_cap(g)
    full = g.full_mask
    rows = tuple((full ^ row) & ~(1 << i) for i, row in enumerate(g.adj))
    return _down_closed_system(g, rows)


def _largest(g, ok):
    for size in range(g.n, 0, -1):
        for combo in combinations(range(g.n), size):
            if ok(combo):
                return size
    return 0


def clique_number(g):
    return _largest(g, lambda c: all(g.adj[u] >> v & 1 for u, v in combinations(c, 2)))


def independence_number(g):
    return _largest(g, lambda c: not any(g.adj[u] >> v & 1 for u, v in combinations(c, 2)))
