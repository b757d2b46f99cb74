"""Exhaustive small-instance generators and the theorem-checking harness.

Each check recomputes both sides of a statement from separate code paths
(definition-level brute force on one side, structural recognizers on the
other) and runs over every labelled instance up to a size bound.  A failing
instance is recorded in serialized form so ``recheck`` can replay it alone.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .caps import get_caps
from .classifiers import (
    DOWNWARD,
    FULL_CHAIN,
    UPWARD,
    classify,
    full_chain_order,
    graph_is_tree_distinct_labels,
    is_semitree,
    is_uniformly_directed_rooted_tree_after_flip,
    is_uniformly_directed_semitree,
    sinks,
    sources,
)
from .duality import dual, ess_dual, find_isomorphism, r_values, second_dual_is_purification
from .errors import CubekitError, InputError, SizeTooLarge
from .graphs import (
    Graph,
    clique_number,
    clique_system,
    closed_neighbourhood_system,
    decompose_neighbourhood_wg,
    graph_complement,
    independence_number,
    independent_set_system,
    neighbourhood_system,
    reassemble,
    recognize_half_graph_union,
    twin_analysis,
)
from .oneinclusion import (
    below,
    build_graph,
    cut_set,
    edges_from_labels,
    is_connected,
    is_well_graded,
    is_well_graded_midpoint,
    reverse,
    st_union,
)
from .setsystem import (
    SetSystem,
    additionality,
    bits,
    canonical_order,
    complement_family,
    essential_mask,
    flip,
    is_purified,
    purify,
    same_type_classes,
    trace,
)
from .shattering import (
    is_extremal,
    is_maximum,
    sauer_shelah_bound,
    shattered_sets,
    strongly_shattered_sets,
    vc_dimension,
)

MAX_FAILURES_KEPT = 10


# ---------------------------------------------------------------- generators

def _canonical_subsets(n):
    return canonical_order(range(1 << n))


def system_count(n):
    return (1 << (1 << n)) - 1


def system_at(n, code):
    """The system whose family is the set of subsets picked by the bits of
    ``code`` (bit i picks the i-th subset in canonical order)."""
    order = _canonical_subsets(n)
    domain = tuple(str(i) for i in range(1, n + 1))
    return SetSystem._trusted(domain, tuple(order[i] for i in bits(code)))


def enumerate_systems(n):
    """Every nonempty family of distinct subsets of ``{"1", ..., "n"}``, once each."""
    cap = get_caps().max_enum_domain
    if n < 0 or n > cap:
        raise SizeTooLarge(f"system enumeration supports 0 <= n <= {cap}, got {n}")
    order = _canonical_subsets(n)
    domain = tuple(str(i) for i in range(1, n + 1))
    for code in range(1, system_count(n) + 1):
        yield SetSystem._trusted(domain, tuple(order[i] for i in bits(code)))


def graph_count(k):
    return 1 << comb(k, 2)


def graph_at(k, code):
    pairs = list(combinations(range(k), 2))
    rows = [0] * k
    for bit, (i, j) in enumerate(pairs):
        if code >> bit & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(tuple(f"v{i}" for i in range(1, k + 1)), tuple(rows))


def enumerate_graphs(k, loopless=True):
    """Every labelled loopless graph on ``v1..vk``, once each."""
    cap = get_caps().max_enum_vertices
    if k < 1 or k > cap:
        raise SizeTooLarge(f"graph enumeration supports 1 <= k <= {cap}, got {k}")
    if not loopless:
        raise InputError("only loopless enumeration is supported")
    for code in range(graph_count(k)):
        yield graph_at(k, code)


# ---------------------------------------------------------------- system checks

def check_sandwich(s):
    sht = shattered_sets(s)
    ssht = strongly_shattered_sets(s)
    size = len(s.family)
    if not len(ssht) <= size <= len(sht):
        return f"sandwich violated: {len(ssht)} <= {size} <= {len(sht)}"
    if not set(ssht) <= set(sht):
        return "a strongly shattered set is not shattered"
    # Shattered sets recomputed over every subset, without the level cut-off.
    brute = {y for y in range(1 << s.n) if len({m & y for m in s.family}) == 1 << y.bit_count()}
    if brute != set(sht):
        return "level-wise shattered sets disagree with the full scan"
    d = max(y.bit_count() for y in brute)
    for y in range(1 << s.n):
        if len({m & y for m in s.family}) > sauer_shelah_bound(y.bit_count(), d):
            return f"Sauer-Shelah violated at {s.render_member(y)}"
    a = set(sht) == set(ssht)
    b = size == len(sht)
    c = size == len(ssht)
    if not a == b == c:
        return f"extremal forms disagree: ssht=sht {a}, |F|=|sht| {b}, |F|=|ssht| {c}"
    if is_maximum(s) and not a:
        return "maximum but not extremal"
    if is_extremal(s) and not is_well_graded(s):
        return "extremal but not well-graded"
    return None


def check_prop_ineq(s):
    g = build_graph(s)
    wg = is_well_graded(s)
    if wg != is_well_graded_midpoint(s):
        return "distance and midpoint well-gradedness disagree"
    if any((g.st(e.source) ^ g.st(e.target)).bit_count() != 1 for e in g.edges):
        return "edge does not join members at Hamming distance 1"
    ess = essential_mask(s).bit_count()
    if wg:
        if not is_connected(g):
            return "well-graded but disconnected"
        if not ess + 1 <= len(s.family) <= len(g.edges) + 1:
            return "Prop inequalities violated"
    if is_connected(g) and len(edges_from_labels(g)) != ess:
        return "distinct labels differ from |ess| on a connected graph"
    return None


def nine_clauses(s):
    g = build_graph(s)
    wg = is_well_graded(s)
    vc = vc_dimension(s)
    ess_mask = essential_mask(s)
    ess = ess_mask.bit_count()
    size = len(s.family)
    nedges = len(g.edges)
    connected = is_connected(g)
    labels = [e.label for e in g.edges]
    label_mask = 0
    for lab in labels:
        label_mask |= 1 << lab
    c7 = (
        connected
        and size == ess + 1
        and nedges == ess
        and label_mask == ess_mask
        and len(set(labels)) == len(labels)
    )
    flips = [is_uniformly_directed_rooted_tree_after_flip(s, d) for d in s.family]
    return (
        wg and vc <= 1,
        is_extremal(s) and vc <= 1,
        connected and ess + 1 == size == nedges + 1,
        wg and size == nedges + 1,
        wg and additionality(s) == 1,
        graph_is_tree_distinct_labels(g),
        c7,
        all(flips),
        any(flips),
    )


def check_nine(s):
    clauses = nine_clauses(s)
    if len(set(clauses)) != 1:
        return "clauses disagree: " + "".join("1" if c else "0" for c in clauses)
    return None


def additionality_two_clauses(s):
    flips = [is_uniformly_directed_semitree(build_graph(flip(s, d, 0))) for d in s.family]
    return (
        is_well_graded(s) and additionality(s) == 2,
        all(flips),
        any(flips),
        is_semitree(build_graph(s)),
    )


def check_additionality_two(s):
    clauses = additionality_two_clauses(s)
    if len(set(clauses)) != 1:
        return "clauses disagree: " + "".join("1" if c else "0" for c in clauses)
    return None


def check_vc_add2(s):
    wg = is_well_graded(s)
    add = additionality(s)
    vc = vc_dimension(s)
    if wg and add == 2 and vc != 2:
        return f"well-graded with additionality 2 but VC-dimension {vc}"
    if vc <= 1 and add > 1:
        return f"VC-dimension {vc} but additionality {add}"
    return None


def _antichains(members):
    """Nonempty antichains (under inclusion) of the given member masks."""
    out = []

    def grow(start, chosen):
        for i in range(start, len(members)):
            m = members[i]
            if all(m & c != m and m & c != c for c in chosen):
                nxt = chosen + [m]
                out.append(nxt)
                grow(i + 1, nxt)

    grow(0, [])
    return out


def check_below(s):
    # below(U) and st(U) only depend on the maximal elements of U, so
    # antichains of members cover every nonempty U.
    if 0 not in s._family_set or not is_well_graded(s):
        return None
    g = build_graph(s)
    r = additionality(s)
    index = {m: i for i, m in enumerate(s.family)}
    for chain in _antichains(list(s.family)):
        u = [index[m] for m in chain]
        st = st_union(g, u).bit_count()
        size = len(below(g, u))
        if not st + 1 <= size <= st + r:
            names = [s.render_member(m) for m in chain]
            return f"U={names}: |st|={st}, |below|={size}, r={r}"
    return None


def check_cutset(s):
    g = build_graph(s)
    connected = is_connected(g)
    for a in bits(essential_mask(s)):
        if any(e.label == a for e in g.edges):
            cut_set(g, a)
        elif connected:
            return f"essential {s.domain[a]} labels no edge of a connected graph"
    return None


def check_shattered_labels(s):
    if not is_well_graded(s):
        return None
    counts = edges_from_labels(build_graph(s))
    for d in shattered_sets(s):
        need = 1 << (d.bit_count() - 1) if d else 0
        for a in bits(d):
            if counts.get(a, 0) < need:
                return f"{s.domain[a]} labels {counts.get(a, 0)} < {need} edges"
    return None


def check_second_dual(s):
    if s.n == 0:
        return None
    if not second_dual_is_purification(s):
        return "second dual is not isomorphic to the purification"
    if is_purified(s) and find_isomorphism(dual(dual(s).system).system, s) is None:
        return "purified system is not isomorphic to its second dual"
    return None


def _named_family(system):
    return frozenset(frozenset(system.names_of(m)) for m in system.family)


def check_complement_dual(s):
    if s.n == 0:
        return None
    comp = complement_family(s)
    left = _named_family(dual(comp).system)
    right_sys = complement_family(dual(s).system)
    full = s.full_mask
    rename = {"y_" + s.render_member(a): "y_" + s.render_member(a ^ full) for a in s.family}
    right = frozenset(
        frozenset(rename[name] for name in member) for member in _named_family(right_sys)
    )
    if left != right:
        return "dual of complement differs from complement of dual"
    if is_well_graded(dual(s).system) != is_well_graded(dual(comp).system):
        return "dual well-gradedness not preserved by complementation"
    return None


def check_flip_invariants(s):
    ess = essential_mask(s)
    add = additionality(s)
    vc = vc_dimension(s)
    for a in s.family:
        t = flip(s, a, 0)
        if 0 not in t._family_set:
            return f"flip at {s.render_member(a)} misses the empty set"
        if essential_mask(t) != ess or additionality(t) != add or vc_dimension(t) != vc:
            return f"flip at {s.render_member(a)} changes ess/additionality/VC"
    comp = complement_family(s)
    if complement_family(comp) != s or essential_mask(comp) != ess:
        return "complementation is not an ess-preserving involution"
    for x in range(s.n):
        single = trace(s, 1 << x)
        if (len(single.family) == 2) != bool(ess >> x & 1):
            return f"essential test disagrees with the trace on {s.domain[x]}"
    return None


def check_reverse(s):
    g = build_graph(s)
    r = reverse(g)
    if reverse(r).edge_key() != g.edge_key():
        return "reversing twice is not the identity"
    if any(g.st(e.source).bit_count() % 2 == g.st(e.target).bit_count() % 2 for e in g.edges):
        return "edge joins members of equal parity"
    return None


def check_purify(s):
    p = purify(s)
    if purify(p) != p or not is_purified(p):
        return "purification is not idempotent"
    if len(p.family) != len(s.family) or len(p.domain) != len(same_type_classes(s)):
        return "purification changed the family size or class count"
    if is_well_graded(s) and essential_mask(s) == s.full_mask and not is_purified(s):
        return "well-graded system with X = ess is not purified"
    return None


def check_selfdual_char(s):
    if s.n == 0:
        return None
    wg = is_well_graded(s)
    kind = classify(s).kind
    a = wg and is_well_graded(dual(s).system)
    b = kind in (FULL_CHAIN, UPWARD, DOWNWARD)
    if a != b:
        return f"self-and-dual WG {a} but classified {kind}"
    ess = essential_mask(s).bit_count()
    size = len(s.family)
    r, r_prime = r_values(s)
    if a:
        if additionality(s) != 1:
            return "self-and-dual WG with additionality != 1"
        if not ess + 1 <= size <= ess + r + 1:
            return "self-and-dual WG outside |ess|+1 <= |F| <= |ess|+r_F+1"
    if ess:
        c = wg and is_well_graded(ess_dual(s).system)
        if c != (kind == FULL_CHAIN):
            return f"self-and-ess-dual WG {c} but classified {kind}"
        if c and (size != ess + 1 or r_prime != 2):
            return "self-and-ess-dual WG without |F|=|ess|+1 and r'_F=2"
    return None


def check_semitree_dual(s):
    if not is_semitree(build_graph(s)):
        return None
    if is_well_graded(dual(s).system) or is_well_graded(ess_dual(s).system):
        return "semitree system with a well-graded dual or ess-dual"
    return None


def _self_and_dual_maximum(s):
    return is_maximum(s) and is_maximum(dual(s).system)


def check_selfdual_max(s):
    """Extremal/WG agreement, the forward maximum direction, and the reverse
    direction in the form that holds (``F = {∅, X}`` only when |X| = 1)."""
    if s.n == 0:
        return None
    d = dual(s).system
    ext = is_extremal(s) and is_extremal(d)
    wg = is_well_graded(s) and is_well_graded(d)
    if ext != wg:
        return f"self-and-dual extremal {ext} but self-and-dual WG {wg}"
    mx = _self_and_dual_maximum(s)
    pair = set(s.family) == {0, s.full_mask}
    if mx and not (len(s.family) == 1 or pair):
        return "self-and-dual maximum outside |F|=1 or F={∅,X}"
    if mx != (len(s.family) == 1 or (pair and s.n == 1)):
        return "self-and-dual maximum differs from |F|=1 or (F={∅,X}, |X|=1)"
    return None


def check_selfdual_max_literal(s):
    if s.n == 0:
        return None
    mx = _self_and_dual_maximum(s)
    rhs = len(s.family) == 1 or set(s.family) == {0, s.full_mask}
    if mx != rhs:
        return f"self-and-dual maximum {mx} but (|F|=1 or F={{∅,X}}) {rhs}"
    return None


def check_source_sink(s):
    g = build_graph(s)
    if not is_connected(g):
        return None
    src = sources(g)
    snk = sinks(g)
    if len(src) > 1 or len(snk) > 1:
        return f"{len(src)} sources and {len(snk)} sinks"
    if src and snk and graph_is_tree_distinct_labels(g):
        if any(g.degree(v) > 2 for v in range(len(g))) or full_chain_order(s) is None:
            return "tree with a source and a sink is not a one-way path"
    return None


# ---------------------------------------------------------------- graph checks

def check_halfgraph(g):
    s = neighbourhood_system(g)
    nwg = is_well_graded(s)
    rec = recognize_half_graph_union(g)
    if nwg != (rec is not None):
        return f"neighbourhood WG {nwg} but structural recognizer says {rec is not None}"
    if nwg:
        dec = decompose_neighbourhood_wg(g)
        if dec != rec:
            return "wing decomposition differs from the structural one"
        if reassemble(dec, g.vertices) != g:
            return "decomposition does not reassemble the graph"
        if not twin_analysis(g)["semi_twin_free"]:
            return "neighbourhood-WG graph is not semi-twin-free"
        if not is_well_graded(dual(s).system):
            return "neighbourhood-WG graph without a well-graded dual"
    if is_extremal(s) != nwg:
        return "neighbourhood extremal differs from neighbourhood WG"
    if is_maximum(s) != all(row == 0 for row in g.adj):
        return "neighbourhood maximum differs from all-isolated"
    return None


def check_closed_halfgraph(g):
    c = closed_neighbourhood_system(g)
    cnwg = is_well_graded(c)
    comp = graph_complement(g)
    if cnwg != is_well_graded(neighbourhood_system(comp)):
        return "closed-neighbourhood WG differs from the complement's neighbourhood WG"
    if cnwg != (recognize_half_graph_union(comp) is not None):
        return "closed-neighbourhood WG differs from the co-half-graph structure"
    if is_extremal(c) != cnwg:
        return "closed-neighbourhood extremal differs from WG"
    complete = all(row == g.full_mask & ~(1 << i) for i, row in enumerate(g.adj))
    if is_maximum(c) != complete:
        return "closed-neighbourhood maximum differs from completeness"
    return None


def check_twins_selfdual(g):
    s = neighbourhood_system(g)
    d = dual(s).system
    if find_isomorphism(d, purify(s)) is None:
        return "neighbourhood system is not almost self-dual"
    if twin_analysis(g)["twin_free"] and find_isomorphism(s, d) is None:
        return "twin-free graph with a non-self-dual neighbourhood system"
    for v in range(g.n):
        for w in range(g.n):
            if v != w and g.adj[v] & g.adj[w] == g.adj[v] and g.adj[w] >> v & 1:
                return f"N({g.vertices[v]}) ⊆ N({g.vertices[w]}) yet they are adjacent"
    return None


def check_clique(g):
    full = g.full_mask
    for system, number in (
        (clique_system(g), clique_number(g)),
        (independent_set_system(g), independence_number(g)),
    ):
        fam = system._family_set
        if any(m ^ (1 << i) not in fam for m in fam for i in bits(m)):
            return "system is not down-closed"
        if not is_extremal(system):
            return "clique-type system is not extremal"
        vc = vc_dimension(system)
        if vc != number:
            return f"VC-dimension {vc} differs from {number}"
    complete = all(row == full & ~(1 << i) for i, row in enumerate(g.adj))
    edgeless = all(row == 0 for row in g.adj)
    if clique_number(g) >= 2 and is_maximum(clique_system(g)) != complete:
        return "clique system maximum differs from completeness"
    if independence_number(g) >= 2 and is_maximum(independent_set_system(g)) != edgeless:
        return "independent-set system maximum differs from edgelessness"
    return None


# ---------------------------------------------------------------- registry

@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    kind: str  # "systems", "graphs" or "cliques"
    fn: object
    erratum: bool = False


SYSTEM_CHECKS = (
    CheckSpec("sandwich", "systems", check_sandwich),
    CheckSpec("prop-ineq", "systems", check_prop_ineq),
    CheckSpec("thm-3-equivalences", "systems", check_nine),
    CheckSpec("thm-additionality-2", "systems", check_additionality_two),
    CheckSpec("rem-vc-add2", "systems", check_vc_add2),
    CheckSpec("lemma-below", "systems", check_below),
    CheckSpec("rem-cutset", "systems", check_cutset),
    CheckSpec("rem-shattered-labels", "systems", check_shattered_labels),
    CheckSpec("rem-second-dual", "systems", check_second_dual),
    CheckSpec("rem-complement-dual", "systems", check_complement_dual),
    CheckSpec("flip-invariants", "systems", check_flip_invariants),
    CheckSpec("rem-reverse", "systems", check_reverse),
    CheckSpec("purify", "systems", check_purify),
    CheckSpec("thm-selfdual-char", "systems", check_selfdual_char),
    CheckSpec("lemma-semitree-dual", "systems", check_semitree_dual),
    CheckSpec("cor-selfdual-max", "systems", check_selfdual_max),
    CheckSpec("cor-selfdual-max-literal", "systems", check_selfdual_max_literal, erratum=True),
    CheckSpec("source-sink", "systems", check_source_sink),
)

GRAPH_CHECKS = (
    CheckSpec("thm-halfgraph", "graphs", check_halfgraph),
    CheckSpec("thm-closed-halfgraph", "graphs", check_closed_halfgraph),
    CheckSpec("rem-twins-selfdual", "graphs", check_twins_selfdual),
    CheckSpec("rem-clique", "cliques", check_clique),
)

CHECKS = {c.check_id: c for c in SYSTEM_CHECKS + GRAPH_CHECKS}


@dataclass
class TheoremCheck:
    check_id: str
    bound: int
    instances: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)
    erratum: bool = False

    @property
    def passed(self):
        return self.failure_count == 0

    def merge(self, other):
        self.instances += other.instances
        self.failure_count += other.failure_count
        self.failures = sorted(self.failures + other.failures, key=_failure_key)[
            :MAX_FAILURES_KEPT
        ]

    def to_json(self):
        return {
            "check_id": self.check_id,
            "bound": self.bound,
            "instances": self.instances,
            "passed": self.passed,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "erratum": self.erratum,
        }


def _failure_key(f):
    return (f["size"], f["code"])


def _run_one(spec, instance):
    try:
        return spec.fn(instance)
    except CubekitError as exc:
        return f"{type(exc).__name__}: {exc}"


def _instances(kind, size, start, stop):
    make = system_at if kind == "systems" else graph_at
    for code in range(start, stop):
        yield code, make(size, code)


def _code_range(kind, size):
    if kind == "systems":
        return 1, system_count(size) + 1
    return 0, graph_count(size)


def _run_shard(check_id, size, start, stop):
    spec = CHECKS[check_id]
    result = TheoremCheck(check_id, size, erratum=spec.erratum)
    for code, inst in _instances(spec.kind, size, start, stop):
        result.instances += 1
        reason = _run_one(spec, inst)
        if reason is not None:
            result.failure_count += 1
            if len(result.failures) < MAX_FAILURES_KEPT:
                result.failures.append(
                    {"size": size, "code": code, "instance": inst.to_json(), "reason": reason}
                )
    return result


def _bounds_for(kind, systems, graphs, cliques):
    if kind == "systems":
        return range(0, systems + 1)
    if kind == "graphs":
        return range(1, graphs + 1)
    return range(1, cliques + 1)


def run_all_checks(systems=3, graphs=4, cliques=None, workers=1, only=None):
    """Run every registered check and return the list of TheoremCheck results.

    ``systems`` bounds the domain size, ``graphs`` the vertex count for the
    neighbourhood checks and ``cliques`` (default: ``min(graphs, 5)``) the
    vertex count for the clique checks.  Work is split into fixed index
    ranges, so the result does not depend on ``workers``.
    """
    if cliques is None:
        cliques = min(graphs, 5)
    caps = get_caps()
    if systems > caps.max_enum_domain:
        raise SizeTooLarge(f"systems bound {systems} exceeds {caps.max_enum_domain}")
    if max(graphs, cliques) > caps.max_enum_vertices:
        raise SizeTooLarge(f"graph bound exceeds {caps.max_enum_vertices}")
    specs = [CHECKS[c] for c in only] if only else list(CHECKS.values())
    tasks = []
    for spec in specs:
        for size in _bounds_for(spec.kind, systems, graphs, cliques):
            start, stop = _code_range(spec.kind, size)
            step = max(1, (stop - start + 63) // 64) if workers > 1 else stop - start
            for lo in range(start, stop, step):
                tasks.append((spec.check_id, size, lo, min(stop, lo + step)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(_run_shard, *zip(*tasks)))
    else:
        shards = [_run_shard(*t) for t in tasks]
    merged = {}
    for spec in specs:
        merged[spec.check_id] = TheoremCheck(
            spec.check_id,
            {"systems": systems, "graphs": graphs, "cliques": cliques}[spec.kind],
            erratum=spec.erratum,
        )
    for shard in shards:
        merged[shard.check_id].merge(shard)
    return [merged[spec.check_id] for spec in specs]


def recheck(check_id, instance):
    """Replay one check on a serialized instance; returns the failure reason or None."""
    from .io import graph_from_json, system_from_json

    spec = CHECKS[check_id]
    if spec.kind == "systems":
        inst = system_from_json(instance)
    else:
        inst = graph_from_json(instance)
    return _run_one(spec, inst)


def report_json(results):
    return {
        "schema": "cubekit.verify/1",
        "all_passed": all(r.passed for r in results if not r.erratum),
        "checks": [r.to_json() for r in results],
    }

