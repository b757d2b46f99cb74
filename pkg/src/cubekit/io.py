"""JSON formats for set systems and graphs, and report assembly.

Set system: ``{"domain": [name, ...], "family": [[name, ...], ...]}``.
Graph: ``{"vertices": [name, ...], "edges": [[u, v], ...], "loops": [name, ...]}``.
"""

import json

from .classifiers import classify
from .duality import classify_dual_properties
from .errors import NotNeighbourhoodWG, ParseError
from .graphs import (
    Graph,
    closed_neighbourhood_system,
    decompose_neighbourhood_wg,
    neighbourhood_flags,
    neighbourhood_system,
    twin_analysis,
)
from .oneinclusion import is_well_graded
from .setsystem import SetSystem, additionality, essential_domain
from .shattering import is_extremal, is_maximum, shatter_report

SCHEMA = "cubekit.report/1"


def _string_list(value, path, fieldname):
    if not isinstance(value, list):
        raise ParseError("expected a list", path, fieldname)
    for i, item in enumerate(value):
        if not isinstance(item, str):
            raise ParseError(f"entry {i} is not a string", path, f"{fieldname}[{i}]")
    return value


def _require_object(data, path, keys):
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", path)
    for key in keys:
        if key not in data:
            raise ParseError("missing field", path, key)


def system_from_json(data, path=None):
    _require_object(data, path, ("domain", "family"))
    domain = _string_list(data["domain"], path, "domain")
    family = data["family"]
    if not isinstance(family, list):
        raise ParseError("expected a list of members", path, "family")
    members = [_string_list(m, path, f"family[{i}]") for i, m in enumerate(family)]
    for i, m in enumerate(members):
        if len(set(m)) != len(m):
            raise ParseError("member lists an element twice", path, f"family[{i}]")
    return SetSystem.from_sets(domain, members)


def graph_from_json(data, path=None):
    _require_object(data, path, ("vertices", "edges"))
    vertices = _string_list(data["vertices"], path, "vertices")
    edges = data["edges"]
    if not isinstance(edges, list):
        raise ParseError("expected a list of edges", path, "edges")
    pairs = []
    for i, e in enumerate(edges):
        _string_list(e, path, f"edges[{i}]")
        if len(e) != 2:
            raise ParseError("an edge has exactly two endpoints", path, f"edges[{i}]")
        if e[0] == e[1]:
            raise ParseError("self-edge; list loops under 'loops'", path, f"edges[{i}]")
        pairs.append((e[0], e[1]))
    loops = _string_list(data.get("loops", []), path, "loops")
    return Graph.from_edges(vertices, pairs, loops)


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", path) from None


def load_system(path):
    return system_from_json(_load_json(path), path)


def load_graph(path):
    return graph_from_json(_load_json(path), path)


def dumps(obj, pretty=False):
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def system_report(s):
    """Everything the library can say about one set system."""
    sh = shatter_report(s)
    flags = {
        "wg": is_well_graded(s),
        "extremal": is_extremal(s),
        "maximum": is_maximum(s),
    }
    flags.update(classify_dual_properties(s))
    return {
        "schema": SCHEMA,
        "input": s.to_json(),
        "flags": flags,
        "numbers": {
            "size": len(s.family),
            "ess": len(essential_domain(s)),
            "additionality": additionality(s),
            "vc_dim": sh.vc_dim,
            "sht": len(sh.shattered),
            "ssht": len(sh.strongly_shattered),
        },
        "essential_domain": sorted(essential_domain(s), key=s.domain.index),
        "classification": classify(s).to_json(s),
    }


def graph_report(g):
    out = {
        "schema": SCHEMA,
        "input": g.to_json(),
        "twins": twin_analysis(g),
        "neighbourhood_system": system_report(neighbourhood_system(g)),
        "closed_neighbourhood_system": system_report(closed_neighbourhood_system(g)),
    }
    if g.is_loopless():
        out["flags"] = neighbourhood_flags(g)
        try:
            out["half_graph_decomposition"] = decompose_neighbourhood_wg(g).to_json()
        except NotNeighbourhoodWG:
            out["half_graph_decomposition"] = None
    return out

