"""Dual and essential-dual systems and the self-dual predicates."""

from dataclasses import dataclass

from .errors import EmptyDomainDual, NoEssentialElements
from .oneinclusion import is_well_graded
from .setsystem import (
    SetSystem,
    bits,
    canonical_order,
    essential_mask,
    find_isomorphism,
    purify,
)
from .shattering import is_extremal, is_maximum


@dataclass(frozen=True)
class DualSystem:
    """``system`` lives on Y_F; ``index_map[x]`` is the member A_x as a mask over Y_F."""

    system: SetSystem
    origin: SetSystem
    index_map: dict

    def merged_elements(self):
        """Groups of original elements sharing the same A_x."""
        groups = {}
        for name, mask in self.index_map.items():
            groups.setdefault(mask, []).append(name)
        return [names for names in groups.values() if len(names) > 1]

    def to_json(self):
        out = self.system.to_json()
        out["index_map"] = {
            name: self.system.names_of(mask) for name, mask in self.index_map.items()
        }
        return out


def y_names(s):
    return tuple("y_" + s.render_member(m) for m in s.family)


def _column(s, i):
    mask = 0
    for j, m in enumerate(s.family):
        if m >> i & 1:
            mask |= 1 << j
    return mask


def _build(s, positions):
    domain = y_names(s)
    index_map = {s.domain[i]: _column(s, i) for i in positions}
    family = canonical_order(set(index_map.values()))
    return DualSystem(SetSystem._trusted(domain, family), s, index_map)


def dual(s):
    if s.n == 0:
        raise EmptyDomainDual("the dual of a system on an empty domain has no members")
    return _build(s, range(s.n))


def ess_dual(s):
    ess = essential_mask(s)
    if not ess:
        raise NoEssentialElements("the essential domain is empty")
    return _build(s, bits(ess))


def second_dual_is_purification(s):
    return find_isomorphism(dual(dual(s).system).system, purify(s)) is not None


def r_values(s):
    """``(r_F, r'_F)``: members among {∅, X}, and members containing or missing all of ess."""
    full = s.full_mask
    fam = s._family_set
    r = len({0, full} & fam)
    ess = essential_mask(s)
    r_prime = sum(1 for m in s.family if m & ess == ess or m & ess == 0)
    return r, r_prime


def is_self_dual(s):
    if s.n == 0 or s.n != len(s.family):
        return False
    return find_isomorphism(s, dual(s).system) is not None


def is_almost_self_dual(s):
    if s.n == 0:
        return False
    return find_isomorphism(dual(s).system, purify(s)) is not None


def classify_dual_properties(s):
    """Flags describing how ``s`` relates to its dual and ess-dual.

    Systems on an empty domain have no dual; every flag is then False.
    ``ess_dual_wg`` and ``self_and_ess_dual_wg`` are None when the essential
    domain is empty.
    """
    if s.n == 0:
        return {
            "dual_wg": False,
            "ess_dual_wg": None,
            "self_dual": False,
            "almost_self_dual": False,
            "self_and_dual_wg": False,
            "self_and_ess_dual_wg": None,
            "self_and_dual_extremal": False,
            "self_and_dual_maximum": False,
        }
    d = dual(s).system
    wg = is_well_graded(s)
    dual_wg = is_well_graded(d)
    if essential_mask(s):
        ess_dual_wg = is_well_graded(ess_dual(s).system)
        self_and_ess = wg and ess_dual_wg
    else:
        ess_dual_wg = None
        self_and_ess = None
    return {
        "dual_wg": dual_wg,
        "ess_dual_wg": ess_dual_wg,
        "self_dual": is_self_dual(s),
        "almost_self_dual": is_almost_self_dual(s),
        "self_and_dual_wg": wg and dual_wg,
        "self_and_ess_dual_wg": self_and_ess,
        "self_and_dual_extremal": is_extremal(s) and is_extremal(d),
        "self_and_dual_maximum": is_maximum(s) and is_maximum(d),
    }
