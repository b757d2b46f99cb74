"""Finite set systems over an interned element table.

Members are stored as Python ints used as bit-vectors: bit ``i`` set means
the member contains ``domain[i]``.  Python ints are unbounded, so the width
cap (``Caps.max_width``) is a policy knob rather than a storage limit.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .caps import get_caps
from .errors import (
    DomainTooLarge,
    DuplicateElement,
    DuplicateMember,
    EmptyFamily,
    InputError,
    MemberNotInFamily,
    NotASubset,
    UnknownElement,
)


class ElementId(NamedTuple):
    index: int
    name: str


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _member_key(mask):
    return (mask.bit_count(), bits(mask))


def canonical_order(masks):
    """Sort members by cardinality, then lexicographically by element index."""
    return tuple(sorted(masks, key=_member_key))


@dataclass(frozen=True)
class SetSystem:
    """A domain of named elements and a nonempty family of distinct subsets.

    ``family`` is always kept in canonical order, so two systems with the
    same domain and the same members compare equal.
    """

    domain: tuple
    family: tuple

    def __post_init__(self):
        domain = tuple(self.domain)
        for name in domain:
            if not isinstance(name, str):
                raise InputError(f"element names must be strings, got {name!r}")
        if len(set(domain)) != len(domain):
            dupes = sorted(n for n, c in Counter(domain).items() if c > 1)
            raise DuplicateElement(f"duplicate domain elements: {dupes}")
        cap = get_caps().max_width
        if len(domain) > cap:
            raise DomainTooLarge(f"domain has {len(domain)} elements, cap is {cap}")
        family = tuple(self.family)
        if not family:
            raise EmptyFamily("a set system needs at least one member")
        full = (1 << len(domain)) - 1
        for m in family:
            if not isinstance(m, int) or m < 0 or m & ~full:
                raise NotASubset(f"member {m!r} is not a subset of the domain")
        if len(set(family)) != len(family):
            raise DuplicateMember("family members must be distinct")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "family", canonical_order(family))

    @classmethod
    def _trusted(cls, domain, family):
        # Skips validation; callers guarantee the invariants and the canonical order.
        obj = object.__new__(cls)
        object.__setattr__(obj, "domain", domain)
        object.__setattr__(obj, "family", family)
        return obj

    @classmethod
    def from_sets(cls, domain, members):
        """Build from element names; duplicate members are an error."""
        domain = tuple(domain)
        lookup = {name: i for i, name in enumerate(domain)}
        masks = []
        seen = set()
        for member in members:
            mask = 0
            for name in member:
                if name not in lookup:
                    raise UnknownElement(f"unknown element {name!r}")
                mask |= 1 << lookup[name]
            if mask in seen:
                raise DuplicateMember(f"duplicate member {sorted(member)!r}")
            seen.add(mask)
            masks.append(mask)
        return cls(domain, tuple(masks))

    @classmethod
    def from_masks(cls, domain, masks, dedup=False):
        masks = tuple(masks)
        if dedup:
            masks = tuple(dict.fromkeys(masks))
        return cls(tuple(domain), masks)

    @property
    def n(self):
        return len(self.domain)

    @property
    def full_mask(self):
        return (1 << len(self.domain)) - 1

    def __len__(self):
        return len(self.family)

    def __contains__(self, member):
        return self.as_mask(member) in self._family_set

    @property
    def _family_set(self):
        cached = self.__dict__.get("_fs")
        if cached is None:
            cached = frozenset(self.family)
            object.__setattr__(self, "_fs", cached)
        return cached

    def elements(self):
        return tuple(ElementId(i, name) for i, name in enumerate(self.domain))

    def index(self, name):
        try:
            return self.domain.index(name)
        except ValueError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def mask_of(self, names):
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def as_mask(self, member):
        """Accept either a bit-vector or an iterable of element names."""
        if isinstance(member, int):
            if member < 0 or member & ~self.full_mask:
                raise NotASubset(f"{member!r} is not a subset of the domain")
            return member
        if isinstance(member, str):
            raise InputError("pass a collection of element names, not a bare string")
        return self.mask_of(member)

    def names_of(self, mask):
        return [self.domain[i] for i in bits(mask)]

    def render_member(self, mask):
        return "{" + ",".join(self.names_of(mask)) + "}"

    def members(self):
        return [self.names_of(m) for m in self.family]

    def to_json(self):
        return {"domain": list(self.domain), "family": self.members()}

    def __repr__(self):
        fam = ", ".join(self.render_member(m) for m in self.family)
        return f"SetSystem(domain={list(self.domain)}, family=[{fam}])"


def essential_mask(s):
    union = 0
    inter = s.full_mask
    for m in s.family:
        union |= m
        inter &= m
    return union & ~inter


def essential_domain(s):
    """Elements contained in some member and missing from another."""
    return frozenset(s.names_of(essential_mask(s)))


def additionality(s):
    return len(s.family) - essential_mask(s).bit_count()


def compress(mask, positions):
    """Re-index the bits of ``mask`` found at ``positions`` to 0..len-1."""
    out = 0
    for new, old in enumerate(positions):
        if mask >> old & 1:
            out |= 1 << new
    return out


def trace(s, y):
    """The system ``{A & y}`` on domain ``y``; repeated traces collapse."""
    ymask = s.as_mask(y)
    positions = bits(ymask)
    domain = tuple(s.domain[i] for i in positions)
    family = {compress(m & ymask, positions) for m in s.family}
    return SetSystem._trusted(domain, canonical_order(family))


def complement_family(s):
    full = s.full_mask
    return SetSystem._trusted(s.domain, canonical_order(m ^ full for m in s.family))


def bit_flip(s, element):
    """Toggle one element in every member."""
    bit = 1 << s.index(element)
    return SetSystem._trusted(s.domain, canonical_order(m ^ bit for m in s.family))


def flip(s, a, b):
    """Apply a bit-flip for every element of ``a △ b``; ``a`` must be a member."""
    amask = s.as_mask(a)
    bmask = s.as_mask(b)
    if amask not in s._family_set:
        raise MemberNotInFamily(f"{s.render_member(amask)} is not a member")
    delta = amask ^ bmask
    return SetSystem._trusted(s.domain, canonical_order(m ^ delta for m in s.family))


def same_type_classes(s):
    """Partition of the domain by membership pattern, in domain order."""
    groups = {}
    for i in range(s.n):
        signature = tuple(m >> i & 1 for m in s.family)
        groups.setdefault(signature, []).append(i)
    return [tuple(s.domain[i] for i in idx) for idx in groups.values()]


def purify(s):
    """Quotient the domain by equal membership pattern, keeping the first
    element of each class as its representative."""
    reps = []
    seen = set()
    for i in range(s.n):
        signature = tuple(m >> i & 1 for m in s.family)
        if signature not in seen:
            seen.add(signature)
            reps.append(i)
    if len(reps) == s.n:
        return s
    domain = tuple(s.domain[i] for i in reps)
    family = {compress(m, reps) for m in s.family}
    return SetSystem._trusted(domain, canonical_order(family))


def is_purified(s):
    return len(same_type_classes(s)) == s.n


def _column_counts(s):
    return [sum(m >> i & 1 for m in s.family) for i in range(s.n)]


def find_isomorphism(s, t):
    """Return a domain bijection (name -> name) carrying ``s`` onto ``t``, or None.

    Backtracking over elements; candidates must share the membership count
    and every partial assignment must agree on the multiset of restricted
    members.
    """
    n = s.n
    if n != t.n or len(s.family) != len(t.family):
        return None
    cap = get_caps().max_iso_domain
    if n > cap:
        raise DomainTooLarge(f"isomorphism search limited to {cap} elements, got {n}")
    if sorted(m.bit_count() for m in s.family) != sorted(m.bit_count() for m in t.family):
        return None
    cs = _column_counts(s)
    ct = _column_counts(t)
    if sorted(cs) != sorted(ct):
        return None
    frequency = Counter(cs)
    order = sorted(range(n), key=lambda i: (frequency[cs[i]], i))
    fam_s = s.family
    fam_t = t.family
    target_set = frozenset(fam_t)
    mapping = [None] * n
    used = [False] * n

    def consistent(images, assigned_t):
        return sorted(images) == sorted(b & assigned_t for b in fam_t)

    def search(k, images, assigned_t):
        if k == n:
            return all(img in target_set for img in images)
        i = order[k]
        for j in range(n):
            if used[j] or ct[j] != cs[i]:
                continue
            bit = 1 << j
            new_images = [img | bit if a >> i & 1 else img for a, img in zip(fam_s, images)]
            if not consistent(new_images, assigned_t | bit):
                continue
            used[j] = True
            mapping[i] = j
            if search(k + 1, new_images, assigned_t | bit):
                return True
            used[j] = False
        mapping[i] = None
        return False

    if not search(0, [0] * len(fam_s), 0):
        return None
    return {s.domain[i]: t.domain[mapping[i]] for i in range(n)}


def is_isomorphic(s, t):
    return find_isomorphism(s, t) is not None


def apply_bijection(s, mapping, target_domain):
    """Image of ``s`` under an element renaming onto ``target_domain``."""
    lookup = {name: i for i, name in enumerate(target_domain)}
    family = []
    for m in s.family:
        image = 0
        for i in bits(m):
            image |= 1 << lookup[mapping[s.domain[i]]]
        family.append(image)
    return SetSystem(tuple(target_domain), tuple(family))


def power_set(domain: Iterable[str]):
    domain = tuple(domain)
    return SetSystem._trusted(domain, canonical_order(range(1 << len(domain))))
