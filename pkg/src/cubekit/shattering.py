"""Shattering, strong shattering, VC-dimension, maximum and extremal systems."""

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .caps import debug_enabled, get_caps
from .errors import DomainTooLarge, InvariantViolation


@dataclass(frozen=True)
class ShatterReport:
    shattered: tuple
    strongly_shattered: tuple
    vc_dim: int

    def to_json(self, s):
        return {
            "shattered": [s.names_of(y) for y in self.shattered],
            "strongly_shattered": [s.names_of(y) for y in self.strongly_shattered],
            "vc_dim": self.vc_dim,
        }


def _check_cap(s):
    cap = get_caps().max_shatter_domain
    if s.n > cap:
        raise DomainTooLarge(f"shattering enumerates 2^|X|; |X|={s.n} exceeds cap {cap}")


def is_shattered(family, y):
    return len({m & y for m in family}) == 1 << y.bit_count()


def is_strongly_shattered(family, y):
    # A Y-cube with tag T is a full group of members agreeing outside Y.
    need = 1 << y.bit_count()
    outside = ~y
    groups = {}
    for m in family:
        key = m & outside
        c = groups.get(key, 0) + 1
        if c == need:
            return True
        groups[key] = c
    return False


def shattered_sets(s):
    """All shattered subsets, by increasing size.

    Only sizes k with 2^k <= |F| can be shattered, and sht is downward
    closed, so the scan stops at the first size with no shattered set.
    """
    _check_cap(s)
    fam = s.family
    out = [0]
    k = 1
    while k <= s.n and (1 << k) <= len(fam):
        level = []
        for idx in combinations(range(s.n), k):
            y = 0
            for i in idx:
                y |= 1 << i
            if is_shattered(fam, y):
                level.append(y)
        if not level:
            break
        out.extend(level)
        k += 1
    return tuple(out)


def strongly_shattered_sets(s):
    # Every strongly shattered set is shattered, so only those are tested.
    fam = s.family
    return tuple(y for y in shattered_sets(s) if is_strongly_shattered(fam, y))


def shatter_report(s):
    sht = shattered_sets(s)
    ssht = strongly_shattered_sets(s)
    vc = max(y.bit_count() for y in sht)
    return ShatterReport(sht, ssht, vc)


def vc_dimension(s):
    return max(y.bit_count() for y in shattered_sets(s))


def sauer_shelah_bound(size, d):
    return sum(comb(size, i) for i in range(d + 1))


def is_maximum(s):
    """Sauer-Shelah holds with equality on every subset of the domain."""
    _check_cap(s)
    d = vc_dimension(s)
    fam = s.family
    if len(fam) != sauer_shelah_bound(s.n, d):
        return False
    for y in range(1 << s.n):
        if len({m & y for m in fam}) != sauer_shelah_bound(y.bit_count(), d):
            return False
    return True


def is_extremal(s):
    sht = shattered_sets(s)
    ssht = strongly_shattered_sets(s)
    result = set(sht) == set(ssht)
    if debug_enabled() and result != (len(s.family) == len(sht)):
        raise InvariantViolation(f"extremal definitions disagree on {s!r}")
    return result


def check_sandwich(s):
    """Return ``(|ssht|, |F|, |sht|)`` after asserting the sandwich inequalities."""
    lo = len(strongly_shattered_sets(s))
    hi = len(shattered_sets(s))
    size = len(s.family)
    if not lo <= size <= hi:
        raise InvariantViolation(f"sandwich violated ({lo}, {size}, {hi}) on {s!r}")
    return lo, size, hi
