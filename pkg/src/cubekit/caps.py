"""Resource caps and the debug-assertion switch.

Defaults can be overridden with the ``CUBEKIT_CAPS`` environment variable,
e.g. ``CUBEKIT_CAPS="max_shatter_domain=16,max_iso_domain=10"``.  Setting
``CUBEKIT_DEBUG=1`` turns on the cross-check assertions.
"""

import contextlib
import dataclasses
import os

from .errors import InputError


@dataclasses.dataclass
class Caps:
    max_width: int = 64  # bit-vector width of a domain
    max_shatter_domain: int = 20  # 2^|X| enumeration in shattering
    max_iso_domain: int = 12
    max_vertices: int = 20  # clique / independent-set enumeration
    max_enum_domain: int = 4
    max_enum_vertices: int = 6


_caps = Caps()
_debug = False


def parse_caps_spec(spec):
    """Parse ``"key=value,key=value"`` into a dict of integer overrides."""
    out = {}
    names = {f.name for f in dataclasses.fields(Caps)}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise InputError(f"bad cap override {part!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise InputError(f"cap {key} needs an integer, got {value!r}") from None
    return out


def get_caps():
    return _caps


def set_caps(**overrides):
    for key, value in overrides.items():
        if not hasattr(_caps, key):
            raise InputError(f"unknown cap {key!r}")
        setattr(_caps, key, int(value))


@contextlib.contextmanager
def caps_override(**overrides):
    saved = dataclasses.asdict(_caps)
    set_caps(**overrides)
    try:
        yield _caps
    finally:
        set_caps(**saved)


def debug_enabled():
    return _debug


def set_debug(flag):
    global _debug
    _debug = bool(flag)


@contextlib.contextmanager
def debug_asserts(flag=True):
    saved = _debug
    set_debug(flag)
    try:
        yield
    finally:
        set_debug(saved)


if os.environ.get("CUBEKIT_CAPS"):
    set_caps(**parse_caps_spec(os.environ["CUBEKIT_CAPS"]))
if os.environ.get("CUBEKIT_DEBUG", "") not in ("", "0"):
    set_debug(True)
