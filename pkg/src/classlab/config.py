"""Runtime caps with a process-wide default that the CLI may override."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    """Limits guarding the exhaustive algorithms.

    enum_cap: largest group order for which full element enumeration is allowed.
    iso_cap: largest order accepted by fingerprinting / isomorphism search.
    subgroup_limit: abort subgroup enumeration beyond this many subgroups.
    coord_cap: largest coordinate count N accepted by the wreath construction.
    dual_depth: largest k accepted for iterated-dual membership.
    """

    enum_cap: int = 250_000
    iso_cap: int = 20_000
    subgroup_limit: int = 5_000
    coord_cap: int = 24
    dual_depth: int = 5

    def with_updates(self, **kwargs) -> "Caps":
        return replace(self, **kwargs)


DEFAULT_CAPS = Caps()

_current: Caps = DEFAULT_CAPS


def current_caps() -> Caps:
    return _current


def set_caps(caps: Caps) -> None:
    global _current
    _current = caps


def effective_caps(caps: Caps | None) -> Caps:
    """The caps to use: an explicit argument wins over the process default."""
    return caps if caps is not None else _current


_ENV_FIELDS = {
    "CLASSLAB_ENUM_CAP": "enum_cap",
    "CLASSLAB_ISO_CAP": "iso_cap",
    "CLASSLAB_SUBGROUP_LIMIT": "subgroup_limit",
}


def caps_from_env(base: Caps | None = None) -> Caps:
    """Apply CLASSLAB_* environment overrides on top of the given base caps."""
    caps = base if base is not None else DEFAULT_CAPS
    updates = {}
    for var, field_name in _ENV_FIELDS.items():
        raw = os.environ.get(var)
        if raw is None:
            continue
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{var} must be an integer, got {raw!r}") from exc
        if value <= 0:
            raise ValueError(f"{var} must be positive, got {value}")
        updates[field_name] = value
    return caps.with_updates(**updates) if updates else caps
