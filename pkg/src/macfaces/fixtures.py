"""Channels shipped with the package, one per example discussed in the literature."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .channel import ChannelSpec

NAMES = ("xor2", "parallel2", "adder2", "adder3", "adder3_biased", "adder4_biased")
NONDEGENERATE = ("adder2", "adder3", "adder3_biased", "adder4_biased")


def fixture_path(name: str) -> Path:
    stem = name[:-5] if name.endswith(".json") else name
    if stem not in NAMES:
        raise KeyError(f"no bundled channel named {name!r}; known: {', '.join(NAMES)}")
    return Path(str(resources.files("macfaces") / "data" / f"{stem}.json"))


def load_fixture(name: str) -> ChannelSpec:
    return ChannelSpec.load(fixture_path(name))


def resolve_channel(ref: str) -> ChannelSpec:
    """Load ``ref`` as a path, falling back to a bundled channel of that name."""
    path = Path(ref)
    if path.exists():
        return ChannelSpec.load(path)
    try:
        return load_fixture(path.name)
    except KeyError:
        raise FileNotFoundError(f"{ref}: no such file or bundled channel") from None
