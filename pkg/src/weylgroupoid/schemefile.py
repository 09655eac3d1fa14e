"""Reading and writing scheme files (JSON).

A scheme file holds ``rank``, ``objects``, ``reflections`` (index label ->
object -> object) and ``cartan`` (object -> rank x rank integer matrix).
Only the shape is checked here; the axioms are left to ``validate_scheme``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import IO, Any

REQUIRED = ("rank", "objects", "reflections", "cartan")


class SchemeFileError(ValueError):
    """Unreadable or malformed scheme file."""


def bundled_names() -> list[str]:
    root = resources.files("weylgroupoid") / "schemes"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _bundled_text(name: str) -> str | None:
    res = resources.files("weylgroupoid") / "schemes" / f"{name}.json"
    return res.read_text() if res.is_file() else None


def resolve(source: str | Path) -> tuple[str, str]:
    """(display name, text) for a path, or for a bundled scheme name.

    A path that does not exist but whose stem names a bundled scheme (such
    as ``examples/bruhat.json``) falls back to the bundled copy.
    """
    p = Path(source)
    if p.is_file():
        return str(p), p.read_text()
    for name in (str(source), p.stem):
        text = _bundled_text(name)
        if text is not None:
            return f"<bundled {name}>", text
    raise SchemeFileError(f"{source}: no such file or bundled scheme "
                          f"(bundled: {', '.join(bundled_names())})")


def parse_text(text: str, name: str = "<input>") -> dict[str, Any]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemeFileError(f"{name}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(raw, dict):
        raise SchemeFileError(f"{name}: top level must be an object")
    for key in REQUIRED:
        if key not in raw:
            raise SchemeFileError(f"{name}: missing field '{key}'")
    rank = raw["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise SchemeFileError(f"{name}: field 'rank' must be a positive integer")
    if not isinstance(raw["objects"], list):
        raise SchemeFileError(f"{name}: field 'objects' must be a list")
    if not isinstance(raw["reflections"], dict):
        raise SchemeFileError(f"{name}: field 'reflections' must be a map")
    cartan = raw["cartan"]
    if not isinstance(cartan, dict):
        raise SchemeFileError(f"{name}: field 'cartan' must be a map")
    for obj, m in cartan.items():
        rows = len(m) if isinstance(m, list) else None
        cols = {len(r) if isinstance(r, list) else None for r in m} if rows else set()
        if rows != rank or cols != {rank}:
            shape = f"{rows}x{'/'.join(str(c) for c in sorted(cols, key=str))}" if rows else "not a matrix"
            raise SchemeFileError(
                f"{name}: cartan.{obj}: dimension mismatch, expected {rank}x{rank}, got {shape}")
    return raw


def parse_scheme_file(source: str | Path | IO[str]) -> dict[str, Any]:
    """Raw scheme data from a path, a bundled name or an open stream."""
    if hasattr(source, "read"):
        return parse_text(source.read(), getattr(source, "name", "<stream>"))
    name, text = resolve(source)
    return parse_text(text, name)


def dump_scheme(raw: dict[str, Any]) -> str:
    return json.dumps(raw, indent=2, sort_keys=False) + "\n"
