"""Canonical JSON, digests and the on-disk certificate store."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

STORE_ENV = "SEMIARC_STORE"
VOLATILE = ("digest", "wall_time")


def plain(obj):
    """Convert to JSON-safe builtins: no floats, fractions as 'a/b' strings."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(plain(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in canonical JSON")
    if hasattr(obj, "to_json"):
        return plain(obj.to_json())
    if hasattr(obj, "item"):  # numpy scalar
        return plain(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def canonical_bytes(obj) -> bytes:
    core = {k: v for k, v in plain(obj).items() if k not in VOLATILE} if isinstance(obj, dict) else plain(obj)
    return json.dumps(core, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode()


def digest(obj) -> str:
    return hashlib.sha256(canonical_bytes(obj)).hexdigest()


def sign(obj: dict) -> dict:
    out = plain(obj)
    out["digest"] = digest(out)
    return out


def check_digest(obj: dict) -> bool:
    return obj.get("digest") == digest(obj)


def dumps(obj) -> str:
    """Pretty but deterministic rendering (sorted keys, fixed indent)."""
    return json.dumps(plain(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def store_root() -> Path:
    return Path(os.environ.get(STORE_ENV, "certificates"))


def _slug(ref: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in ref) or "plane"


def store_path(plane_ref: str, t: int, key: dict, root: Path | None = None) -> Path:
    root = store_root() if root is None else Path(root)
    h = digest(key)[:12]
    return root / _slug(plane_ref) / f"t{t}-{h}.json"


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def load(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
