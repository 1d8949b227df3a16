"""On-disk JSON cache of computed minimal polynomials."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .polynomial import IntPoly

ENV_VAR = "RINGCLASS_CACHE"


@dataclass(frozen=True)
class PolyCacheEntry:
    d_k: int
    conductor: int
    coeffs: list[str]                 # ascending, decimal strings
    precision_bits: int
    invariant_approx: str             # 50 significant digits
    spec_exponents: dict[str, int] = field(default_factory=dict)

    @property
    def poly(self) -> IntPoly:
        return IntPoly(tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_poly(cls, d_k, conductor, poly: IntPoly, precision_bits, invariant_approx,
                  spec_exponents=None) -> "PolyCacheEntry":
        return cls(d_k, conductor, [str(c) for c in poly.coeffs], precision_bits,
                   invariant_approx, {str(k): v for k, v in (spec_exponents or {}).items()})

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PolyCacheEntry":
        raw = json.loads(text)
        missing = {"d_k", "conductor", "coeffs", "precision_bits", "invariant_approx"} - raw.keys()
        if missing:
            raise ValueError(f"cache entry lacks {sorted(missing)}")
        if not all(isinstance(c, str) for c in raw["coeffs"]):
            raise ValueError("coefficients must be decimal strings")
        return cls(int(raw["d_k"]), int(raw["conductor"]), list(raw["coeffs"]),
                   int(raw["precision_bits"]), str(raw["invariant_approx"]),
                   {str(k): int(v) for k, v in raw.get("spec_exponents", {}).items()})


def default_cache_dir() -> Path | None:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def entry_path(cache_dir: Path, d_k: int, conductor: int, kind: str = "") -> Path:
    suffix = f"_{kind}" if kind else ""
    return Path(cache_dir) / f"dk{d_k}_N{conductor}{suffix}.json"


def load(cache_dir: Path, d_k: int, conductor: int, kind: str = "") -> PolyCacheEntry | None:
    path = entry_path(cache_dir, d_k, conductor, kind)
    try:
        return PolyCacheEntry.from_json(path.read_text())
    except (OSError, ValueError):
        return None


def store(cache_dir: Path, entry: PolyCacheEntry, kind: str = "") -> Path:
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = entry_path(cache_dir, entry.d_k, entry.conductor, kind)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(entry.to_json())
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return path
