"""On-disk cache of dimension series, one plain-text file per (spec, N).

Entries are written atomically (temp file plus ``os.replace``), so readers
never see a partial file.  Each file records the tool version; a mismatch is
a miss.  With ``verify=True`` every hit is recomputed and compared.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

from . import __version__
from .errors import CacheMismatchError, InvalidParameterError
from .lie_closed import GradedDims, QuotientSpec, graded_series
from .lie_oracle import format_dims, parse_dims

ENV_VAR = "CKDIM_CACHE_DIR"


def cache_key(spec: QuotientSpec, N: int) -> str:
    return hashlib.sha256(f"{spec.canonical()}|N={N}".encode()).hexdigest()[:32]


class DimsCache:
    """Callable series provider backed by a directory."""

    def __init__(self, directory: str | os.PathLike, verify: bool = False):
        self.directory = Path(directory)
        self.verify = verify
        self.hits = 0
        self.misses = 0

    @classmethod
    def from_env(cls, verify: bool = False) -> "DimsCache | None":
        path = os.environ.get(ENV_VAR)
        return cls(path, verify) if path else None

    def path(self, spec: QuotientSpec, N: int) -> Path:
        return self.directory / f"{cache_key(spec, N)}.dims"

    def load(self, spec: QuotientSpec, N: int) -> GradedDims | None:
        try:
            text = self.path(spec, N).read_text()
            series, header = parse_dims(text)
        except (OSError, InvalidParameterError, ValueError, KeyError):
            return None
        if header.get("tool-version") != __version__ or series.spec != spec or series.N != N:
            return None
        return series

    def store(self, series: GradedDims) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        text = format_dims(series, {"tool-version": __version__})
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self.path(series.spec, series.N))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def __call__(self, spec: QuotientSpec, N: int) -> GradedDims:
        cached = self.load(spec, N)
        if cached is not None:
            self.hits += 1
            if self.verify:
                fresh = graded_series(spec, N)
                if fresh.dims != cached.dims or fresh.provenance != cached.provenance:
                    raise CacheMismatchError(
                        f"cache entry for {spec.canonical()} N={N} disagrees with recomputation"
                    )
            return cached
        self.misses += 1
        series = graded_series(spec, N)
        self.store(series)
        return series
