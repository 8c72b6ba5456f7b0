"""
Deterministic output writer.

Series go to headered CSV with 17 significant digits so values round-trip;
field dumps go to ``.npy``. Every file is hashed into the manifest.
"""

from __future__ import annotations

import hashlib
import threading
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from config.logging_config import get_logger

from .summary import OutputFile

logger = get_logger("harness.writer")

FLOAT_FORMAT = "%.17g"


def sha256_of(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


class SeriesWriter:
    """
    Writes the outputs of one run below ``output_dir``.

    Writes are serialized, so presets may hand rows over from worker threads.
    """

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.outputs: list[OutputFile] = []
        self._lock = threading.Lock()

    def _record(self, path: Path, kind: str) -> OutputFile:
        entry = OutputFile(path=path.relative_to(self.output_dir).as_posix(), sha256=sha256_of(path), kind=kind)
        self.outputs = [o for o in self.outputs if o.path != entry.path] + [entry]
        logger.debug("output_written", path=entry.path, sha256=entry.sha256)
        return entry

    def write_rows(
        self, name: str, rows: Iterable[dict[str, Any]], columns: Optional[Sequence[str]] = None
    ) -> OutputFile:
        """Write ``rows`` to ``<name>.csv``; ``columns`` fixes the column order."""
        frame = pd.DataFrame(list(rows), columns=list(columns) if columns is not None else None)
        path = self.output_dir / f"{name}.csv"
        with self._lock:
            frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
            return self._record(path, "csv")

    def write_field(self, name: str, values: np.ndarray) -> OutputFile:
        """Write a physical field to ``fields/<name>.npy``."""
        path = self.output_dir / "fields" / f"{name}.npy"
        with self._lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            np.save(path, np.asarray(values, dtype=float), allow_pickle=False)
            return self._record(path, "npy")
