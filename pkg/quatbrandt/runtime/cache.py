from __future__ import annotations

from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from quatbrandt.arith.orders import MaximalOrder
from quatbrandt.brandt.matrices import BrandtMatrix, BrandtRecord
from quatbrandt.classes.classset import ClassSet, ClassSetRecord
from quatbrandt.errors import QuatBrandtError
from quatbrandt.logging import get_logger

logger = get_logger("quatbrandt.cache")


class ArtifactCache:
    """JSON artifacts under one directory (best-effort: unreadable files are recomputed)."""

    def __init__(self, root: str | Path, *, enabled: bool = True):
        self.root = Path(root)
        self.enabled = enabled

    @classmethod
    def from_settings(cls) -> ArtifactCache:
        from quatbrandt.runtime.settings import get_settings

        s = get_settings()
        return cls(s.CACHE_DIR, enabled=s.ENABLE_DISK_CACHE)

    def classset_path(self, g: int, p: int) -> Path:
        return self.root / f"classset_g{g}_p{p}.json"

    def brandt_path(self, g: int, p: int, n: int) -> Path:
        return self.root / f"brandt_g{g}_p{p}_n{n}.json"

    def _read(self, path: Path) -> Optional[str]:
        if not self.enabled or not path.exists():
            return None
        try:
            return path.read_text(encoding="utf-8")
        except OSError as exc:
            logger.warning("cache read failed for %s: %s", path, exc)
            return None

    def _write(self, path: Path, payload: str) -> None:
        if not self.enabled:
            return
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(payload, encoding="utf-8")
            tmp.replace(path)
        except OSError as exc:
            logger.warning("cache write failed for %s: %s", path, exc)

    def load_class_set(self, g: int, p: int, order: MaximalOrder) -> Optional[ClassSet]:
        path = self.classset_path(g, p)
        raw = self._read(path)
        if raw is None:
            return None
        try:
            record = ClassSetRecord.model_validate_json(raw)
            if (record.g, record.p) != (g, p):
                raise QuatBrandtError(f"record is for (g={record.g}, p={record.p})")
            return ClassSet.from_record(record, order)
        except (ValidationError, QuatBrandtError, ValueError) as exc:
            # the class set is re-certified on load, so anything that fails is recomputed
            logger.warning("ignoring corrupt class set %s: %s", path, exc)
            return None

    def store_class_set(self, classes: ClassSet) -> None:
        self._write(self.classset_path(classes.g, classes.p), classes.to_record().model_dump_json(indent=2))

    def load_brandt(self, g: int, p: int, n: int, fingerprint: str) -> Optional[BrandtMatrix]:
        path = self.brandt_path(g, p, n)
        raw = self._read(path)
        if raw is None:
            return None
        try:
            record = BrandtRecord.model_validate_json(raw)
            if (record.g, record.p, record.n) != (g, p, n):
                raise QuatBrandtError(f"record is for (g={record.g}, p={record.p}, n={record.n})")
            if record.classset_fingerprint != fingerprint:
                logger.info("stale Brandt matrix %s (class set changed); recomputing", path)
                return None
            return BrandtMatrix.from_record(record)
        except (ValidationError, QuatBrandtError, ValueError) as exc:
            logger.warning("ignoring corrupt Brandt matrix %s: %s", path, exc)
            return None

    def store_brandt(self, B: BrandtMatrix, fingerprint: str) -> None:
        self._write(self.brandt_path(B.g, B.p, B.n), B.to_record(fingerprint).model_dump_json(indent=2))
