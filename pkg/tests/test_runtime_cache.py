import os

os.environ.setdefault("QUATBRANDT_ENABLE_DISK_CACHE", "0")

from pathlib import Path  # noqa: E402

from quatbrandt.runtime.cache import ArtifactCache  # noqa: E402
from quatbrandt.runtime.settings import get_settings  # noqa: E402
from quatbrandt.runtime.workbench import Workbench  # noqa: E402


def test_settings_read_environment(monkeypatch) -> None:
    monkeypatch.setenv("QUATBRANDT_CACHE_DIR", "/tmp/qb-cache")
    monkeypatch.setenv("QUATBRANDT_WORKERS", "3")
    s = get_settings()
    assert s.CACHE_DIR == "/tmp/qb-cache"
    assert s.WORKERS == 3
    assert s.THETA_PREFIX_LENGTH == 8


def test_class_set_is_written_and_reloaded(tmp_path: Path) -> None:
    cache = ArtifactCache(tmp_path)
    first = Workbench(1, 11, cache=cache)
    classes = first.class_set
    path = cache.classset_path(1, 11)
    assert path.exists()

    second = Workbench(1, 11, cache=cache)
    loaded = cache.load_class_set(1, 11, second.order)
    assert loaded is not None
    assert loaded.aut_counts == classes.aut_counts
    assert loaded.fingerprint == classes.fingerprint


def test_corrupt_class_set_is_recomputed(tmp_path: Path) -> None:
    cache = ArtifactCache(tmp_path)
    path = cache.classset_path(1, 11)
    path.write_text('{"format_version": 1, "g": 1, "p": 11, "h": 2, "algebra": [-1, -11], "mass": "1/2"}', encoding="utf-8")
    wb = Workbench(1, 11, cache=cache)
    assert cache.load_class_set(1, 11, wb.order) is None
    assert wb.class_set.h == 2
    # the recomputed set replaced the corrupt file
    assert cache.load_class_set(1, 11, wb.order) is not None


def test_brandt_cache_is_keyed_by_fingerprint(tmp_path: Path) -> None:
    cache = ArtifactCache(tmp_path)
    wb = Workbench(1, 11, cache=cache)
    B = wb.brandt(2)
    fp = wb.class_set.fingerprint
    assert cache.brandt_path(1, 11, 2).exists()
    assert cache.load_brandt(1, 11, 2, fp) == B
    assert cache.load_brandt(1, 11, 2, "other") is None
    cache.brandt_path(1, 11, 2).write_text("not json", encoding="utf-8")
    assert cache.load_brandt(1, 11, 2, fp) is None


def test_disabled_cache_writes_nothing(tmp_path: Path) -> None:
    cache = ArtifactCache(tmp_path, enabled=False)
    wb = Workbench(1, 7, cache=cache)
    assert wb.brandt(2).entries == ((3,),)
    assert list(tmp_path.iterdir()) == []
