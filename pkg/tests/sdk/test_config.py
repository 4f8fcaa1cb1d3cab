import json
from pathlib import Path

import pytest

from arhe.config import ArheConfig
from arhe.sdk import InvalidThreadCountError


def _write(path: Path, **values: object) -> str:
    path.write_text(json.dumps(values))
    return str(path)


def test_defaults(tmp_path: Path) -> None:
    config = ArheConfig.load(str(tmp_path / "missing.json"), environ={})
    assert config.threads is None
    assert not config.verbose


def test_load_from_file(tmp_path: Path) -> None:
    path = _write(tmp_path / ".arhe_config.json", threads=3, verbose=True)
    assert ArheConfig.load_from_file(path) == ArheConfig(threads=3, verbose=True)


def test_environment_overrides_file(tmp_path: Path) -> None:
    path = _write(tmp_path / ".arhe_config.json", threads=3)
    config = ArheConfig.load(path, environ={"ARHE_THREADS": "8"})
    assert config.threads == 8
    assert ArheConfig.load(path, environ={"ARHE_THREADS": " "}).threads == 3


@pytest.mark.parametrize("raw", ["0", "-2", "four", "1.5"])
def test_invalid_thread_count(tmp_path: Path, raw: str) -> None:
    with pytest.raises(InvalidThreadCountError):
        ArheConfig.load(str(tmp_path / "missing.json"), environ={"ARHE_THREADS": raw})
