import pytest
from click.testing import CliRunner

import config
from modules.heisalg.algebra import build_algebra


@pytest.fixture
def oct11():
    return build_algebra("octonion", 1, 1)


@pytest.fixture
def oct20():
    return build_algebra("octonion", 2, 0)


@pytest.fixture
def quat10():
    return build_algebra("quaternion", 1, 0)


@pytest.fixture
def quat11():
    return build_algebra("quaternion", 1, 1)


@pytest.fixture
def ledger(tmp_path, monkeypatch):
    """Point the run ledger at a throwaway SQLite file."""
    path = str(tmp_path / "runs.db")
    monkeypatch.setattr(config, "LEDGER_PATH", path)
    monkeypatch.setattr(config, "LEDGER_ENABLED", True)
    monkeypatch.setattr(config, "OUTPUT_DIR", None)
    return path


@pytest.fixture
def runner(ledger):
    return CliRunner()
