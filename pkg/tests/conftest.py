import pytest

import mws.catalog
import mws.relations


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    """One shared on-disk catalog cache for the whole session."""
    return str(tmp_path_factory.mktemp("mw_cache"))


@pytest.fixture(autouse=True)
def _no_default_cache(monkeypatch, tmp_path):
    """Keep tests away from the user-level cache directory."""
    monkeypatch.setenv("MW_CACHE_DIR", str(tmp_path / "fallback_cache"))
    yield
