import os

import pytest

from mws.canon import canonicalize
from mws.catalog import (
    MODE_OF_SPACE,
    Catalog,
    _write_catalog,
    clear_memo,
    enum_cmc,
    enum_connected,
    enum_ecmc,
    full_catalog,
)
from mws.errors import CacheCorruption, ResourceLimit
from mws.graphs import EMPTY_KEY, disjoint_union, parse_key, theta_graph, y_graph

from .oracles import brute_catalog_keys

THETA_KEY = canonicalize(theta_graph()).key
Y_KEY = canonicalize(y_graph(), "y_exempt").key


def test_cmc_low_degrees(cache_dir):
    assert enum_cmc(0, cache_dir=cache_dir).classes == (EMPTY_KEY,)
    assert enum_cmc(3, cache_dir=cache_dir).classes == (THETA_KEY,)
    assert enum_cmc(4, cache_dir=cache_dir).classes == ()


def test_ecmc_low_degrees(cache_dir):
    assert enum_ecmc(0, cache_dir=cache_dir).classes == (EMPTY_KEY,)
    assert enum_ecmc(1, cache_dir=cache_dir).classes == ()
    cls = enum_ecmc(3, cache_dir=cache_dir).classes
    assert THETA_KEY in cls and Y_KEY in cls
    assert len(cls) == 2


def test_connected_examples(cache_dir):
    assert enum_connected(3, "cmc", cache_dir=cache_dir).classes == (THETA_KEY,)
    assert enum_connected(0, "cmc", cache_dir=cache_dir).classes == ()
    conn6 = enum_connected(6, "cmc", cache_dir=cache_dir).classes
    full6 = enum_cmc(6, cache_dir=cache_dir).classes
    assert set(conn6) <= set(full6)
    assert len(conn6) == 2 and len(full6) == 3


@pytest.mark.parametrize("space", ["cmc", "ecmc"])
@pytest.mark.parametrize("m", range(0, 6))
def test_completeness_vs_brute_force(space, m, cache_dir):
    brute = brute_catalog_keys(m, space, MODE_OF_SPACE[space], canonicalize)
    prod = set(full_catalog(space, m, cache_dir=cache_dir).classes)
    assert brute == prod


def test_connected_degree_6_matches_brute_force(cache_dir):
    brute = brute_catalog_keys(6, "cmc", "full", canonicalize)
    brute_conn = {k for k in brute if len(parse_key(k).trivalent) and _n_components(k) == 1}
    assert set(enum_connected(6, "cmc", cache_dir=cache_dir).classes) == brute_conn


def _n_components(key):
    from mws.graphs import components

    return len(components(parse_key(key)))


def test_union_closure(cache_dir):
    for a, b in [(3, 3), (3, 6)]:
        m = a + b
        target = set(full_catalog("cmc", m, cache_dir=cache_dir).classes)
        for ka in full_catalog("cmc", a, cache_dir=cache_dir).classes:
            for kb in full_catalog("cmc", b, cache_dir=cache_dir).classes:
                g = disjoint_union(parse_key(ka), parse_key(kb))
                sc = canonicalize(g, "full")
                assert sc.zero or sc.key in target


def test_resource_limit(cache_dir):
    with pytest.raises(ResourceLimit):
        enum_cmc(16, cache_dir=cache_dir)
    with pytest.raises(ResourceLimit):
        enum_ecmc(5, cache_dir=cache_dir, limit=4)


def test_catalog_sorted_and_distinct(cache_dir):
    for space, m in [("cmc", 6), ("ecmc", 4)]:
        cls = full_catalog(space, m, cache_dir=cache_dir).classes
        assert list(cls) == sorted(set(cls))


def test_cache_roundtrip(tmp_path):
    cdir = str(tmp_path / "cache")
    first = enum_cmc(3, cache_dir=cdir)
    clear_memo()
    second = enum_cmc(3, cache_dir=cdir)
    assert first.classes == second.classes
    path = os.path.join(cdir, "cmc_full_deg3.catalog")
    assert os.path.exists(path)
    with open(path) as fh:
        head = fh.readline()
    assert head.startswith("#catalog space=cmc mode=full deg=3 version=")


def test_cache_corruption(tmp_path):
    cdir = str(tmp_path / "cache")
    enum_cmc(3, cache_dir=cdir)
    clear_memo()
    path = os.path.join(cdir, "cmc_full_deg3.catalog")
    with open(path, "w") as fh:
        fh.write("#catalog space=cmc mode=full deg=3 version=0.1.0\nnot a graph line\n")
    with pytest.raises(CacheCorruption):
        enum_cmc(3, cache_dir=cdir)


def test_cache_version_mismatch_regenerates(tmp_path):
    cdir = str(tmp_path / "cache")
    cat = enum_cmc(3, cache_dir=cdir)
    clear_memo()
    path = os.path.join(cdir, "cmc_full_deg3.catalog")
    stale = Catalog(3, "cmc", "full", ("deg=3;v=;p=",), cat.generated_at, "0.0.0")
    _write_catalog(path, stale)
    again = enum_cmc(3, cache_dir=cdir)
    assert again.classes == (THETA_KEY,)
