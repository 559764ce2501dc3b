"""Exhaustive, cached enumeration of canonical classes by degree.

Connected classes are generated by a pruned backtracking search over
pairings of half-edges; full catalogs are assembled as multisets of
connected classes.  Two generation prunings rely on provable vanishing:
a loop at a trivalent vertex and a vertex carrying two legs next to a
non-leg both admit an odd single-reversal automorphism, so such graphs
are zero in every mode and never enter a catalog.  The brute-force
completeness oracle in the test suite re-derives low degrees without any
pruning.
"""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone

from . import __version__
from .canon import canonicalize, merge_canonical_keys
from .errors import CacheCorruption, ResourceLimit
from .graphs import EMPTY_KEY, _graph_unchecked, parse_key

DEFAULT_LIMIT = 15
SPACES = ("cmc", "ecmc")
MODE_OF_SPACE = {"cmc": "full", "ecmc": "y_exempt"}

_memo: dict = {}


@dataclass(frozen=True)
class Catalog:
    degree: int
    space: str
    as_mode: str
    classes: tuple[str, ...]
    generated_at: str
    tool_version: str

    def __len__(self):
        return len(self.classes)


def _now():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _connected_pairings(t, u):
    """Yield (partner, legs) for connected loopless graphs on t >= 2
    trivalent cells with exactly u legs, at most one leg per vertex,
    pruned by the cell symmetries of the partial state."""
    n = 3 * t
    partner = [-1] * n          # -1 unresolved, -2 leg, else dart id
    resolved_in = [0] * t       # resolved darts per cell
    leg_in = [False] * t
    out = []

    def open_touched_exists():
        return any(0 < resolved_in[i] < 3 for i in range(t))

    def rec(unresolved, legs_left, d):
        while d < n and partner[d] != -1:
            d += 1
        if d == n:
            if legs_left == 0:
                out.append(list(partner))
            return
        if legs_left > (unresolved - 0) or (unresolved - legs_left) % 2:
            return
        cd = d // 3

        def closes_prematurely():
            # a resolved graph piece may not seal itself off while
            # untouched cells remain
            if not open_touched_exists() and any(r == 0 for r in resolved_in):
                return True
            return False

        # option: leg
        if legs_left > 0 and not leg_in[cd]:
            partner[d] = -2
            resolved_in[cd] += 1
            leg_in[cd] = True
            if not closes_prematurely():
                rec(unresolved - 1, legs_left - 1, d + 1)
            leg_in[cd] = False
            resolved_in[cd] -= 1
            partner[d] = -1

        # option: pair with a dart of another cell
        candidates = []
        fresh_seen = False
        for ci in range(t):
            if ci == cd:
                continue
            r = resolved_in[ci]
            if r == 0:
                if not fresh_seen:
                    candidates.append(3 * ci)
                    fresh_seen = True
            elif r == 1:
                unres = [e for e in (3 * ci, 3 * ci + 1, 3 * ci + 2) if partner[e] == -1]
                # the reversal fixing the single resolved dart swaps the
                # other two, so one representative suffices
                if unres:
                    candidates.append(unres[0])
            elif r == 2:
                for e in (3 * ci, 3 * ci + 1, 3 * ci + 2):
                    if partner[e] == -1:
                        candidates.append(e)
        for e in candidates:
            ce = e // 3
            partner[d] = e
            partner[e] = d
            resolved_in[cd] += 1
            resolved_in[ce] += 1
            if not closes_prematurely():
                rec(unresolved - 2, legs_left, d + 1)
            resolved_in[cd] -= 1
            resolved_in[ce] -= 1
            partner[d] = -1
            partner[e] = -1

    rec(n, u, 0)
    return out


def _graph_from_pairing(t, partner_row):
    n = 3 * t
    legs = [d for d in range(n) if partner_row[d] == -2]
    partner = [0] * (n + len(legs))
    for d in range(n):
        if partner_row[d] >= 0:
            partner[d] = partner_row[d]
    uni = []
    for j, d in enumerate(legs):
        u = n + j
        partner[d] = u
        partner[u] = d
        uni.append(u)
    cells = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(t)]
    return _graph_unchecked(cells, uni, partner)


_Y_KEY = "deg=3;v=(0,1,2)|(3)|(4)|(5);p=0-3,1-4,2-5"


def _connected_classes(space, m):
    """Sorted canonical keys of the connected nonzero classes of degree m."""
    mode = MODE_OF_SPACE[space]
    keys = set()
    if space == "ecmc" and m == 3:
        keys.add(_Y_KEY)
    if space == "cmc":
        if m % 3 or m == 0:
            return ()
        ts = [2 * m // 3] if (2 * m) % 3 == 0 else []
    else:
        lo = max(2, (m + 1) // 2)
        ts = [t for t in range(lo, 2 * m // 3 + 1) if (2 * m - 3 * t) <= t]
    for t in ts:
        if t < 2:
            continue
        u = 2 * m - 3 * t
        for row in _connected_pairings(t, u):
            g = _graph_from_pairing(t, row)
            sc = canonicalize(g, mode)
            if not sc.zero:
                keys.add(sc.key)
    return tuple(sorted(keys))


def _full_classes(space, m, cache_dir):
    """Sorted keys of all degree-m classes: multisets of connected ones."""
    from itertools import combinations_with_replacement

    by_deg = {}
    for d in range(1, m + 1):
        cl = connected_catalog(space, d, cache_dir=cache_dir, limit=None).classes
        if cl:
            by_deg[d] = cl
    degs = sorted(by_deg)
    results = set()

    def rec(i, remaining, acc):
        if remaining == 0:
            results.add(merge_canonical_keys(acc))
            return
        if i == len(degs) or degs[i] > remaining:
            return
        d = degs[i]
        rec(i + 1, remaining, acc)
        for k in range(1, remaining // d + 1):
            for combo in combinations_with_replacement(by_deg[d], k):
                rec(i + 1, remaining - d * k, acc + list(combo))

    rec(0, m, [])
    return tuple(sorted(results))


# ---------------------------------------------------------------------------
# cache layer

def resolve_cache_dir(cache_dir=None):
    if cache_dir is not None:
        return str(cache_dir)
    env = os.environ.get("MW_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "mws")


def _cache_path(cache_dir, space, kind, m):
    mode = MODE_OF_SPACE[space]
    suffix = "_connected" if kind == "connected" else ""
    return os.path.join(cache_dir, f"{space}_{mode}_deg{m}{suffix}.catalog")


def _write_catalog(path, cat: Catalog):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    header = (
        f"#catalog space={cat.space} mode={cat.as_mode} "
        f"deg={cat.degree} version={cat.tool_version}\n"
    )
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(header)
            for key in cat.classes:
                fh.write(key + "\n")
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _read_catalog(path, space, m):
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise CacheCorruption(f"{path}: empty catalog file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "#catalog":
        raise CacheCorruption(f"{path}: bad header {lines[0]!r}")
    fields = dict(part.split("=", 1) for part in head[1:])
    if fields.get("space") != space or fields.get("deg") != str(m):
        raise CacheCorruption(f"{path}: header does not match file name")
    if fields.get("mode") != MODE_OF_SPACE[space]:
        raise CacheCorruption(f"{path}: unexpected mode {fields.get('mode')!r}")
    if fields.get("version") != __version__:
        return None  # stale cache: regenerate
    classes = []
    for line in lines[1:]:
        if not line:
            continue
        try:
            g = parse_key(line)
        except Exception as exc:
            raise CacheCorruption(f"{path}: bad class line {line!r}: {exc}") from None
        if g.degree != m:
            raise CacheCorruption(f"{path}: class of degree {g.degree} in degree-{m} catalog")
        classes.append(line)
    if classes != sorted(set(classes)):
        raise CacheCorruption(f"{path}: classes not sorted and distinct")
    return tuple(classes)


def _catalog(space, kind, m, cache_dir, limit):
    if space not in SPACES:
        raise ValueError(f"unknown space {space!r}")
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if limit is not None and m > limit:
        raise ResourceLimit(f"degree {m} exceeds the ceiling {limit}")

    cdir = resolve_cache_dir(cache_dir)
    memo_key = (cdir, space, kind, m)
    if memo_key in _memo:
        return _memo[memo_key]

    path = _cache_path(cdir, space, kind, m)
    classes = None
    if os.path.exists(path):
        classes = _read_catalog(path, space, m)
    if classes is None:
        if kind == "connected":
            classes = _connected_classes(space, m)
        else:
            classes = _full_classes(space, m, cdir)
        cat = Catalog(m, space, MODE_OF_SPACE[space], classes, _now(), __version__)
        _write_catalog(path, cat)
    else:
        cat = Catalog(m, space, MODE_OF_SPACE[space], classes, _now(), __version__)
    _memo[memo_key] = cat
    return cat


def connected_catalog(space, m, cache_dir=None, limit=DEFAULT_LIMIT) -> Catalog:
    return _catalog(space, "connected", m, cache_dir, limit)


def full_catalog(space, m, cache_dir=None, limit=DEFAULT_LIMIT) -> Catalog:
    return _catalog(space, "full", m, cache_dir, limit)


def enum_cmc(m, cache_dir=None, limit=DEFAULT_LIMIT) -> Catalog:
    """All degree-m classes of trivalent graphs, AS-zeros removed."""
    return full_catalog("cmc", m, cache_dir, limit)


def enum_ecmc(m, cache_dir=None, limit=DEFAULT_LIMIT) -> Catalog:
    """All degree-m classes with trivalent and univalent vertices,
    excluding graphs with interval components and AS-zeros."""
    return full_catalog("ecmc", m, cache_dir, limit)


def enum_connected(m, space, cache_dir=None, limit=DEFAULT_LIMIT) -> Catalog:
    """The sub-catalog of connected classes (the empty graph is not
    connected by convention)."""
    return connected_catalog(space, m, cache_dir, limit)


def clear_memo():
    _memo.clear()
