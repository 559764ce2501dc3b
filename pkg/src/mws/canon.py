"""Signed canonical labeling of vertex-oriented graphs.

Two graphs fall in the same class when they differ by a relabeling that
maps cells to cells, preserving each trivalent cell's cyclic order up to
rotation and reversal.  Reversals at anti-symmetry-active vertices carry
a sign of -1; a class whose graphs admit an odd-reversal automorphism is
zero.  Activity depends on the mode:

  full      every trivalent vertex is AS-active;
  y_exempt  vertices whose connected component is a Y graph (one
            trivalent vertex, three legs) are inactive;
  oriented  no vertex is reversible at all: classes of the raw span of
            oriented graphs, always nonzero with sign +1.

The canonical representative of a connected piece is found by a forced
breadth-first relabeling: pick a root cell with one of its six (three,
when oriented) start arrangements, then repeatedly walk to the cell seen
through the lowest-numbered half-edge whose partner is still unplaced,
branching only on the cyclic direction of each newly placed cell.  The
minimal pairing word over all runs is the canonical form; the set of
reversal parities achieving the minimum decides sign and zero-ness.
Disconnected graphs canonicalize componentwise, components sorted by
their serialized form.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    EMPTY_KEY,
    Graph,
    _graph_unchecked,
    components,
    disjoint_union,
    parse_key,
    serialize,
)

MODES = ("full", "y_exempt", "oriented")

_LEG = -1  # partner marker for half-edges ending in a univalent vertex


@dataclass(frozen=True)
class SignedClass:
    key: str
    sign: int
    zero: bool


def _is_y(g: Graph) -> bool:
    return len(g.trivalent) == 1 and len(g.univalent) == 3


def _component_min_word(cells, partner, flips_allowed):
    """Minimal pairing word of one connected component with >= 1 trivalent cell.

    `cells` are the trivalent cells, `partner` maps each trivalent dart to
    its trivalent partner or _LEG.  Returns (word, parities): the canonical
    involution over relabeled darts (legs encoded as the sentinel 3t) and
    the set of reversal parities realizing it.
    """
    t = len(cells)
    n = 3 * t
    leg_value = n
    cell_index = {}
    for i, cell in enumerate(cells):
        for d in cell:
            cell_index[d] = i

    best = None
    parities = set()

    # shared mutable run state, restored on the way out of _extend
    new_of = {}
    old_of = []
    word = []

    def _extend(pos, parity, lt):
        nonlocal best, parities
        start_pos = pos
        while pos < n:
            d = old_of[pos]
            p = partner[d]
            if p == _LEG:
                v = leg_value
            elif p in new_of:
                v = new_of[p]
            else:
                # branch: place p's cell next, p taking the lowest new id
                if lt and best is not None:
                    # best may have moved under us; refresh so pruning resumes
                    lt = list(best[:pos]) != word
                ci = cell_index[p]
                cell = cells[ci]
                j = cell.index(p)
                fwd = (p, cell[(j + 1) % 3], cell[(j + 2) % 3])
                options = ((fwd, 0),)
                if flips_allowed:
                    bwd = (p, cell[(j + 2) % 3], cell[(j + 1) % 3])
                    options = ((fwd, 0), (bwd, 1))
                base = len(old_of)
                for order, df in options:
                    for off, od in enumerate(order):
                        new_of[od] = base + off
                    old_of.extend(order)
                    _extend(pos, parity + df, lt)
                    del old_of[base:]
                    for od in order:
                        del new_of[od]
                del word[start_pos:]
                return
            if not lt and best is not None:
                bv = best[pos]
                if v > bv:
                    del word[start_pos:]
                    return
                if v < bv:
                    lt = True
            word.append(v)
            pos += 1
        w = tuple(word)
        if best is None or w < best:
            best = w
            parities = {parity & 1}
        elif w == best:
            parities.add(parity & 1)
        del word[start_pos:]

    for root in range(t):
        x, y, z = cells[root]
        starts = [((x, y, z), 0), ((y, z, x), 0), ((z, x, y), 0)]
        if flips_allowed:
            starts += [((x, z, y), 1), ((z, y, x), 1), ((y, x, z), 1)]
        for order, df in starts:
            for off, od in enumerate(order):
                new_of[od] = off
            old_of.extend(order)
            _extend(0, df, False)
            old_of.clear()
            new_of.clear()

    return best, parities


def _graph_from_word(t, word) -> Graph:
    """Rebuild the canonical representative of a component from its word."""
    n = 3 * t
    cells = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(t)]
    legs = [i for i, v in enumerate(word) if v == n]
    partner = [0] * (n + len(legs))
    uni = []
    for i, v in enumerate(word):
        if v != n:
            partner[i] = v
    for j, pos in enumerate(legs):
        u = n + j
        partner[pos] = u
        partner[u] = pos
        uni.append(u)
    return _graph_unchecked(cells, uni, partner)


_INTERVAL = _graph_unchecked((), (0, 1), (1, 0))


def _canon_component(c: Graph, mode: str):
    """Return (canonical Graph, sign, zero) for a connected graph."""
    if not c.trivalent:
        # the only connected graph without trivalent vertices is the interval
        if len(c.univalent) != 2:
            raise AssertionError("impossible univalent-only component")
        return _INTERVAL, 1, False

    tri_darts = c._trivalent_set()
    partner = {}
    for cell in c.trivalent:
        for d in cell:
            p = c.partner[d]
            partner[d] = p if p in tri_darts else _LEG

    flips = mode != "oriented"
    word, parities = _component_min_word(c.trivalent, partner, flips)
    active = mode == "full" or (mode == "y_exempt" and not _is_y(c))
    if not active:
        return _graph_from_word(len(c.trivalent), word), 1, False
    zero = len(parities) == 2
    sign = 1 if 0 in parities else -1
    return _graph_from_word(len(c.trivalent), word), sign, zero


def canonicalize(g: Graph, as_mode: str = "full") -> SignedClass:
    """Canonical class of `g`: a stable key, the sign relative to the
    canonical representative, and the zero flag."""
    if as_mode not in MODES:
        raise ValueError(f"unknown as_mode {as_mode!r}")
    comps = components(g)
    if not comps:
        return SignedClass(EMPTY_KEY, 1, False)

    canon = []
    sign = 1
    zero = False
    for c in comps:
        cg, s, z = _canon_component(c, as_mode)
        canon.append((serialize(cg), cg))
        sign *= s
        zero = zero or z
    canon.sort(key=lambda item: item[0])

    merged = canon[0][1]
    for _, cg in canon[1:]:
        merged = disjoint_union(merged, cg)
    key = serialize(merged)
    return SignedClass(key, 1 if zero else sign, zero)


def merge_canonical_keys(keys) -> str:
    """Canonical key of the disjoint union of canonical connected classes.

    Matches canonicalize(disjoint union) exactly because whole-graph
    canonical forms are sorted lists of componentwise canonical forms.
    """
    if not keys:
        return EMPTY_KEY
    merged = None
    for key in sorted(keys):
        g = parse_key(key)
        merged = g if merged is None else disjoint_union(merged, g)
    return serialize(merged)


def is_isomorphic(g1: Graph, g2: Graph, as_mode: str = "full"):
    """Relative sign of two graphs in the same class, else None."""
    c1 = canonicalize(g1, as_mode)
    c2 = canonicalize(g2, as_mode)
    if c1.zero or c2.zero or c1.key != c2.key:
        return None
    return c1.sign * c2.sign


def reverse_vertex(g: Graph, i: int) -> Graph:
    """Reverse the cyclic order at trivalent vertex i (an AS move)."""
    x, y, z = g.trivalent[i]
    tri = list(g.trivalent)
    tri[i] = (x, z, y)
    return _graph_unchecked(tri, g.univalent, g.partner)
