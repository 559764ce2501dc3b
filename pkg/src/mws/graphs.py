"""Half-edge multigraphs with cyclically ordered trivalent vertices.

A graph is stored as a partition of half-edges 0..n-1 into trivalent
cells (3-tuples; the tuple order encodes the cyclic orientation, so
rotations of a cell describe the same graph while reversals do not) and
univalent cells (single half-edges), together with a fixed-point-free
involution pairing half-edges into edges.  Loops and parallel edges are
allowed.  The degree of a graph is its number of edges.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedGraph

EMPTY_KEY = "deg=0;v=;p="


@dataclass(frozen=True)
class Graph:
    trivalent: tuple[tuple[int, int, int], ...]
    univalent: tuple[int, ...]
    partner: tuple[int, ...]

    @property
    def n_half_edges(self) -> int:
        return len(self.partner)

    @property
    def degree(self) -> int:
        return len(self.partner) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted pairs (a, b) with a < b, listed in order of a."""
        return [(a, b) for a, b in enumerate(self.partner) if a < b]

    def cells(self) -> list[tuple[int, ...]]:
        return list(self.trivalent) + [(u,) for u in self.univalent]

    def cell_of(self) -> dict[int, int]:
        """Map half-edge -> cell index (trivalent cells first, then univalent)."""
        out = {}
        for i, cell in enumerate(self.trivalent):
            for d in cell:
                out[d] = i
        base = len(self.trivalent)
        for j, u in enumerate(self.univalent):
            out[u] = base + j
        return out

    def is_trivalent_dart(self, d: int) -> bool:
        return d in self._trivalent_set()

    def _trivalent_set(self) -> frozenset[int]:
        return frozenset(d for cell in self.trivalent for d in cell)


def make_graph(vertex_cells, pairing) -> Graph:
    """Validate and build a Graph from cells and a list of half-edge pairs."""
    trivalent = []
    univalent = []
    seen = set()
    for cell in vertex_cells:
        cell = tuple(int(d) for d in cell)
        if len(cell) == 3:
            trivalent.append(cell)
        elif len(cell) == 1:
            univalent.append(cell[0])
        else:
            raise MalformedGraph(f"cell {cell} has size {len(cell)}, expected 1 or 3")
        for d in cell:
            if d in seen:
                raise MalformedGraph(f"half-edge {d} appears in more than one cell")
            seen.add(d)
    n = len(seen)
    if seen != set(range(n)):
        raise MalformedGraph("cells must cover exactly the half-edges 0..n-1")

    pairs = [(int(a), int(b)) for a, b in pairing]
    partner = [-1] * n
    for a, b in pairs:
        if a == b:
            raise MalformedGraph(f"half-edge {a} is paired with itself")
        for d in (a, b):
            if not 0 <= d < n:
                raise MalformedGraph(f"pairing references unknown half-edge {d}")
            if partner[d] != -1:
                raise MalformedGraph(f"half-edge {d} is paired twice")
        partner[a] = b
        partner[b] = a
    if any(p == -1 for p in partner):
        dangling = [d for d, p in enumerate(partner) if p == -1]
        raise MalformedGraph(f"unpaired half-edges: {dangling}")

    return Graph(tuple(trivalent), tuple(univalent), tuple(partner))


def _graph_unchecked(trivalent, univalent, partner) -> Graph:
    """Constructor for internally produced data that is valid by construction."""
    return Graph(tuple(trivalent), tuple(univalent), tuple(partner))


def serialize(g: Graph) -> str:
    """Serialize a graph in the on-disk text format.

    Each trivalent cell is written starting from its least half-edge
    (rotation only; the cyclic direction is preserved), cells are sorted,
    and pairs are sorted numerically.  The result is deterministic for any
    labeled graph; it equals the canonical key exactly when the graph is a
    canonical representative.
    """
    cells = []
    for cell in g.trivalent:
        k = cell.index(min(cell))
        cells.append((cell[k], cell[(k + 1) % 3], cell[(k + 2) % 3]))
    cells.extend((u,) for u in g.univalent)
    cells.sort()
    vpart = "|".join("(" + ",".join(str(d) for d in c) + ")" for c in cells)
    ppart = ",".join(f"{a}-{b}" for a, b in sorted(g.edges()))
    return f"deg={g.degree};v={vpart};p={ppart}"


def parse_key(key: str) -> Graph:
    """Parse the serialization format back into a validated Graph."""
    try:
        degpart, vpart, ppart = key.split(";")
        if not degpart.startswith("deg=") or not vpart.startswith("v=") or not ppart.startswith("p="):
            raise ValueError("bad section markers")
        deg = int(degpart[4:])
        cells = []
        body = vpart[2:]
        if body:
            for chunk in body.split("|"):
                if not (chunk.startswith("(") and chunk.endswith(")")):
                    raise ValueError(f"bad cell {chunk!r}")
                cells.append(tuple(int(x) for x in chunk[1:-1].split(",")))
        pairs = []
        body = ppart[2:]
        if body:
            for chunk in body.split(","):
                a, b = chunk.split("-")
                pairs.append((int(a), int(b)))
    except ValueError as exc:
        raise MalformedGraph(f"cannot parse graph line {key!r}: {exc}") from None
    g = make_graph(cells, pairs)
    if g.degree != deg:
        raise MalformedGraph(f"declared degree {deg} but graph has {g.degree} edges")
    return g


def components(g: Graph) -> list[Graph]:
    """Connected components, half-edges renumbered, cyclic orders preserved."""
    cells = g.cells()
    cell_of = g.cell_of()
    n_cells = len(cells)
    comp = [-1] * n_cells
    n_comp = 0
    for start in range(n_cells):
        if comp[start] != -1:
            continue
        stack = [start]
        comp[start] = n_comp
        while stack:
            ci = stack.pop()
            for d in cells[ci]:
                cj = cell_of[g.partner[d]]
                if comp[cj] == -1:
                    comp[cj] = n_comp
                    stack.append(cj)
        n_comp += 1

    out = []
    for k in range(n_comp):
        comp_cells = [cells[i] for i in range(n_cells) if comp[i] == k]
        darts = [d for cell in comp_cells for d in cell]
        darts.sort()
        index = {d: i for i, d in enumerate(darts)}
        tri = [tuple(index[d] for d in c) for c in comp_cells if len(c) == 3]
        uni = [index[c[0]] for c in comp_cells if len(c) == 1]
        partner = [0] * len(darts)
        for d in darts:
            partner[index[d]] = index[g.partner[d]]
        out.append(_graph_unchecked(tri, uni, partner))
    return out


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n_half_edges
    tri = g1.trivalent + tuple(tuple(d + off for d in c) for c in g2.trivalent)
    uni = g1.univalent + tuple(u + off for u in g2.univalent)
    partner = g1.partner + tuple(p + off for p in g2.partner)
    return _graph_unchecked(tri, uni, partner)


def empty_graph() -> Graph:
    return _graph_unchecked((), (), ())


def theta_graph() -> Graph:
    """Two trivalent vertices joined by three edges."""
    return make_graph([(0, 1, 2), (3, 4, 5)], [(0, 3), (1, 4), (2, 5)])


def y_graph() -> Graph:
    """One trivalent vertex with three legs ending in univalent vertices."""
    return make_graph([(0, 1, 2), (3,), (4,), (5,)], [(0, 3), (1, 4), (2, 5)])


def interval_graph() -> Graph:
    """A single edge with two univalent endpoints."""
    return make_graph([(0,), (1,)], [(0, 1)])


def dumbbell_graph() -> Graph:
    """Two loop-vertices joined by a bar; dies in the AS quotient."""
    return make_graph([(0, 1, 2), (3, 4, 5)], [(0, 1), (3, 4), (2, 5)])
