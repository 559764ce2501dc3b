"""IHX relation rows over a catalog and quotient dimensions.

An internal edge joins two distinct trivalent vertices and is not a
loop.  Writing the cyclic orders at its endpoints as (e, a, b) and
(e, c, d), the relation I - H + X reconnects the four outer half-edges
across a fresh central edge:

    I: (e, a, b) | (e, c, d)      the graph itself
    H: (e, a, c) | (e, b, d)
    X: (e, a, d) | (e, b, c)

The cyclic orders written above ARE the convention; flipping any of them
globally changes the relation set, and this table is the single place it
lives.  It is pinned by the acceptance dimension table and, in the test
suite, by an epsilon-tensor contraction identity.
"""
from __future__ import annotations

from fractions import Fraction

from .canon import canonicalize
from .catalog import connected_catalog, full_catalog
from .errors import DegreeMismatch
from .graphs import Graph, _graph_unchecked, parse_key
from .linalg import SparseMat, echelonize, rank
from .vectors import GraphVector, key_degree

_quotient_memo: dict = {}
_echelon_memo: dict = {}


def internal_edges(g: Graph) -> list[tuple[int, int]]:
    """Non-loop edges joining two distinct trivalent vertices."""
    cell_of = {}
    for i, cell in enumerate(g.trivalent):
        for d in cell:
            cell_of[d] = i
    out = []
    for a, b in g.edges():
        if a in cell_of and b in cell_of and cell_of[a] != cell_of[b]:
            out.append((a, b))
    return out


def _rotated(cell, d):
    j = cell.index(d)
    return (cell[j], cell[(j + 1) % 3], cell[(j + 2) % 3])


def reconnections(g: Graph, edge: tuple[int, int]) -> tuple[Graph, Graph]:
    """The H and X graphs for an internal edge of g."""
    x, y = edge
    cell_of = {}
    for i, cell in enumerate(g.trivalent):
        for d in cell:
            cell_of[d] = i
    iu, iv = cell_of[x], cell_of[y]
    e, a, b = _rotated(g.trivalent[iu], x)
    f, c, d = _rotated(g.trivalent[iv], y)

    def build(u_cell, v_cell):
        tri = list(g.trivalent)
        tri[iu] = u_cell
        tri[iv] = v_cell
        return _graph_unchecked(tri, g.univalent, g.partner)

    h = build((e, a, c), (f, b, d))
    xg = build((e, a, d), (f, b, c))
    return h, xg


def ihx_row_for(g: Graph, edge, mode: str) -> GraphVector:
    """The relation vector I - H + X for one internal edge, canonicalized."""
    out = GraphVector.from_graph(g, 1, mode)
    h, x = reconnections(g, edge)
    out = out - GraphVector.from_graph(h, 1, mode)
    out = out + GraphVector.from_graph(x, 1, mode)
    return out


class RelationMatrix:
    """Sparse relation rows over a catalog basis, with per-row provenance."""

    def __init__(self, catalog):
        self.catalog = catalog
        self.index = {key: i for i, key in enumerate(catalog.classes)}
        self.rows: list[dict[int, Fraction]] = []
        self.provenance: list[tuple[str, int]] = []

    def add_row(self, coeffs: dict[int, Fraction], provenance) -> None:
        if coeffs:
            self.rows.append(coeffs)
            self.provenance.append(provenance)

    def to_sparse(self) -> SparseMat:
        return SparseMat.from_rows(self.rows, len(self.catalog.classes))


def ihx_rows(cat) -> RelationMatrix:
    """One relation row per (basis graph, internal edge); rows that
    canonicalize to nothing are dropped."""
    rm = RelationMatrix(cat)
    for key in cat.classes:
        g = parse_key(key)
        for edge_id, edge in enumerate(internal_edges(g)):
            vec = ihx_row_for(g, edge, cat.as_mode)
            coeffs = {}
            for k, v in vec.items():
                if k not in rm.index:
                    raise AssertionError(f"IHX term {k} escapes the catalog")
                coeffs[rm.index[k]] = v
            rm.add_row(coeffs, (key, edge_id))
    return rm


def _get_quotient(space, m, connected_only, cache_dir, limit):
    key = (space, m, connected_only, cache_dir and str(cache_dir))
    if key in _quotient_memo:
        return _quotient_memo[key]
    cat = (connected_catalog if connected_only else full_catalog)(
        space, m, cache_dir=cache_dir, limit=limit
    )
    rm = ihx_rows(cat)
    rk = rank(rm.to_sparse()) if rm.rows else 0
    result = (cat, rm, rk)
    _quotient_memo[key] = result
    return result


def quotient_dim(m, space, connected_only=False, cache_dir=None, limit=None) -> int:
    """dim of the degree-m quotient: #classes - rank(IHX rows)."""
    cat, _, rk = _get_quotient(space, m, connected_only, cache_dir, limit)
    return len(cat.classes) - rk


def _get_echelon(space, m, cache_dir, limit):
    key = (space, m, cache_dir and str(cache_dir))
    if key in _echelon_memo:
        return _echelon_memo[key]
    cat, rm, _ = _get_quotient(space, m, False, cache_dir, limit)
    pivot_cols, reduced = echelonize(rm.to_sparse()) if rm.rows else ((), [])
    result = (cat, pivot_cols, reduced)
    _echelon_memo[key] = result
    return result


def quotient_basis(m, space, cache_dir=None, limit=None) -> tuple[str, ...]:
    """Catalog classes at the non-pivot columns: a basis of the quotient."""
    cat, pivot_cols, _ = _get_echelon(space, m, cache_dir, limit)
    pivots = set(pivot_cols)
    return tuple(k for i, k in enumerate(cat.classes) if i not in pivots)


def reduce_to_basis(v: GraphVector, m, space, cache_dir=None, limit=None):
    """Coordinates of v in the echelon-selected basis of the quotient.

    Two vectors are equal in the quotient iff their coordinate tuples
    match.
    """
    for k in v.keys():
        if key_degree(k) != m:
            raise DegreeMismatch(f"term of degree {key_degree(k)} in a degree-{m} vector")
    cat, pivot_cols, reduced = _get_echelon(space, m, cache_dir, limit)
    index = {key: i for i, key in enumerate(cat.classes)}
    coords = {}
    for k, c in v.items():
        if k not in index:
            raise DegreeMismatch(f"class {k} is not in the degree-{m} {space} catalog")
        coords[index[k]] = coords.get(index[k], Fraction(0)) + c
    for col, row in zip(pivot_cols, reduced):
        c = coords.get(col)
        if not c:
            continue
        for j, w in row.items():
            new = coords.get(j, Fraction(0)) - c * w
            if new:
                coords[j] = new
            else:
                coords.pop(j, None)
    pivots = set(pivot_cols)
    basis_cols = [i for i in range(len(cat.classes)) if i not in pivots]
    assert all(coords.get(i, Fraction(0)) == 0 for i in pivots)
    return tuple(coords.get(i, Fraction(0)) for i in basis_cols)


def write_matrix(rm: RelationMatrix, path) -> None:
    """Export rows as a `row col value` triple list with a catalog header."""
    cat = rm.catalog
    with open(path, "w") as fh:
        fh.write(
            f"#matrix space={cat.space} mode={cat.as_mode} deg={cat.degree} "
            f"rows={len(rm.rows)} cols={len(cat.classes)}\n"
        )
        for i, row in enumerate(rm.rows):
            for j in sorted(row):
                fh.write(f"{i} {j} {row[j]}\n")


def write_dims_csv(path, entries) -> None:
    """Module-level dimension export: degree,space,connected,classes,rank,dim."""
    with open(path, "w") as fh:
        fh.write("degree,space,connected,classes,rank,dim\n")
        for m, space, connected, n_classes, rk, dim in entries:
            fh.write(f"{m},{space},{int(connected)},{n_classes},{rk},{dim}\n")


def clear_memo():
    _quotient_memo.clear()
    _echelon_memo.clear()
