"""Hopf structure, the deframing map, theta normalization, and weight
systems.

The product is disjoint union; the coproduct sums over ordered two-block
splits of the component multiset (empty blocks allowed, giving the
grouplike unit).  The extended coproduct follows the edge-coloring
description: each of the 2^m two-colorings keeps one color per side,
vertices of the restricted graphs that drop to valence two split into
two univalent vertices, isolated vertices disappear, and a side with an
interval component kills its term.

deframe and deframe_inv live on the raw span of oriented graphs (mode
"oriented"): the signed sum over subsets of trivalent vertices, each
split into three univalent vertices, and the same sum with plus signs,
which is its inclusion-exclusion inverse.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .canon import canonicalize, merge_canonical_keys
from .catalog import MODE_OF_SPACE
from .errors import DegreeMismatch, VectorFileError
from .graphs import EMPTY_KEY, Graph, _graph_unchecked, components, disjoint_union, empty_graph, parse_key
from .relations import quotient_basis, quotient_dim, reduce_to_basis
from .vectors import GraphVector, TensorVector, key_degree

_Y_KEY = "deg=3;v=(0,1,2)|(3)|(4)|(5);p=0-3,1-4,2-5"
_THETA_KEY = "deg=3;v=(0,1,2)|(3,4,5);p=0-3,1-4,2-5"


# ---------------------------------------------------------------------------
# product and coproducts

def product(v1: GraphVector, v2: GraphVector) -> GraphVector:
    """Bilinear extension of disjoint union."""
    if v1.mode != v2.mode:
        raise ValueError("mode mismatch")
    out = GraphVector(v1.mode)
    for k1, c1 in v1.items():
        for k2, c2 in v2.items():
            g = disjoint_union(parse_key(k1), parse_key(k2))
            sc = canonicalize(g, v1.mode)
            if not sc.zero:
                out.add_term(sc.key, c1 * c2 * sc.sign)
    return out


def coproduct(g: Graph, mode: str = "full") -> TensorVector:
    """Sum over ordered two-block distributions of the components of g."""
    comps = components(g)
    out = TensorVector(mode)
    for bits in itertools.product((0, 1), repeat=len(comps)):
        left = [c for c, b in zip(comps, bits) if b == 0]
        right = [c for c, b in zip(comps, bits) if b == 1]
        sides = []
        coeff = Fraction(1)
        dead = False
        for block in (left, right):
            merged = empty_graph()
            for c in block:
                merged = disjoint_union(merged, c)
            sc = canonicalize(merged, mode)
            if sc.zero:
                dead = True
                break
            coeff *= sc.sign
            sides.append(sc.key)
        if not dead:
            out.add_term((sides[0], sides[1]), coeff)
    return out


def _restrict_to_edges(g: Graph, keep: set[int]) -> Graph:
    """Subgraph on a set of edges (edge = index into g.edges()), keeping
    cyclic orders on vertices that stay trivalent and splitting vertices
    of lower valence into univalent ones."""
    edges = g.edges()
    kept_darts = set()
    for i in keep:
        a, b = edges[i]
        kept_darts.add(a)
        kept_darts.add(b)
    darts = sorted(kept_darts)
    index = {d: i for i, d in enumerate(darts)}
    tri = []
    uni = []
    for cell in g.trivalent:
        live = [d for d in cell if d in kept_darts]
        if len(live) == 3:
            tri.append(tuple(index[d] for d in cell))
        else:
            uni.extend(index[d] for d in live)
    for u in g.univalent:
        if u in kept_darts:
            uni.append(index[u])
    partner = [0] * len(darts)
    for d in darts:
        partner[index[d]] = index[g.partner[d]]
    return _graph_unchecked(tri, sorted(uni), partner)


def _has_interval(g: Graph) -> bool:
    return any(not c.trivalent for c in components(g))


def coproduct_extended(g: Graph) -> TensorVector:
    """Edge-coloring coproduct on the extended space (mode y_exempt);
    sides with interval components drop their whole term."""
    m = g.degree
    out = TensorVector("y_exempt")
    for bits in itertools.product((0, 1), repeat=m):
        left = _restrict_to_edges(g, {i for i, b in enumerate(bits) if b == 0})
        right = _restrict_to_edges(g, {i for i, b in enumerate(bits) if b == 1})
        if _has_interval(left) or _has_interval(right):
            continue
        scl = canonicalize(left, "y_exempt")
        scr = canonicalize(right, "y_exempt")
        if scl.zero or scr.zero:
            continue
        out.add_term((scl.key, scr.key), scl.sign * scr.sign)
    return out


def tensor_product(t1: TensorVector, t2: TensorVector) -> TensorVector:
    """Componentwise product on tensor legs."""
    if t1.mode != t2.mode:
        raise ValueError("mode mismatch")
    out = TensorVector(t1.mode)
    for (a1, b1), c1 in t1.items():
        for (a2, b2), c2 in t2.items():
            left = canonicalize(disjoint_union(parse_key(a1), parse_key(a2)), t1.mode)
            right = canonicalize(disjoint_union(parse_key(b1), parse_key(b2)), t1.mode)
            if left.zero or right.zero:
                continue
            out.add_term((left.key, right.key), c1 * c2 * left.sign * right.sign)
    return out


def is_primitive(g: Graph, mode: str = "full") -> bool:
    sc = canonicalize(g, mode)
    if sc.zero:
        return False
    expected = TensorVector(mode)
    expected.add_term((sc.key, EMPTY_KEY), 1)
    expected.add_term((EMPTY_KEY, sc.key), 1)
    return coproduct(parse_key(sc.key), mode) == expected


def primitives_dim(m, cache_dir=None, limit=None) -> int:
    """Dimension of the degree-m space of connected classes mod IHX."""
    return quotient_dim(m, "cmc", connected_only=True, cache_dir=cache_dir, limit=limit)


def sym_algebra_dims(connected_dims: dict[int, int], up_to: int) -> list[int]:
    """Graded dimensions of the free commutative algebra on connected_dims
    generators per degree: coefficients of prod (1-x^d)^(-p_d)."""
    out = [0] * (up_to + 1)
    out[0] = 1
    for d, p in sorted(connected_dims.items()):
        if d <= 0 or p <= 0:
            continue
        for _ in range(p):
            # multiply by 1/(1-x^d)
            for i in range(d, up_to + 1):
                out[i] += out[i - d]
    return out


def sym_prediction(m, space="cmc", cache_dir=None, limit=None) -> int:
    """Degree-m dimension predicted by the structure theorem from the
    computed connected dims at degrees <= m."""
    conn = {
        d: quotient_dim(d, space, connected_only=True, cache_dir=cache_dir, limit=limit)
        for d in range(1, m + 1)
    }
    return sym_algebra_dims(conn, m)[m]


# ---------------------------------------------------------------------------
# deframing and theta normalization

def split_vertices(g: Graph, subset) -> Graph:
    """Replace each trivalent cell in subset by three univalent cells."""
    subset = set(subset)
    tri = [c for i, c in enumerate(g.trivalent) if i not in subset]
    uni = list(g.univalent)
    for i in subset:
        uni.extend(g.trivalent[i])
    return _graph_unchecked(tri, sorted(uni), g.partner)


def deframe(g: Graph) -> GraphVector:
    """Signed sum over subsets of trivalent vertices of the split graphs,
    in the raw (oriented) span."""
    out = GraphVector("oriented")
    t = len(g.trivalent)
    for r in range(t + 1):
        for subset in itertools.combinations(range(t), r):
            sc = canonicalize(split_vertices(g, subset), "oriented")
            out.add_term(sc.key, Fraction(-1) ** r)
    return out


def deframe_inv(g: Graph) -> GraphVector:
    """The same sum with all plus signs: the inclusion-exclusion inverse."""
    out = GraphVector("oriented")
    t = len(g.trivalent)
    for r in range(t + 1):
        for subset in itertools.combinations(range(t), r):
            sc = canonicalize(split_vertices(g, subset), "oriented")
            out.add_term(sc.key, 1)
    return out


def deframe_vector(v: GraphVector, inverse: bool = False) -> GraphVector:
    """Linear extension of deframe (or deframe_inv) to oriented vectors."""
    op = deframe_inv if inverse else deframe
    out = GraphVector("oriented")
    for k, c in v.items():
        out = out + c * op(parse_key(k))
    return out


def theta_normalize(v: GraphVector) -> GraphVector:
    """Replace every Y component by half a theta component; the result
    lies in the pure-trivalent span."""
    theta = parse_key(_THETA_KEY)
    out = GraphVector(v.mode)
    for k, c in v.items():
        comps = components(parse_key(k))
        n_y = 0
        merged = empty_graph()
        for comp in comps:
            if len(comp.trivalent) == 1 and len(comp.univalent) == 3:
                n_y += 1
                merged = disjoint_union(merged, theta)
            else:
                merged = disjoint_union(merged, comp)
        sc = canonicalize(merged, v.mode)
        if not sc.zero:
            out.add_term(sc.key, c * sc.sign * Fraction(1, 2) ** n_y)
    return out


# ---------------------------------------------------------------------------
# weight systems

@dataclass(frozen=True)
class WeightSystem:
    """A rational functional on the degree-m quotient basis of the
    trivalent space."""
    degree: int
    values: tuple[tuple[str, Fraction], ...]  # (basis key, value), basis order

    def value_map(self) -> dict[str, Fraction]:
        return dict(self.values)


def make_weight_system(degree, values: dict, cache_dir=None, limit=None) -> WeightSystem:
    basis = quotient_basis(degree, "cmc", cache_dir=cache_dir, limit=limit)
    if set(values) != set(basis):
        raise VectorFileError(
            f"weight system basis does not match the canonical degree-{degree} quotient basis"
        )
    return WeightSystem(degree, tuple((k, Fraction(values[k])) for k in basis))


def dual_weight(degree, key, cache_dir=None, limit=None) -> WeightSystem:
    """The dual of one quotient-basis class."""
    basis = quotient_basis(degree, "cmc", cache_dir=cache_dir, limit=limit)
    if key not in basis:
        raise VectorFileError(f"{key} is not in the degree-{degree} quotient basis")
    return WeightSystem(degree, tuple((k, Fraction(1 if k == key else 0)) for k in basis))


def dual_theta(cache_dir=None) -> WeightSystem:
    return dual_weight(3, _THETA_KEY, cache_dir=cache_dir)


def ws_eval(w: WeightSystem, v: GraphVector, cache_dir=None, limit=None) -> Fraction:
    """Apply the functional to reduce_to_basis(v)."""
    if not v:
        return Fraction(0)
    if v.degree() != w.degree:
        raise DegreeMismatch(f"vector degree {v.degree()} != weight system degree {w.degree}")
    coords = reduce_to_basis(v, w.degree, "cmc", cache_dir=cache_dir, limit=limit)
    total = Fraction(0)
    for (key, wval), c in zip(w.values, coords):
        total += wval * c
    return total


def ws_product(w1: WeightSystem, w2: WeightSystem, cache_dir=None, limit=None) -> WeightSystem:
    """Dual product: (w1.w2)(B) = sum w1(B_1) w2(B_2) over component splits
    of each basis class B with matching degrees."""
    m = w1.degree + w2.degree
    basis = quotient_basis(m, "cmc", cache_dir=cache_dir, limit=limit)
    values = {}
    for key in basis:
        total = Fraction(0)
        for (k1, k2), c in coproduct(parse_key(key)).items():
            if key_degree(k1) == w1.degree and key_degree(k2) == w2.degree:
                v1 = GraphVector("full", {k1: 1})
                v2 = GraphVector("full", {k2: 1})
                total += c * ws_eval(w1, v1, cache_dir, limit) * ws_eval(w2, v2, cache_dir, limit)
        values[key] = total
    return WeightSystem(m, tuple((k, values[k]) for k in basis))


def counit_weight(cache_dir=None) -> WeightSystem:
    """The dual of the empty graph: the unit of the dual algebra."""
    return dual_weight(0, EMPTY_KEY, cache_dir=cache_dir)


# ---------------------------------------------------------------------------
# weight system file format

def dump_weights(w: WeightSystem, path) -> None:
    obj = {
        "degree": w.degree,
        "basis": [k for k, _ in w.values],
        "values": [str(v) for _, v in w.values],
    }
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=0, sort_keys=True)
        fh.write("\n")


def load_weights(path, cache_dir=None, limit=None) -> WeightSystem:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise VectorFileError(f"{path}: invalid JSON: {exc}") from None
    try:
        degree = int(obj["degree"])
        basis = list(obj["basis"])
        raw = list(obj["values"])
    except (KeyError, TypeError, ValueError) as exc:
        raise VectorFileError(f"{path}: missing or bad field: {exc}") from None
    if len(basis) != len(raw):
        raise VectorFileError(f"{path}: basis and values lengths differ")
    expected = quotient_basis(degree, "cmc", cache_dir=cache_dir, limit=limit)
    if tuple(basis) != expected:
        raise VectorFileError(
            f"{path}: basis does not match the canonical degree-{degree} echelon basis"
        )
    try:
        values = {k: Fraction(s) for k, s in zip(basis, raw)}
    except (ValueError, ZeroDivisionError) as exc:
        raise VectorFileError(f"{path}: bad rational: {exc}") from None
    return WeightSystem(degree, tuple((k, values[k]) for k in basis))
