"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -s` to see every line.
"""
import itertools
import random
import time
from fractions import Fraction

from mws.canon import canonicalize, reverse_vertex
from mws.catalog import MODE_OF_SPACE, full_catalog
from mws.graphs import (
    EMPTY_KEY,
    components,
    disjoint_union,
    make_graph,
    parse_key,
    theta_graph,
    y_graph,
)
from mws.hopf import (
    coproduct,
    deframe,
    deframe_vector,
    dual_theta,
    is_primitive,
    product,
    sym_prediction,
    tensor_product,
    theta_normalize,
    ws_eval,
)
from mws.linalg import rank, rank_modp
from mws.relations import ihx_rows, quotient_dim
from mws.vectors import GraphVector, TensorVector

from .oracles import brute_graphs, oracle_is_zero

P1 = 1048583
P2 = 1048589


def report(criterion, ok, detail):
    line = f"{criterion} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    assert ok, line


def test_a1_low_degree_table(cache_dir):
    full = {m: quotient_dim(m, "cmc", cache_dir=cache_dir) for m in (0, 3, 6, 9)}
    prim = {m: quotient_dim(m, "cmc", True, cache_dir=cache_dir) for m in (3, 6, 9)}
    ok = full == {0: 1, 3: 1, 6: 2, 9: 3} and prim == {3: 1, 6: 1, 9: 1}
    report("A1", ok, f"full dims {full}, primitive dims {prim}")


def test_a2_degree_12(cache_dir):
    t0 = time.time()
    dim12 = quotient_dim(12, "cmc", cache_dir=cache_dir, limit=None)
    prim12 = quotient_dim(12, "cmc", True, cache_dir=cache_dir, limit=None)
    sym12 = sym_prediction(12, "cmc", cache_dir=cache_dir, limit=None)
    elapsed = time.time() - t0
    consistent = dim12 == sym12
    paper_note = (
        f"published table says 5 and 2: "
        f"{'agrees' if dim12 == 5 else 'disagrees'} on the full dim, "
        f"{'agrees' if prim12 == 2 else 'disagrees'} on the primitive dim"
    )
    report(
        "A2",
        consistent,
        f"dim_12={dim12}, primitives_12={prim12}, symmetric-algebra prediction={sym12} "
        f"(internal consistency {'exact' if consistent else 'VIOLATED'}); {paper_note}; "
        f"{elapsed:.1f}s",
    )


def test_a3_vanishing_off_multiples_of_three(cache_dir):
    bad = {}
    for m in range(1, 13):
        if m % 3 == 0:
            continue
        d_cmc = quotient_dim(m, "cmc", cache_dir=cache_dir, limit=None)
        d_ecmc = quotient_dim(m, "ecmc", cache_dir=cache_dir, limit=None)
        if d_cmc:
            bad[("cmc", m)] = d_cmc
        if d_ecmc:
            bad[("ecmc", m)] = d_ecmc
    detail = "all dims vanish for n <= 12 with 3 not dividing n"
    if bad:
        witnesses = full_catalog("ecmc", 4, cache_dir=cache_dir, limit=None).classes
        detail = (
            f"nonzero dims {bad}; e.g. the degree-4 class {witnesses} survives "
            "AS (its automorphisms all have even reversal parity), has no "
            "interval component, and both of its IHX rows cancel identically "
            "(H is AS-zero, X is the class itself with one reversal); killing "
            "it needs the white-vertex framing relations that the relation "
            "matrix deliberately excludes"
        )
    report("A3", not bad, detail)


def _triple_left(tv, mode):
    out = {}
    for (k1, k2), c in tv.items():
        for (a, b), d in coproduct(parse_key(k1), mode).items():
            key = (a, b, k2)
            out[key] = out.get(key, Fraction(0)) + c * d
    return {k: v for k, v in out.items() if v}


def _triple_right(tv, mode):
    out = {}
    for (k1, k2), c in tv.items():
        for (a, b), d in coproduct(parse_key(k2), mode).items():
            key = (k1, a, b)
            out[key] = out.get(key, Fraction(0)) + c * d
    return {k: v for k, v in out.items() if v}


def test_a4_hopf_axioms(cache_dir):
    degrees = [m for m in range(10)]
    keys = []
    for m in degrees:
        keys.extend(full_catalog("cmc", m, cache_dir=cache_dir).classes)
    checked = 0
    for key in keys:
        g = parse_key(key)
        delta = coproduct(g)
        assert delta.swap() == delta, f"cocommutativity fails on {key}"
        assert _triple_left(delta, "full") == _triple_right(delta, "full"), (
            f"coassociativity fails on {key}"
        )
        prim = is_primitive(g)
        assert prim == (len(components(g)) == 1), f"primitivity<->connected fails on {key}"
        checked += 1
    pairs = 0
    for k1, k2 in itertools.product(keys, repeat=2):
        from mws.vectors import key_degree

        if key_degree(k1) + key_degree(k2) > 9:
            continue
        g1, g2 = parse_key(k1), parse_key(k2)
        lhs = coproduct(disjoint_union(g1, g2))
        rhs = tensor_product(coproduct(g1), coproduct(g2))
        assert lhs == rhs, f"bialgebra compatibility fails on {k1} x {k2}"
        pairs += 1
    report("A4", True, f"coassoc/cocomm/primitivity on {checked} classes, bialgebra on {pairs} pairs")


def test_a5_deframing_roundtrip(cache_dir):
    checked = 0
    for m in range(7):
        for key in full_catalog("ecmc", m, cache_dir=cache_dir).classes:
            g = parse_key(key)
            raw = GraphVector.from_graph(g, 1, "oriented")
            back = deframe_vector(deframe(g), inverse=True)
            assert back == raw, f"deframe roundtrip fails on {key}"
            checked += 1
    report("A5", True, f"deframe_inv(deframe(.)) = id on {checked} classes of degree <= 6")


def test_a6_canonicalization_matches_oracle():
    rng = random.Random(20240811)
    n_zero = 0
    n_sign = 0
    for m in range(6):
        for space in ("cmc", "ecmc"):
            for g in brute_graphs(m, space):
                for mode in ("full", "y_exempt"):
                    sc = canonicalize(g, mode)
                    assert sc.zero == oracle_is_zero(g, mode), (
                        f"zero mismatch at degree {m} mode {mode}: {sc.key}"
                    )
                    n_zero += 1
                    if sc.zero or not g.trivalent:
                        continue
                    # random reorientation with known reversal parity
                    subset = [i for i in range(len(g.trivalent)) if rng.random() < 0.5]
                    h = g
                    parity = 0
                    comps_of = _component_is_y(g)
                    for i in subset:
                        h = reverse_vertex(h, i)
                        if mode == "full" or not comps_of[i]:
                            parity += 1
                    sch = canonicalize(h, mode)
                    assert sch.key == sc.key
                    assert sc.sign * sch.sign == (-1) ** parity, (
                        f"sign mismatch at degree {m} mode {mode}"
                    )
                    n_sign += 1
    report("A6", True, f"zero agreement on {n_zero} graph/mode pairs, sign agreement on {n_sign}")


def _component_is_y(g):
    """For each trivalent cell: does its component look like a Y graph?"""
    comps = components(g)
    tri_darts = g._trivalent_set()
    out = []
    cell_of_comp = {}
    # map each trivalent cell to its component via a dart census walk
    seen = 0
    comp_assignment = []
    cells = g.cells()
    cell_of = g.cell_of()
    labels = [-1] * len(cells)
    n = 0
    for start in range(len(cells)):
        if labels[start] != -1:
            continue
        stack = [start]
        labels[start] = n
        while stack:
            ci = stack.pop()
            for d in cells[ci]:
                cj = cell_of[g.partner[d]]
                if labels[cj] == -1:
                    labels[cj] = n
                    stack.append(cj)
        n += 1
    for i in range(len(g.trivalent)):
        c = comps[labels[i]]
        out.append(len(c.trivalent) == 1 and len(c.univalent) == 3)
    return out


def test_a7_rank_cross_check(cache_dir):
    matrices = []
    for m in (0, 3, 6, 9, 12):
        cat = full_catalog("cmc", m, cache_dir=cache_dir, limit=None)
        matrices.append((f"cmc full {m}", ihx_rows(cat).to_sparse()))
    for m in range(1, 12):
        if m % 3 == 0:
            continue
        cat = full_catalog("ecmc", m, cache_dir=cache_dir, limit=None)
        matrices.append((f"ecmc full {m}", ihx_rows(cat).to_sparse()))
    checked = 0
    for name, mat in matrices:
        r = rank(mat)
        r1 = rank_modp(mat, P1)
        r2 = rank_modp(mat, P2)
        assert r == r1 == r2, f"rank mismatch for {name}: {r} vs {r1}, {r2}"
        checked += 1
    report("A7", True, f"rational rank = mod-p rank for primes {P1}, {P2} on {checked} matrices")


def test_a8_theta_normalization(cache_dir):
    w = dual_theta(cache_dir=cache_dir)
    y_vec = GraphVector.from_graph(y_graph(), 1, "y_exempt")
    theta_vec = GraphVector.from_graph(theta_graph(), 1, "y_exempt")

    ny = theta_normalize(y_vec)
    nt = theta_normalize(theta_vec)
    val_y = ws_eval(w, GraphVector("full", dict(ny.items())), cache_dir=cache_dir)
    val_t = ws_eval(w, GraphVector("full", dict(nt.items())), cache_dir=cache_dir)
    point_ok = val_y == Fraction(1, 2) and val_t == 1

    pairs = 0
    for m1 in range(1, 9):
        for m2 in range(1, 10 - m1):
            for k1 in full_catalog("ecmc", m1, cache_dir=cache_dir).classes:
                for k2 in full_catalog("ecmc", m2, cache_dir=cache_dir).classes:
                    v1 = GraphVector("y_exempt", {k1: 1})
                    v2 = GraphVector("y_exempt", {k2: 1})
                    lhs = theta_normalize(product(v1, v2))
                    rhs = product(theta_normalize(v1), theta_normalize(v2))
                    assert lhs == rhs, f"theta_normalize not multiplicative on {k1} x {k2}"
                    pairs += 1
    report(
        "A8",
        point_ok,
        f"Y -> 1/2 ({val_y}), theta -> 1 ({val_t}); multiplicative on {pairs} union pairs",
    )
