"""Formal rational combinations of canonical graph classes."""
from __future__ import annotations

from fractions import Fraction

from .canon import canonicalize
from .errors import DegreeMismatch
from .graphs import Graph

_degree_cache: dict[str, int] = {}


def key_degree(key: str) -> int:
    """Degree encoded in a serialized graph line."""
    d = _degree_cache.get(key)
    if d is None:
        d = int(key.split(";", 1)[0][4:])
        _degree_cache[key] = d
    return d


class GraphVector:
    """Sparse map canonical_key -> rational, with no zero coefficients and
    no zero-class keys.  The mode records which canonicalization produced
    the keys ("full", "y_exempt" or "oriented")."""

    __slots__ = ("mode", "_c")

    def __init__(self, mode: str = "full", coeffs=None):
        self.mode = mode
        self._c: dict[str, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self._c[k] = v

    @classmethod
    def from_graph(cls, g: Graph, coeff=1, mode: str = "full") -> "GraphVector":
        sc = canonicalize(g, mode)
        out = cls(mode)
        if not sc.zero:
            c = Fraction(coeff) * sc.sign
            if c:
                out._c[sc.key] = c
        return out

    def items(self):
        return self._c.items()

    def keys(self):
        return self._c.keys()

    def coeff(self, key) -> Fraction:
        return self._c.get(key, Fraction(0))

    def add_term(self, key: str, coeff) -> None:
        new = self._c.get(key, Fraction(0)) + Fraction(coeff)
        if new:
            self._c[key] = new
        else:
            self._c.pop(key, None)

    def __add__(self, other: "GraphVector") -> "GraphVector":
        if self.mode != other.mode:
            raise ValueError("cannot add vectors of different modes")
        out = GraphVector(self.mode, dict(self._c))
        for k, v in other._c.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other: "GraphVector") -> "GraphVector":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "GraphVector":
        scalar = Fraction(scalar)
        return GraphVector(self.mode, {k: scalar * v for k, v in self._c.items()})

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        return (
            isinstance(other, GraphVector)
            and self.mode == other.mode
            and self._c == other._c
        )

    def __repr__(self):
        terms = ", ".join(f"{v}*[{k}]" for k, v in sorted(self._c.items()))
        return f"GraphVector({self.mode}; {terms or '0'})"

    def degree(self) -> int | None:
        """Common degree of all terms; None for the zero vector."""
        degs = {key_degree(k) for k in self._c}
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeMismatch(f"vector mixes degrees {sorted(degs)}")
        return degs.pop()


class TensorVector:
    """Sparse map (canonical_key, canonical_key) -> rational."""

    __slots__ = ("mode", "_c")

    def __init__(self, mode: str = "full", coeffs=None):
        self.mode = mode
        self._c: dict[tuple[str, str], Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self._c[k] = v

    def items(self):
        return self._c.items()

    def coeff(self, pair) -> Fraction:
        return self._c.get(pair, Fraction(0))

    def add_term(self, pair, coeff) -> None:
        new = self._c.get(pair, Fraction(0)) + Fraction(coeff)
        if new:
            self._c[pair] = new
        else:
            self._c.pop(pair, None)

    def __add__(self, other: "TensorVector") -> "TensorVector":
        if self.mode != other.mode:
            raise ValueError("cannot add tensors of different modes")
        out = TensorVector(self.mode, dict(self._c))
        for k, v in other._c.items():
            out.add_term(k, v)
        return out

    def __rmul__(self, scalar) -> "TensorVector":
        scalar = Fraction(scalar)
        return TensorVector(self.mode, {k: scalar * v for k, v in self._c.items()})

    def swap(self) -> "TensorVector":
        return TensorVector(self.mode, {(b, a): v for (a, b), v in self._c.items()})

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        return (
            isinstance(other, TensorVector)
            and self.mode == other.mode
            and self._c == other._c
        )

    def __repr__(self):
        terms = ", ".join(f"{v}*[{a}]x[{b}]" for (a, b), v in sorted(self._c.items()))
        return f"TensorVector({self.mode}; {terms or '0'})"
