"""Translation-generated one-factorizations of K_{q+1}.

Vertices are the residues ``0..q-1`` plus the distinguished :data:`INF`
vertex.  ``INF`` is its own type: it sorts after every residue, is fixed by
translation and refuses arithmetic.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Union

from ofz.errors import FieldMismatch, NotAStarter
from ofz.starters import Starter, starter_defect, starter_to_json


@functools.total_ordering
class Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return Infinity, ()

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("ofz.INF")

    def __lt__(self, other) -> bool:
        if other is self:
            return False
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other) -> bool:
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented


INF = Infinity()
Vertex = Union[int, Infinity]


def translate(v: Vertex, gamma: int, q: int) -> Vertex:
    if v is INF:
        return INF
    return (v + gamma) % q


def vertex_to_json(v: Vertex):
    return "inf" if v is INF else v


def vertex_from_json(v) -> Vertex:
    return INF if v == "inf" else int(v)


class Edge(NamedTuple):
    """Unordered edge stored with the smaller endpoint first."""

    u: Vertex
    v: Vertex

    @classmethod
    def of(cls, a: Vertex, b: Vertex) -> "Edge":
        if a == b:
            raise ValueError(f"loop at {a!r}")
        return cls(a, b) if a < b else cls(b, a)

    def shifted(self, gamma: int, q: int) -> "Edge":
        return Edge.of(translate(self.u, gamma, q), translate(self.v, gamma, q))


@dataclass(frozen=True)
class OneFactor:
    q: int
    edges: frozenset
    origin: tuple = ("custom", None)
    # mate by vertex index, INF at index q; None unless a perfect matching
    index_mate: Optional[tuple] = dc_field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        edges = frozenset(e if type(e) is Edge and e[0] < e[1] else Edge.of(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        q = self.q
        idx = [-1] * (q + 1)
        for a, b in edges:
            ia = q if a is INF else (a if type(a) is int and 0 <= a < q else -1)
            ib = q if b is INF else (b if type(b) is int and 0 <= b < q else -1)
            if ia < 0 or ib < 0 or idx[ia] >= 0 or idx[ib] >= 0:
                return
            idx[ia] = ib
            idx[ib] = ia
        if -1 not in idx:
            object.__setattr__(self, "index_mate", tuple(idx))

    @functools.cached_property
    def mate(self) -> dict:
        mate = {}
        for a, b in self.edges:
            mate.setdefault(a, b)
            mate.setdefault(b, a)
        return mate

    @property
    def vertices(self) -> frozenset:
        return frozenset(range(self.q)) | {INF}

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def is_perfect_matching(self) -> bool:
        if self.index_mate is not None:
            return True
        seen = set()
        for a, b in self.edges:
            if a in seen or b in seen:
                return False
            seen.add(a)
            seen.add(b)
        return seen == self.vertices

    def shifted(self, gamma: int) -> "OneFactor":
        return OneFactor(self.q, frozenset(e.shifted(gamma, self.q) for e in self.edges),
                         (self.origin[0], None))


@dataclass(frozen=True)
class OneFactorization:
    q: int
    factors: tuple
    starter: Optional[Starter] = None

    @property
    def label(self) -> str:
        return self.starter.label if self.starter is not None else "custom"

    def __len__(self) -> int:
        return len(self.factors)

    def __getitem__(self, gamma: int) -> OneFactor:
        return self.factors[gamma]

    def __iter__(self):
        return iter(self.factors)


def _factor_from_pairs(q: int, pairs: Iterable, gamma: int, label: str) -> OneFactor:
    new = tuple.__new__
    edges = [Edge.of(gamma, INF)]
    for x, y in pairs:
        a, b = (x + gamma) % q, (y + gamma) % q
        edges.append(new(Edge, (a, b) if a < b else (b, a)))
    return OneFactor(q, frozenset(edges), (label, gamma))


def factorization_from_starter(s: Starter) -> OneFactorization:
    """``F_gamma = {{INF, gamma}} + {{x + gamma, y + gamma}}`` for every gamma in F_q."""
    reason = starter_defect(s.field, s.pairs)
    if reason is not None:
        raise NotAStarter(f"cannot build a factorization from a non-starter ({reason})")
    q = s.q
    factors = tuple(_factor_from_pairs(q, s.pairs, g, s.label) for g in range(q))
    fz = OneFactorization(q, factors, s)
    ok, reason = validate_factorization(fz)
    if not ok:
        raise NotAStarter(f"starter {s.label} produced an invalid factorization: {reason}")
    return fz


def validate_factorization(f: OneFactorization) -> tuple[bool, str]:
    """Check matchings, pairwise disjointness and coverage of E(K_{q+1}).

    Returns ``(ok, reason)``; ``reason`` is ``"ok"`` on success.
    """
    q = f.q
    n = q + 1
    if len(f.factors) != n - 1:
        return False, f"expected {n - 1} factors, found {len(f.factors)}"
    seen: dict = {}
    for i, factor in enumerate(f.factors):
        if factor.q != q:
            return False, f"factor {i} lives on a different vertex set"
        if len(factor.edges) != n // 2 or not factor.is_perfect_matching():
            return False, f"factor {i} is not a perfect matching"
        for e in factor.edges:
            if e in seen:
                return False, f"edge {e} lies in factors {seen[e]} and {i}"
            seen[e] = i
    if len(seen) != n * (n - 1) // 2:
        return False, "factors do not cover every edge of the complete graph"
    return True, "ok"


def orthogonal_factorizations(a: OneFactorization, b: OneFactorization) -> tuple[bool, int]:
    """Return ``(orthogonal, max_overlap)`` over all cross pairs of factors."""
    if a.q != b.q:
        raise FieldMismatch(f"factorizations of K_{a.q + 1} and K_{b.q + 1}")
    worst = 0
    for fa in a.factors:
        edges = fa.edges
        for fb in b.factors:
            overlap = len(edges & fb.edges)
            if overlap > worst:
                worst = overlap
    return worst <= 1, worst


def translation_covariant(f: OneFactorization) -> bool:
    """Every factor equals the zeroth factor shifted by its index."""
    base = f.factors[0]
    return all(f.factors[g].edges == base.shifted(g).edges for g in range(f.q))


def factorization_to_json(f: OneFactorization) -> dict:
    return {
        "q": f.q,
        "starter": starter_to_json(f.starter) if f.starter is not None else None,
        "factors": {
            str(g): [[vertex_to_json(u), vertex_to_json(v)] for u, v in factor.sorted_edges()]
            for g, factor in enumerate(f.factors)
        },
    }


def _dot_id(v: Vertex) -> str:
    return '"inf"' if v is INF else f'"{v}"'


def factor_pair_dot(f: OneFactor, g: OneFactor, name: str = "union") -> str:
    """Render ``f`` (red) and ``g`` (blue) together; shared edges are drawn once, purple."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    vertices = sorted(f.vertices | g.vertices)
    for v in vertices:
        label = "∞" if v is INF else str(v)
        lines.append(f"  {_dot_id(v)} [label=\"{label}\"];")
    shared = f.edges & g.edges
    for e in sorted(f.edges | g.edges):
        if e in shared:
            color = "purple"
        elif e in f.edges:
            color = "red"
        else:
            color = "blue"
        lines.append(f"  {_dot_id(e.u)} -- {_dot_id(e.v)} [color={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complete_graph_edges(q: int) -> set:
    vertices = list(range(q)) + [INF]
    return {Edge.of(a, b) for a, b in combinations(vertices, 2)}
