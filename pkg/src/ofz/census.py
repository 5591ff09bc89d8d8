"""Cycle census of unions of one-factors.

The union of two perfect matchings is a 2-regular multigraph: a disjoint
union of even cycles, where an edge shared by both matchings shows up as a
cycle of length 2.  Length-2 entries never count as k-cycles for k >= 3.

For translation-generated factorizations the structure of ``F_a + F_b``
depends only on ``b - a`` (up to sign for pairs inside one factorization),
so each difference class has a representative pair.  At desk scale
(``q <= FULL_CHECK_LIMIT``) every pair is censused as well, and the class
representatives are checked against the full run.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from ofz.errors import IdenticalFactors, MismatchedVertexSets, NotOrthogonal
from ofz.factorization import INF, OneFactor, OneFactorization, orthogonal_factorizations, vertex_to_json

FULL_CHECK_LIMIT = 100


@dataclass(frozen=True, order=True)
class CycleStructure:
    """Sorted multiset of cycle lengths of one pair union."""

    lengths: tuple

    @classmethod
    def from_lengths(cls, lengths) -> "CycleStructure":
        return cls(tuple(sorted(lengths)))

    @property
    def n_vertices(self) -> int:
        return sum(self.lengths)

    def count(self, k: int) -> int:
        return self.lengths.count(k)

    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.lengths).items()))

    def to_json(self) -> list[int]:
        return list(self.lengths)


@dataclass(frozen=True)
class PairUnion:
    cycles: tuple
    structure: CycleStructure

    def k_cycles(self, k: int) -> list[tuple]:
        return [c for c in self.cycles if len(c) == k]


def _check_pair(f: OneFactor, g: OneFactor):
    if f.q != g.q:
        raise MismatchedVertexSets(f"factors on {f.q + 1} and {g.q + 1} vertices")
    if f.edges == g.edges:
        raise IdenticalFactors("the union of a factor with itself has no cycle structure")
    if f.index_mate is None or g.index_mate is None:
        raise MismatchedVertexSets("both factors must be perfect matchings of the common vertex set")


def _walk(fm, gm, start):
    path = [start]
    cur = start
    while True:
        cur = fm[cur]
        path.append(cur)
        cur = gm[cur]
        if cur == start:
            return path
        path.append(cur)


def union_cycles(f: OneFactor, g: OneFactor) -> PairUnion:
    """Decompose ``f + g`` into cycles.

    Each cycle starts at its smallest vertex (``INF`` is largest) and runs
    towards the smaller of that vertex's two neighbours.  Cycles are listed
    by ascending leading vertex.
    """
    _check_pair(f, g)
    fm, gm = f.mate, g.mate
    seen = set()
    cycles = []
    for v in [*range(f.q), INF]:
        if v in seen:
            continue
        if fm[v] == gm[v]:
            cyc = (v, fm[v])
        else:
            path = _walk(fm, gm, v)
            if path[1] > path[-1]:
                path = [path[0]] + path[:0:-1]
            cyc = tuple(path)
        seen.update(cyc)
        cycles.append(cyc)
    return PairUnion(tuple(cycles), CycleStructure.from_lengths(len(c) for c in cycles))


def _lengths(fa, ga, n):
    """Cycle lengths of the union plus the length of the cycle through ``INF`` (index n-1)."""
    seen = bytearray(n)
    out = []
    inf_len = 0
    inf = n - 1
    for v in range(n):
        if seen[v]:
            continue
        if fa[v] == ga[v]:
            seen[v] = seen[fa[v]] = 1
            length = 2
            hit = v == inf or fa[v] == inf
        else:
            length = 0
            hit = False
            cur = v
            while True:
                seen[cur] = 1
                if cur == inf:
                    hit = True
                cur = fa[cur]
                seen[cur] = 1
                if cur == inf:
                    hit = True
                cur = ga[cur]
                length += 2
                if cur == v:
                    break
        if hit:
            inf_len = length
        out.append(length)
    out.sort()
    return tuple(out), inf_len


def cycle_structure(f: OneFactor, g: OneFactor) -> CycleStructure:
    _check_pair(f, g)
    return CycleStructure(_lengths(f.index_mate, g.index_mate, f.q + 1)[0])


def count_k_cycles(f: OneFactor, g: OneFactor, k: int) -> int:
    if k < 2:
        raise ValueError("cycle length must be at least 2")
    return cycle_structure(f, g).count(k)


def cycles_through_infinity(f: OneFactor, g: OneFactor, k: int) -> list[tuple]:
    """The k-cycles of ``f + g`` that pass through ``INF`` (at most one)."""
    return [c for c in union_cycles(f, g).k_cycles(k) if INF in c]


def cycle_to_json(cycle) -> list:
    return [vertex_to_json(v) for v in cycle]


# -- whole-factorization censuses -------------------------------------------


@dataclass(frozen=True)
class PairStats:
    structure: CycleStructure
    infinity_cycle: int  # length of the cycle containing INF

    def k_count(self, k: int) -> int:
        return self.structure.count(k)

    def k_count_through_infinity(self, k: int) -> int:
        return 1 if self.infinity_cycle == k else 0


def _stats(f: OneFactor, g: OneFactor) -> PairStats:
    lengths, inf_len = _lengths(f.index_mate, g.index_mate, f.q + 1)
    return PairStats(CycleStructure(lengths), inf_len)


@dataclass
class Census:
    """Per-pair cycle data for one factorization or for a cross pair of factorizations.

    ``per_class`` maps a difference class to the stats of its representative
    pair (empty when the factorizations are not translation generated).
    ``pairs`` holds every censused pair ``(a, b)`` in ascending order.
    """

    q: int
    cross: bool
    per_class: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    full: bool = True

    def all_stats(self):
        """``(pair, stats)`` for every censused pair; class representatives are ``(0, d)``."""
        if self.pairs:
            return self.pairs.items()
        return (((0, d), s) for d, s in self.per_class.items())

    def k_counts(self, k: int) -> Counter:
        return Counter(s.k_count(k) for _, s in self.all_stats())

    def structures(self) -> list[CycleStructure]:
        return sorted({s.structure for _, s in self.all_stats()})


def _translational(f: OneFactorization) -> bool:
    return f.starter is not None


def _mismatch(where: str, a, b):
    raise AssertionError(f"translation invariance violated at {where}: {a} vs {b}")


def census_within(f: OneFactorization, full: Optional[bool] = None) -> Census:
    """Census of unordered factor pairs of one factorization."""
    q = f.q
    if full is None:
        full = q <= FULL_CHECK_LIMIT or not _translational(f)
    c = Census(q, cross=False, full=full)
    factors = f.factors
    if _translational(f):
        for d in range(1, (q - 1) // 2 + 1):
            c.per_class[d] = _stats(factors[0], factors[d])
    if full:
        for a, b in combinations(range(len(factors)), 2):
            s = _stats(factors[a], factors[b])
            c.pairs[(a, b)] = s
            if c.per_class:
                d = min((b - a) % q, (a - b) % q)
                if s.structure != c.per_class[d].structure:
                    _mismatch(f"pair {(a, b)}", s.structure, c.per_class[d].structure)
    return c


def census_cross(a: OneFactorization, b: OneFactorization, full: Optional[bool] = None) -> Census:
    """Census of ordered cross pairs ``(F_i, G_j)``; classes are ``j - i``."""
    if a.q != b.q:
        raise MismatchedVertexSets(f"K_{a.q + 1} vs K_{b.q + 1}")
    q = a.q
    translational = _translational(a) and _translational(b)
    if full is None:
        full = q <= FULL_CHECK_LIMIT or not translational
    c = Census(q, cross=True, full=full)
    if translational:
        for d in range(q):
            c.per_class[d] = _stats(a.factors[0], b.factors[d])
    if full:
        for i, fi in enumerate(a.factors):
            for j, gj in enumerate(b.factors):
                s = _stats(fi, gj)
                c.pairs[(i, j)] = s
                if c.per_class:
                    rep = c.per_class[(j - i) % q]
                    if s.structure != rep.structure:
                        _mismatch(f"cross pair {(i, j)}", s.structure, rep.structure)
    return c


@dataclass(frozen=True)
class Uniformity:
    uniform: bool
    structures: tuple  # distinct CycleStructures found, ascending
    per_class: dict
    full_check: bool
    witnesses: tuple = ()  # two pairs with different structures


def uniformity_check(f: OneFactorization, full: Optional[bool] = None) -> Uniformity:
    """Do all pair unions share one cycle-length multiset?"""
    c = census_within(f, full)
    first: dict = {}
    for pair, s in c.all_stats():
        first.setdefault(s.structure, pair)
    structures = tuple(sorted(first))
    witnesses = tuple(first[s] for s in structures[:2]) if len(structures) > 1 else ()
    per_class = {d: s.structure for d, s in c.per_class.items()}
    return Uniformity(len(structures) == 1, structures, per_class, c.full, witnesses)


@dataclass(frozen=True)
class Classification:
    """Outcome of an (l, C_k) classification.

    ``l`` is None when the k-cycle count is not constant; ``witnesses`` then
    holds two pairs with different counts.  ``lk_within_bound`` reports
    whether ``l * k <= q + 1`` (not enforced).
    """

    k: int
    l: Optional[int]
    histogram: dict
    pairs_checked: int
    full_check: bool
    witnesses: tuple = ()
    lk_within_bound: Optional[bool] = None

    @property
    def constant(self) -> bool:
        return self.l is not None

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "l": self.l,
            "histogram": {str(n): m for n, m in sorted(self.histogram.items())},
            "pairs_checked": self.pairs_checked,
            "full_check": self.full_check,
            "lk_within_bound": self.lk_within_bound,
        }
        if self.witnesses:
            out["witnesses"] = [list(w) for w in self.witnesses]
        return out


def classify_census(c: Census, k: int) -> Classification:
    first: dict = {}
    hist: Counter = Counter()
    n = 0
    for pair, s in c.all_stats():
        cnt = s.k_count(k)
        hist[cnt] += 1
        first.setdefault(cnt, pair)
        n += 1
    if len(hist) == 1:
        l = next(iter(hist))
        return Classification(k, l, dict(hist), n, c.full, (), l * k <= c.q + 1)
    counts = sorted(first)
    return Classification(k, None, dict(sorted(hist.items())), n, c.full,
                          (first[counts[0]], first[counts[1]]), None)


def classify_l_ck(f: OneFactorization, k: int, full: Optional[bool] = None) -> Classification:
    if k < 2:
        raise ValueError("cycle length must be at least 2")
    return classify_census(census_within(f, full), k)


def classify_pair_l_ck(a: OneFactorization, b: OneFactorization, k: int,
                       full: Optional[bool] = None) -> Classification:
    """Classify the cross pairs of two orthogonal factorizations."""
    if k < 2:
        raise ValueError("cycle length must be at least 2")
    ok, overlap = orthogonal_factorizations(a, b)
    if not ok:
        raise NotOrthogonal(f"factorizations share {overlap} edges in some factor pair")
    return classify_census(census_cross(a, b, full), k)


# -- reports ------------------------------------------------------------------


@dataclass
class CensusReport:
    q: int
    labels: tuple
    k: int
    census: Census
    classification: Classification
    beta: Optional[int] = None

    def to_json(self) -> dict:
        per_class = {
            str(d): {"lengths": s.structure.to_json(), "k_count": s.k_count(self.k)}
            for d, s in self.census.per_class.items()
        }
        return {
            "q": self.q,
            "beta": self.beta,
            "starters": list(self.labels),
            "k": self.k,
            "cross": self.census.cross,
            "per_class": per_class,
            "structures": [s.to_json() for s in self.census.structures()],
            "classification": self.classification.to_json(),
        }


def census_report(f: OneFactorization, k: int, beta: Optional[int] = None,
                  other: Optional[OneFactorization] = None) -> CensusReport:
    if other is None:
        c = census_within(f)
        labels = (f.label,)
    else:
        c = census_cross(f, other)
        labels = (f.label, other.label)
    return CensusReport(f.q, labels, k, c, classify_census(c, k), beta)
