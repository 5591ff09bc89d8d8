"""Starters and strong starters over prime fields.

A starter for F_q pairs up the nonzero elements so that the differences
``±(x - y)`` of its pairs again cover every nonzero element exactly once.
Two constructors are provided (the Horton family ``S_beta`` and the
Mullin-Nemeth starter), plus negation and the orthogonality predicate.

Pairs are stored as plain residues; every constructor re-checks the starter
axioms before returning, even where a theorem guarantees them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from ofz.errors import BadCongruence, BadResidue, FieldMismatch, NotAStarter
from ofz.field import PrimeField

Pair = tuple[int, int]


def _canonical_pairs(pairs: Iterable[Pair]) -> tuple[Pair, ...]:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


@dataclass(frozen=True)
class Starter:
    field: PrimeField
    pairs: tuple[Pair, ...]
    label: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "pairs", _canonical_pairs(self.pairs))

    @property
    def q(self) -> int:
        return self.field.q

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def same_pairs(self, other: "Starter") -> bool:
        return self.field == other.field and self.pairs == other.pairs


def starter_defect(field: PrimeField, pairs: Iterable) -> Optional[str]:
    """Reason code why ``pairs`` is not a starter for ``field``, or None.

    Reason codes: ``malformed``, ``cardinality``, ``partition``, ``differences``.
    """
    q = field.q
    k = (q - 1) // 2
    flat = []
    try:
        pairs = [tuple(p) for p in pairs]
        for p in pairs:
            if len(p) != 2:
                return "malformed"
            for v in p:
                flat.append(field.residue(v))
    except FieldMismatch:
        raise
    except (TypeError, ValueError):
        return "malformed"
    if len(pairs) != k:
        return "cardinality"
    if 0 in flat or len(set(flat)) != q - 1:
        return "partition"
    diffs = set()
    for i in range(0, len(flat), 2):
        d = (flat[i] - flat[i + 1]) % q
        diffs.add(d)
        diffs.add(q - d)
    if len(diffs) != q - 1:
        return "differences"
    return None


def is_starter(candidate, field: Optional[PrimeField] = None) -> bool:
    """Both starter axioms hold: members partition F_q*, differences cover F_q*."""
    if isinstance(candidate, Starter):
        field, candidate = candidate.field, candidate.pairs
    if field is None:
        raise TypeError("a field is required for a bare pair collection")
    return starter_defect(field, candidate) is None


def is_strong_starter(candidate: Starter) -> bool:
    """Pair sums are nonzero and pairwise distinct."""
    if not is_starter(candidate):
        return False
    q = candidate.q
    sums = {(x + y) % q for x, y in candidate.pairs}
    return 0 not in sums and len(sums) == len(candidate.pairs)


def _checked(field: PrimeField, pairs, label: str) -> Starter:
    s = Starter(field, tuple(pairs), label)
    reason = starter_defect(field, s.pairs)
    if reason is not None:
        raise NotAStarter(f"{label} over F_{field.q} fails the starter axioms ({reason})")
    return s


def make_starter(field: PrimeField, pairs, label: str = "custom") -> Starter:
    """Wrap a user-supplied pair collection, raising NotAStarter if invalid."""
    return _checked(field, [(field.residue(x), field.residue(y)) for x, y in pairs], label)


def _require_3_mod_4(field: PrimeField, what: str):
    if field.q % 4 != 3 or field.q == 3:
        raise BadCongruence(f"{what} needs q = 3 (mod 4) and q != 3, got q = {field.q}")


def horton_starter(field: PrimeField, beta) -> Starter:
    """``S_beta = {{x, x*beta} : x in QR(q)}`` for beta in NQR(q) minus {-1}."""
    _require_3_mod_4(field, "the Horton starter")
    q = field.q
    b = field.residue(beta)
    if b == 0 or field.is_qr(b):
        raise BadResidue(f"beta = {b} is not a non-residue mod {q}")
    if b == q - 1:
        raise BadResidue("beta = -1 is excluded")
    s = _checked(field, [(x, x * b % q) for x in field.quadratic_residues()], f"horton({b})")
    if not is_strong_starter(s):
        raise NotAStarter(f"S_{b} over F_{q} is not strong")
    return s


def mullin_nemeth_starter(field: PrimeField) -> Starter:
    """Pairs ``{r^(2i), r^(2i+1)}`` for the canonical primitive root ``r``."""
    _require_3_mod_4(field, "the Mullin-Nemeth starter")
    q = field.q
    t = (q - 1) // 2
    r = field.primitive_root.value
    powers = [pow(r, e, q) for e in range(2 * t)]
    s = _checked(field, [(powers[2 * i], powers[2 * i + 1]) for i in range(t)], "mullin_nemeth")
    if not is_strong_starter(s):
        raise NotAStarter(f"Mullin-Nemeth starter over F_{q} is not strong")
    return s


def negate_starter(s: Starter) -> Starter:
    q = s.q
    if s.label.startswith("negated(") and s.label.endswith(")"):
        label = s.label[len("negated(") : -1]
    else:
        label = f"negated({s.label})"
    return _checked(s.field, [((-x) % q, (-y) % q) for x, y in s.pairs], label)


def oriented_pairs(s: Starter) -> dict[int, Pair]:
    """Map each QR difference ``d`` to the ordered pair ``(x, y)`` with ``x - y = d``.

    Needs q = 3 (mod 4): then -1 is a non-residue and exactly one of
    ``x - y``, ``y - x`` is a residue.
    """
    f = s.field
    _require_3_mod_4(f, "pair orientation")
    q = f.q
    index = {}
    for x, y in s.pairs:
        d = (x - y) % q
        if not f.is_qr(d):
            x, y, d = y, x, q - d
        if d in index:
            raise NotAStarter(f"difference {d} occurs twice")
        index[d] = (x, y)
    if len(index) != (q - 1) // 2:
        raise NotAStarter("pairs do not cover every difference class")
    return dict(sorted(index.items()))


def are_orthogonal_starters(s: Starter, t: Starter) -> bool:
    """Align pairs by their QR difference and test ``i -> u_i - x_i`` for injectivity.

    Also requires ``u_i != x_i`` for every aligned pair.
    """
    if s.field != t.field:
        raise FieldMismatch("starters over different fields")
    q = s.q
    left, right = oriented_pairs(s), oriented_pairs(t)
    shifts = set()
    for d, (x, _) in left.items():
        u = right[d][0]
        shift = (u - x) % q
        if shift == 0 or shift in shifts:
            return False
        shifts.add(shift)
    return True


def starter_to_json(s: Starter) -> list[list[int]]:
    """Pairs as ``[x, y]`` residues.

    For q = 3 (mod 4) each pair is oriented so that ``x - y`` is a quadratic
    residue and the list is sorted by that difference; otherwise the canonical
    sorted pairs are emitted.
    """
    if s.q % 4 == 3:
        return [[x, y] for x, y in oriented_pairs(s).values()]
    return [list(p) for p in s.pairs]


def starter_for(field: PrimeField, construction: str, beta=None) -> Starter:
    """Dispatch on a construction name (``horton`` or ``mullin-nemeth``)."""
    if construction == "horton":
        if beta is None:
            raise ValueError("the Horton construction needs beta")
        return horton_starter(field, beta)
    if construction in ("mullin-nemeth", "mullin_nemeth"):
        return mullin_nemeth_starter(field)
    raise ValueError(f"unknown construction {construction!r}")


def horton_betas(field: PrimeField) -> list[int]:
    """Admissible Horton multipliers NQR(q) minus {-1}, ascending."""
    return [b for b in field.non_residues() if b != field.q - 1]


__all__ = [
    "Starter",
    "are_orthogonal_starters",
    "horton_betas",
    "horton_starter",
    "is_starter",
    "is_strong_starter",
    "make_starter",
    "mullin_nemeth_starter",
    "negate_starter",
    "oriented_pairs",
    "starter_defect",
    "starter_for",
    "starter_to_json",
]
