"""Starter-generated one-factorizations of K_{q+1} and their 4-cycle census."""

from ofz.census import (
    CycleStructure,
    classify_l_ck,
    classify_pair_l_ck,
    count_k_cycles,
    cycles_through_infinity,
    union_cycles,
    uniformity_check,
)
from ofz.factorization import INF, Edge, OneFactor, OneFactorization, factorization_from_starter
from ofz.field import FieldElement, PrimeField, Residue, make_field
from ofz.starters import Starter, horton_starter, mullin_nemeth_starter, negate_starter

__version__ = "0.1.0"

__all__ = [
    "INF",
    "CycleStructure",
    "Edge",
    "FieldElement",
    "OneFactor",
    "OneFactorization",
    "PrimeField",
    "Residue",
    "Starter",
    "classify_l_ck",
    "classify_pair_l_ck",
    "count_k_cycles",
    "cycles_through_infinity",
    "factorization_from_starter",
    "horton_starter",
    "make_field",
    "mullin_nemeth_starter",
    "negate_starter",
    "union_cycles",
    "uniformity_check",
]
