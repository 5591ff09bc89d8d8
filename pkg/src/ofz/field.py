"""Prime fields F_q with quadratic-residue machinery.

Elements are canonical residues in ``[0, q)``.  Hot loops elsewhere in the
package work on plain ``int`` residues and go through the :class:`PrimeField`
helpers (:meth:`PrimeField.is_qr`, :meth:`PrimeField.inv`, ...);
:class:`FieldElement` is the checked value type for user-facing arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Protocol, Union

from ofz.errors import (
    CompositeModulus,
    EvenModulus,
    FieldMismatch,
    ZeroArgument,
    ZeroInverse,
)


class Residue(enum.Enum):
    QR = "QR"
    NQR = "NQR"

    def __str__(self) -> str:
        return self.value


class Field(Protocol):
    """What the rest of the package needs from a finite field of odd order.

    Only :class:`PrimeField` implements it; an extension-field class would
    have to provide the same surface.
    """

    order: int

    def element(self, x) -> "FieldElement": ...
    def residue_class(self, x) -> Residue: ...
    def quadratic_residues(self) -> tuple[int, ...]: ...
    def non_residues(self) -> tuple[int, ...]: ...


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    """Sieve of Eratosthenes, inclusive bound."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """The field of residues modulo an odd prime ``q >= 5``.

    Construct through :func:`make_field` so that equal moduli share one
    (immutable) instance.
    """

    __slots__ = ("q", "order", "_is_qr", "_qr", "_nqr", "_primitive_root")

    def __init__(self, q: int):
        if not isinstance(q, int) or isinstance(q, bool):
            raise TypeError(f"modulus must be an int, got {q!r}")
        if q % 2 == 0:
            raise EvenModulus(f"modulus {q} is even")
        if q < 5:
            raise ValueError(f"modulus must be at least 5, got {q}")
        if not is_prime(q):
            raise CompositeModulus(f"modulus {q} is not prime")
        self.q = q
        self.order = q

        half = (q - 1) // 2
        euler = [False] * q
        for x in range(1, q):
            euler[x] = pow(x, half, q) == 1
        squares = {x * x % q for x in range(1, q)}
        for x in range(1, q):
            if euler[x] != (x in squares):
                raise RuntimeError(f"Euler criterion disagrees with squares table at {x} mod {q}")
        self._is_qr = tuple(euler)
        self._qr = tuple(x for x in range(1, q) if euler[x])
        self._nqr = tuple(x for x in range(1, q) if not euler[x])
        self._primitive_root = self._find_primitive_root()

    def _find_primitive_root(self) -> int:
        q = self.q
        exponents = [(q - 1) // p for p in prime_factors(q - 1)]
        for g in range(2, q):
            if all(pow(g, e, q) != 1 for e in exponents):
                return g
        raise RuntimeError(f"no primitive root mod {q}")  # unreachable for prime q

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __reduce__(self):
        return make_field, (self.q,)

    # -- element handling -------------------------------------------------

    def element(self, x: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"element of {x.field!r} used in {self!r}")
            return x
        return FieldElement(int(x) % self.q, self)

    def residue(self, x: Union[int, "FieldElement"]) -> int:
        """Canonical integer residue of ``x``, checking the field of elements."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"element of {x.field!r} used in {self!r}")
            return x.value
        return int(x) % self.q

    def __iter__(self) -> Iterator["FieldElement"]:
        return (FieldElement(x, self) for x in range(self.q))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    # -- residue classes --------------------------------------------------

    def residue_class(self, x) -> Residue:
        v = self.residue(x)
        if v == 0:
            raise ZeroArgument("zero has no quadratic residue class")
        return Residue.QR if self._is_qr[v] else Residue.NQR

    def is_qr(self, x) -> bool:
        return self.residue_class(x) is Residue.QR

    def is_nqr(self, x) -> bool:
        return self.residue_class(x) is Residue.NQR

    def quadratic_residues(self) -> tuple[int, ...]:
        """QR(q) in ascending order."""
        return self._qr

    def non_residues(self) -> tuple[int, ...]:
        """NQR(q) in ascending order."""
        return self._nqr

    # -- integer-level helpers used by the combinatorial layers ------------

    def inv(self, x) -> int:
        v = self.residue(x)
        if v == 0:
            raise ZeroInverse(f"0 has no inverse mod {self.q}")
        return pow(v, -1, self.q)

    @property
    def primitive_root(self) -> "FieldElement":
        return FieldElement(self._primitive_root, self)

    def multiplicative_order(self, x) -> int:
        v = self.residue(x)
        if v == 0:
            raise ZeroArgument("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for p in prime_factors(n):
            while order % p == 0 and pow(v, order // p, self.q) == 1:
                order //= p
        return order


@lru_cache(maxsize=None)
def make_field(q: int) -> PrimeField:
    """Return the (shared) prime field of order ``q``.

    Raises :class:`EvenModulus` for even ``q`` and :class:`CompositeModulus`
    for odd composites.
    """
    return PrimeField(q)


@dataclass(frozen=True, slots=True)
class FieldElement:
    value: int
    field: PrimeField

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return other % self.field.q
        return NotImplemented

    def _new(self, v: int) -> "FieldElement":
        return FieldElement(v % self.field.q, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def inv(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self.field.inv(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.inv() * o

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return self._new(pow(self.value, n, self.field.q))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.q})"

    def is_qr(self) -> bool:
        return self.field.is_qr(self.value)

    @property
    def residue_class(self) -> Residue:
        return self.field.residue_class(self.value)


def is_qr(a: FieldElement) -> Residue:
    """Residue class of a nonzero element."""
    return a.field.residue_class(a)


def primitive_root(f: PrimeField) -> FieldElement:
    """Smallest positive primitive root of ``f``."""
    return f.primitive_root


def qr_generator(f: PrimeField) -> FieldElement:
    """Square of the canonical primitive root; it generates QR(q)."""
    r = f.primitive_root
    return r * r


def cyclotomic_number(f: PrimeField, i: int, j: int) -> int:
    """Cyclotomic number ``(i, j)`` of order two.

    Counts ``x`` in coset ``C_i`` with ``x + 1`` in ``C_j`` where ``C_0`` is
    QR(q) and ``C_1`` is NQR(q).  Exact enumeration.
    """
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError("coset indices must be 0 or 1 for order two")
    cosets = (f.quadratic_residues(), f.non_residues())
    target = Residue.QR if j == 0 else Residue.NQR
    q = f.q
    return sum(1 for x in cosets[i] if (x + 1) % q and f.residue_class(x + 1) is target)
