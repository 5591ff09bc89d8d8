"""Exception hierarchy shared by every layer of the package."""


class OFZError(Exception):
    """Base class for all errors raised by ofz."""


class CompositeModulus(OFZError, ValueError):
    pass


class EvenModulus(OFZError, ValueError):
    pass


class FieldMismatch(OFZError, ValueError):
    """Operands belong to different fields."""


class ZeroInverse(OFZError, ZeroDivisionError):
    pass


class ZeroArgument(OFZError, ValueError):
    """A residue class was requested for the zero element."""


class BadResidue(OFZError, ValueError):
    """A multiplier lies in the wrong residue class (or is excluded)."""


class BadCongruence(OFZError, ValueError):
    """The field order does not satisfy the congruence a construction needs."""


class NotAStarter(OFZError, ValueError):
    pass


class IdenticalFactors(OFZError, ValueError):
    pass


class MismatchedVertexSets(OFZError, ValueError):
    pass


class NotOrthogonal(OFZError, ValueError):
    pass


class HypothesisUnmet(OFZError, ValueError):
    """The parameters do not satisfy the hypothesis of the claim being checked."""
