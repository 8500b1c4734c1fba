"""
Exception hierarchy shared by every package
"""
from typing import Optional


class DoctrineError(Exception):
    """Base class for all library errors"""
    pass


class SignatureError(DoctrineError):
    """Unknown symbol, arity conflict or duplicate declaration"""
    pass


class MalformedSubstitutionError(DoctrineError):
    """Substitution whose length or variable indices do not fit the contexts"""
    pass


class ParseError(DoctrineError):
    """Concrete-syntax error with a source position"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")


class MorphismMismatchError(DoctrineError):
    """Source/target objects do not line up"""
    pass


class FiberMismatchError(DoctrineError):
    """Element does not belong to the stated fiber"""
    pass


class DoctrineDefinitionError(DoctrineError):
    """A semilattice table or finite doctrine violates its laws"""
    pass


class NonFiniteDoctrineError(DoctrineError):
    """Exhaustive operation requested on a backend with infinite fibers or hom-sets"""
    pass


class InconsistentInputError(DoctrineError):
    """Filter and ideal are not disjoint, or the filter contains bottom at the terminal"""
    pass


class GuardExceededError(DoctrineError):
    """Exhaustive enumeration would exceed the configured size guard"""
    pass


class MalformedWitnessError(DoctrineError):
    """Witness shape does not match the sequent it claims to certify"""
    pass


class ElementaryCheckError(DoctrineError):
    """Equality family fails the elementary conditions"""
    pass


class QuotientError(DoctrineError):
    """Equality interpretation is not an equivalence, or induced data is ill-defined"""
    pass


class UnboundedScopeError(NonFiniteDoctrineError):
    """Operation needs every object of a base that has infinitely many"""
    pass


class MalformedFamilyError(DoctrineError):
    """Family, family kind or class of models in a shape the operation cannot use"""
    pass
