"""Exception hierarchy shared by all modules."""


class DDGError(Exception):
    """Base class for every error raised by this package."""


# field
class NotPrime(DDGError, ValueError):
    pass


class NotPrimePower(DDGError, ValueError):
    pass


class NotIrreducible(DDGError, ValueError):
    pass


class DegreeTooLarge(DDGError, ValueError):
    pass


class OrbitDegenerate(DDGError, RuntimeError):
    pass


class NotAHyperplane(DDGError, KeyError):
    pass


# groups
class FieldMismatch(DDGError, ValueError):
    pass


class OrderTooLarge(DDGError, ValueError):
    pass


class ClosureTooLarge(DDGError, ValueError):
    pass


class NotASubgroup(DDGError, ValueError):
    pass


class GroupAxiomViolated(DDGError, ValueError):
    pass


# construction
class WrongLength(DDGError, ValueError):
    pass


class TNotSupported(DDGError, ValueError):
    pass


class TTooLarge(DDGError, ValueError):
    pass


# graphs
class NotInverseClosed(DDGError, ValueError):
    pass


class ContainsIdentity(DDGError, ValueError):
    pass


class TooLarge(DDGError, ValueError):
    pass


class MalformedInput(DDGError, ValueError):
    pass


# checks
class VerificationFailed(DDGError):
    """A structure claim does not hold for the given input."""


class NotRegular(VerificationFailed):
    pass


class ThreeOrMoreValues(VerificationFailed):
    pass


class NoValidPartition(VerificationFailed):
    pass


class NotConstantOnN(VerificationFailed):
    pass


class NotConstantOffN(VerificationFailed):
    pass


class NoSubgroupFound(VerificationFailed):
    pass


# corpus
class WordSyntaxError(DDGError, ValueError):
    pass


class UnknownGenerator(DDGError, ValueError):
    pass


class RelationViolated(DDGError, RuntimeError):
    pass
