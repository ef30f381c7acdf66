"""Exception types shared across the package."""


class KnotSurgeryError(Exception):
    """Base class for all package-specific errors."""


class UnknownGeneratorError(KnotSurgeryError):
    """A word refers to a generator outside the presentation."""


class SubstitutionCycleError(KnotSurgeryError):
    """An eliminating substitution would reintroduce the eliminated generator."""


class DuplicateGeneratorError(KnotSurgeryError):
    """Generator names collide where disjoint names were required."""


class BraidSyntaxError(KnotSurgeryError):
    """Unparseable braid input."""


class IndexOutOfRangeError(KnotSurgeryError):
    """A braid letter references a crossing outside 1..n-1."""


class NotAKnotError(KnotSurgeryError):
    """The braid closure has more than one component."""


class InvalidMonodromyError(KnotSurgeryError):
    """Fibered-surface data failed its automorphism or boundary certificate."""


class InvalidSlopeError(KnotSurgeryError):
    """Surgery slope with q < 1 or gcd(p, q) != 1."""


class NotAKnotGroupError(KnotSurgeryError):
    """Operation requires a group whose abelianization is infinite cyclic."""


class ClosureCapExceededError(KnotSurgeryError):
    """Permutation closure grew past the configured cap."""


class MismatchedTargetsError(KnotSurgeryError):
    """Spectra being compared were computed over different target lists."""
