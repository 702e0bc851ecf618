"""Exception types shared across the package.

The split matters for the command line tool: `PreconditionFailed` and its
subclasses map to exit code 2, `MathCheckFailed` to 3, and `InternalAlarm`
to 4.  Everything else is an ordinary bug and propagates as-is.
"""


class RootRingError(Exception):
    """Base class for all errors raised deliberately by this package."""


class PreconditionFailed(RootRingError):
    """Input violates a documented precondition (wrong rank, missing
    predicate, malformed parameters)."""


class RankTooSmall(PreconditionFailed):
    pass


class IndexClash(PreconditionFailed):
    """Indices that must be pairwise distinct are not."""


class BlockMismatch(PreconditionFailed):
    """An element vector does not live in the block it was claimed to."""


class NotIdempotentFamily(PreconditionFailed):
    """The given elements are not a complete orthogonal idempotent family."""


class NotIdempotent(PreconditionFailed):
    """The multiplication does not satisfy R_ij R_jk = R_ik."""


class PairingNotSurjective(PreconditionFailed):
    pass


class ModuleNotFirm(PreconditionFailed):
    pass


class InvalidParams(PreconditionFailed):
    """Command-line parameters fail validation before any work starts."""


class FileFormatError(RootRingError):
    """Text that should be a ring or commutator-data file does not parse.
    The command line tool reports this as an input/output failure (exit 1),
    not as a precondition failure."""


class MathCheckFailed(RootRingError):
    """A mathematical verification failed on well-formed input.  Carries a
    witness describing the first failure found."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotQuasiInvertible(MathCheckFailed):
    pass


class NotHomomorphism(MathCheckFailed):
    """A constructed map fails multiplicativity; witness is the offending
    generator pair."""


class BoundExceeded(RootRingError):
    """A closure computation outgrew its size bound.  Carries the partial
    size reached."""

    def __init__(self, message, partial_size=None):
        super().__init__(message)
        self.partial_size = partial_size


class InternalAlarm(RootRingError):
    """A consistency check that should be unconditionally true (by theorem)
    failed.  Indicates a bug in this package, not bad input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotWellDefined(InternalAlarm):
    """A map constructed on a quotient does not kill the relation subgroup."""


class InjectivityFailure(InternalAlarm):
    """A projection that a structure theorem promises to be injective is not."""
