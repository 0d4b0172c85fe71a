"""Exception types shared across the package."""


class BraidSCPError(Exception):
    """Base class for all package-specific errors."""


class BadParameter(BraidSCPError):
    """A constructor or generator argument is out of its legal range."""


class IndexOutOfRange(BraidSCPError):
    """A signed atom index in a word does not name an atom."""


class StructureMismatch(BraidSCPError):
    """Operands belong to different Garside structures."""


class DimensionMismatch(BraidSCPError):
    """Tuple/interval dimensions disagree."""


class NotInInterval(BraidSCPError):
    """An orbit computation was started from a point outside its interval."""


class TooLarge(BraidSCPError):
    """Refusing to enumerate a simple-element set of predicted size > 10**6."""


class BadTarget(BraidSCPError):
    """A sliding target violates the one-step (0/1 shrink) constraint."""


class ZeroLengthFactor(BraidSCPError):
    """A sliding target asks to decycle a coordinate of canonical length 0."""


class NoneExists(BraidSCPError):
    """No simple element satisfies the minimal-element constraints.

    Cannot occur for box intervals (conjugating by the Garside element always
    works there); raised only to surface internal inconsistencies.
    """


class OracleFailed(BraidSCPError):
    """A search-SCP oracle returned no conjugator."""


class Truncated(BraidSCPError):
    """An SCP answer is unknown because an invariant-set computation hit its cap."""
