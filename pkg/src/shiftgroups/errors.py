"""Exception hierarchy shared by every module.

Each rejection reason named by a validator gets its own class so callers
(and the CLI exit-code mapping) can branch on the type rather than parse
messages.
"""


class ShiftError(Exception):
    """Base class for all library errors."""


# -- transition matrices ------------------------------------------------

class NotZeroOne(ShiftError):
    """A matrix entry is neither 0 nor 1."""


class Reducible(ShiftError):
    """The transition graph is not strongly connected."""


class Permutation(ShiftError):
    """Every row sums to 1, so the matrix is a cyclic permutation."""


# -- words, points, partitions ------------------------------------------

class Inadmissible(ShiftError):
    """A word or point uses a transition the matrix forbids."""


class BadPartition(ShiftError):
    """A word family is not a complete prefix-free cylinder partition."""


class NegativeExponent(ShiftError):
    """An iterated-sum exponent function takes a negative value."""


# -- prefix-exchange tables ----------------------------------------------

class InadmissibleWord(ShiftError):
    """A table entry contains an inadmissible or empty word."""


class DomainNotPartition(ShiftError):
    """The source words of a table do not partition the shift space."""


class ImageNotPartition(ShiftError):
    """The target words of a table do not partition the shift space."""


class FollowerMismatch(ShiftError):
    """A table entry pairs words whose last symbols allow different successors."""


class InadmissiblePair(ShiftError):
    """The requested swap pair is not an admissible transition."""


class EqualSymbols(ShiftError):
    """A swap needs two distinct symbols."""


# -- block codes and orbit-equivalence chains ----------------------------

class NotAdmissibleImage(ShiftError):
    """A block map produces a forbidden transition in the target shift."""


class NotInverse(ShiftError):
    """The declared inverse block map does not invert the forward map."""


class IncompatibleChain(ShiftError):
    """Consecutive chain stages act on different shift spaces."""


class VerificationFailed(ShiftError):
    """An internally derived identity failed its exact re-check (a bug)."""


# -- searches and text formats -------------------------------------------

class SearchBudgetExceeded(ShiftError):
    """A guaranteed-to-terminate search hit its configured caps."""

    def __init__(self, message, **caps):
        super().__init__(message + " (" + ", ".join(
            f"{k}={v}" for k, v in sorted(caps.items())) + ")")
        self.caps = dict(caps)


class FormatError(ShiftError):
    """A text input failed to parse; carries the offending line number."""

    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
