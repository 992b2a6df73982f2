"""Exception hierarchy shared by every module."""


class DiffractError(Exception):
    """Base class for all library errors."""


class NotAGroup(DiffractError):
    """A table failed one of the group axioms.

    ``reason`` is one of ``out-of-range``, ``non-latin-square``, ``no-identity``,
    ``non-associative`` or ``missing-inverse``; ``witness`` holds the first
    offending index tuple.
    """

    def __init__(self, reason, witness=(), detail=""):
        self.reason = reason
        self.witness = tuple(int(x) for x in witness)
        msg = reason
        if self.witness:
            msg += " at (" + ",".join(str(x) for x in self.witness) + ")"
        if detail:
            msg += ": " + detail
        super().__init__(msg)


class NotAPermutation(DiffractError):
    pass


class GroupTooLarge(DiffractError):
    pass


class UnknownBuiltin(DiffractError):
    pass


class ParamOutOfRange(DiffractError):
    pass


class IndexOutOfRange(DiffractError, IndexError):
    pass


class NotASubgroup(DiffractError):
    pass


class NotARepresentativeSystem(DiffractError):
    pass


class NotARepresentative(DiffractError):
    pass


class RequiresTransversal(DiffractError):
    pass


class InvalidSpectrum(DiffractError):
    pass


class FibrationMismatch(DiffractError):
    pass


class UnknownLawId(DiffractError):
    pass


class InstanceTooLarge(DiffractError):
    pass


class ParseError(DiffractError):
    pass
