"""Exception hierarchy.

Errors split into two families so the command line can map them onto its
exit codes: bad input (2) and mathematical inconsistency (3).
"""


class WeylQuantError(Exception):
    exit_code = 1


class InputError(WeylQuantError):
    """Malformed or unsupported input."""

    exit_code = 2


class ConfigurationError(InputError):
    pass


class DomainError(InputError):
    pass


class DegeneratePairError(InputError):
    pass


class MalformedPointError(InputError):
    pass


class AmbiguousDataError(InputError):
    pass


class EmptyInputError(InputError):
    pass


class UnsupportedRankError(InputError):
    pass


class InconsistencyError(WeylQuantError):
    """An exact identity that should hold did not."""

    exit_code = 3


class InexactDivisionError(InconsistencyError):
    pass


class NotAKCharacterError(InconsistencyError):
    pass


class NonPointedConeError(InconsistencyError):
    pass
