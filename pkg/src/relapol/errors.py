"""Exception taxonomy shared by all modules.

``DomainError`` marks bad mathematical input (CLI exit code 1), ``UsageError``
marks malformed files or arguments (exit code 2), and ``InternalCheckError``
marks a violated internal invariant that should be impossible on valid input.
"""


class DomainError(Exception):
    pass


class FieldMismatchError(DomainError):
    pass


class NotArtinianError(DomainError):
    pass


class NotGorensteinError(DomainError):
    pass


class CapTooSmallError(DomainError):
    pass


class PreconditionError(DomainError):
    pass


class UsageError(Exception):
    pass


class InternalCheckError(Exception):
    pass
