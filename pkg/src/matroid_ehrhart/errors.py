"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input and domain errors exit 2,
capacity errors exit 3.
"""


class MatroidEhrhartError(Exception):
    """Base class for all library errors."""


class InputError(MatroidEhrhartError, ValueError):
    """Malformed input: wrong sizes, out-of-range labels, duplicate nodes."""


class DomainError(MatroidEhrhartError, ValueError):
    """Well-formed input outside an operation's mathematical domain."""


class CapacityError(MatroidEhrhartError):
    """The request exceeds an exhaustive-enumeration cap."""

    def __init__(self, what: str, n: int, cap: int):
        self.what = what
        self.n = n
        self.cap = cap
        super().__init__(f"{what}: n={n} exceeds cap {cap}")
