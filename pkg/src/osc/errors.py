"""Exception hierarchy shared by every module."""


class OscError(Exception):
    """Base class for all errors raised by this package."""


class InputError(OscError, ValueError):
    """Bad user input: unknown letter, wrong alphabet, invalid parameters."""


class ContractError(OscError):
    """A caller broke a precondition (e.g. an assignment misses an atom)."""


class CapacityError(OscError):
    """A value exceeds a documented fixed capacity (63-bit words, depth caps)."""


class RefusalError(OscError):
    """Work refused because it would exceed a configured budget or guard.

    ``required`` carries the amount of work that would have been needed so
    that callers can consciously raise the limit.
    """

    def __init__(self, message: str, required: int | None = None, limit: int | None = None):
        super().__init__(message)
        self.required = required
        self.limit = limit
