"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class HoroError(Exception):
    exit_code = 1


class InputError(HoroError, ValueError):
    """Malformed or out-of-contract input (bad JSON, bad parameters)."""

    exit_code = 2


class DomainError(HoroError, ValueError):
    """Input lies outside the numerical domain of an operation (e.g. not inside the cone)."""

    exit_code = 3


class InvalidParamsError(InputError):
    """(x_hat, r) does not parameterize a horofunction."""


class NonConvergenceError(HoroError):
    exit_code = 4


class CheckFailed(HoroError):
    exit_code = 4
