"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (bad index, cap exceeded, bad parameter)."""


class PreconditionError(InputError):
    """A stated mathematical precondition failed or could not be verified."""


class RuleError(ValueError):
    """An inference rule was applied with invalid arguments."""


class FormatError(InputError):
    """A text file does not conform to its grammar; message carries line info."""
