"""Exception hierarchy shared by every module of the package."""


class GitInstabError(Exception):
    """Base class for all errors raised by gitinstab."""


class InputError(GitInstabError):
    """Malformed or out-of-contract input. Maps to CLI exit code 1."""


class BudgetError(GitInstabError):
    """A configured computational budget was exceeded. Maps to CLI exit code 2."""


class ParseError(InputError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class NonHomogeneous(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class ZeroVector(InputError):
    """The point v = 0 has an empty state and is rejected everywhere."""


class DegreeTooSmall(InputError):
    pass


class NotMonomialMatrix(InputError):
    pass


class SingularMatrix(InputError):
    pass


class ProportionalityError(GitInstabError):
    pass


class TooLarge(BudgetError):
    pass


class SamplerExhausted(BudgetError):
    pass
