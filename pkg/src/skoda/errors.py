"""Exception hierarchy shared by the whole package."""


class SkodaError(Exception):
    """Base class for all package errors."""


class ParseError(SkodaError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownVariableError(ParseError):
    def __init__(self, name: str, position: int, text: str = ""):
        self.name = name
        super().__init__(f"unknown variable {name!r}", position, text)


class ResourceCapExceeded(SkodaError):
    """A Groebner computation hit its pair or degree budget.

    This is an outcome, not a verdict: callers must never read it as
    membership or non-membership.
    """

    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"resource cap exceeded: {what} > {limit}")


class PreconditionError(SkodaError):
    pass


class CertificateError(SkodaError):
    pass
