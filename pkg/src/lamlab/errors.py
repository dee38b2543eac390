"""Exception hierarchy shared by every lamlab module."""


class LamLabError(Exception):
    pass


class InvalidPath(LamLabError):
    """A path walks off the term it is applied to."""


class ConventionViolated(LamLabError):
    """Inputs to variable-convention substitution break the convention."""


class NotAnAbstraction(LamLabError):
    pass


class SideConditionViolated(LamLabError):
    pass


class NotARedex(LamLabError):
    pass


class InvalidTrace(LamLabError):
    pass


class RuleMismatch(LamLabError):
    pass


class NotPure(LamLabError):
    """An explicit-substitution term still carries closures or metavariables."""


class CapExceeded(LamLabError):
    """A bounded search hit its node cap.

    The partial result (graph or search state) is attached as ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(LamLabError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class ZeroIndex(ParseError):
    pass
