"""Exception hierarchy.  Every library error derives from PhiGammaError."""


class PhiGammaError(Exception):
    pass


class NotAUnit(PhiGammaError, ZeroDivisionError):
    pass


class WindowTooSmall(PhiGammaError):
    """An operation needed coefficients outside the known precision window."""


class TorsionBase(PhiGammaError):
    pass


class ValidationError(PhiGammaError):
    pass


class NotEtale(ValidationError):
    pass


class NotCommuting(ValidationError):
    pass


class TorsionMismatch(ValidationError):
    pass


class InconsistentRep(ValidationError):
    pass


class UnsupportedModule(ValidationError):
    """The module is valid but lies outside what the cohomology engine handles."""


class BelowThreshold(PhiGammaError):
    pass


class NoConvergence(PhiGammaError):
    pass


class NoStabilization(PhiGammaError):
    pass


class DegreeOverflow(PhiGammaError):
    pass


class WrongModule(PhiGammaError):
    pass


class ParseError(PhiGammaError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)
