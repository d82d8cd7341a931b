"""Exception hierarchy.  ``exit_code`` is what the CLI returns for each class."""


class RescycleError(Exception):
    exit_code = 2


class FragmentError(RescycleError):
    """A current operation left the supported formal fragment."""


class RestrictionUndecidable(FragmentError):
    pass


class UnsupportedCase(RescycleError):
    pass


class NotCohenMacaulayCompatible(UnsupportedCase):
    pass


class LiftError(RescycleError):
    """No chain-map lift found within the degree bound."""

    def __init__(self, level: int, bound: int):
        super().__init__(f"lift-failed at level {level} (degree bound {bound})")
        self.level = level
        self.bound = bound


class ComplexError(RescycleError):
    def __init__(self, level: int, reason: str):
        super().__init__(f"level {level}: {reason}")
        self.level = level


class CaseParseError(RescycleError):
    exit_code = 3

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column
