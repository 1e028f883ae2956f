"""Exception hierarchy shared by all modules."""


class LowRankError(Exception):
    """Base class for every error raised by this package."""


class InputError(LowRankError):
    """Malformed or out-of-range input data."""


class MalformedDocument(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class SelfLoop(InputError):
    pass


class UnknownFamily(InputError):
    pass


class BadParameter(InputError):
    pass


class TooLarge(LowRankError):
    """An exhaustive search was requested on an instance above the configured cap."""


class CapExceeded(LowRankError):
    """An enumeration produced more items than the configured limit."""


class NotASeparation(LowRankError):
    """The frequent-row/frequent-column construction left an edge across the cut."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class NotASuffix(LowRankError):
    pass


class AsymmetricSpecUsedAsSymmetric(LowRankError):
    pass


class FormulaError(InputError):
    """Base for formula-language errors; carries a machine-readable code and position."""

    code = "FormulaError"

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{message} (line {line}, col {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class FormulaSyntaxError(FormulaError):
    code = "SyntaxError"


class UnknownFlipSpec(FormulaError):
    code = "UnknownFlipSpec"


class ArityMismatch(FormulaError):
    code = "ArityMismatch"


class UnboundVariable(FormulaError):
    code = "UnboundVariable"


class SymmetryRequired(FormulaError):
    code = "SymmetryRequired"


class DuplicateFlipSpec(FormulaError):
    code = "DuplicateFlipSpec"
