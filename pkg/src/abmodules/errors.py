"""Exception hierarchy.

Every error carries a ``case`` tag naming the step that raised it.  The
CLI maps the three families below onto exit statuses: negative
mathematical results, inconclusive computations and malformed input.
"""


class ABModuleError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str = "", case: str | None = None):
        super().__init__(message)
        self.case = case

    def __str__(self):
        msg = super().__str__()
        return f"[{self.case}] {msg}" if self.case else msg


class NegativeResult(ABModuleError):
    """A definite mathematical negative (a theorem, not a precision artefact)."""


class Inconclusive(ABModuleError):
    """The computation could not decide at the working precision or field."""


class InvalidInput(ABModuleError):
    """Malformed or inconsistent input data."""


class ParseError(InvalidInput):
    pass


class PrecisionInconclusive(Inconclusive):
    pass


class RootNotInField(Inconclusive):
    pass


class CharPolyNotSplit(Inconclusive):
    def __init__(self, message="", case=None, factor=None):
        super().__init__(message, case)
        self.factor = factor


class CaseAnalysisExhausted(Inconclusive):
    """No branch of the induction applied; only possible for invalid forms or low precision."""


class NotSelfAdjoint(NegativeResult):
    pass


class NotAUnit(InvalidInput, ArithmeticError):
    pass


class NotNormal(InvalidInput):
    pass


class NotRegular(NegativeResult):
    pass


class NotSimplePole(InvalidInput):
    pass


class NotIsotropic(InvalidInput):
    pass


class DegenerateForm(InvalidInput):
    pass


class InvalidForm(InvalidInput):
    pass


class NotWellDefined(InvalidInput):
    pass


class FormShapeViolation(InvalidInput):
    pass


class SameClass(InvalidInput):
    pass


class Blocked(InvalidInput):
    def __init__(self, message="", case=None, index=None):
        super().__init__(message, case)
        self.index = index


class CenterNotE0(InvalidInput):
    pass


class CertificateError(InvalidInput):
    """A certificate failed re-verification."""
