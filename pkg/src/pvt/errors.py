"""Exception hierarchy shared by all pvt modules.

Two families matter to callers: InconclusiveError subclasses mean a search
or certification cap was hit (the answer may exist beyond the cap), while
InvalidInputError subclasses mean the input violated a precondition.  The
CLI maps the former to exit code 3 and the latter to exit code 4.
"""


class PvtError(Exception):
    pass


class InconclusiveError(PvtError):
    """A bounded search was exhausted without a decision."""


class InvalidInputError(PvtError):
    """The input violates a documented precondition."""


class DivisionByZero(InvalidInputError, ZeroDivisionError):
    pass


class FactorDegreeExceeded(InconclusiveError):
    """Irreducibility certification or splitting needed degree > bound."""

    def __init__(self, degree, bound):
        self.degree = degree
        self.bound = bound
        super().__init__(
            "cannot certify factors at degree %d (bound %d)" % (degree, bound))


class DivisionByZeroOperator(InvalidInputError, ZeroDivisionError):
    pass


class NotOrderTwo(InvalidInputError):
    def __init__(self, order):
        self.order = order
        super().__init__("operator has order %s, need exactly 2" % (order,))


class IrregularPlace(InvalidInputError):
    """The indicial polynomial degenerates below the operator order."""


class CandidateExplosion(InconclusiveError):
    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(
            "local candidate combinations %d exceed cap %d" % (count, cap))


class BasisExplosion(InconclusiveError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__("monomial support %d exceeds cap %d" % (size, cap))


class IllFormedTower(InvalidInputError):
    pass


class TowerMismatch(InvalidInputError):
    pass


class ParseError(InvalidInputError):
    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__("%s (line %d, column %d)" % (message, line, col))


class DInCoefficient(ParseError):
    """The operator symbol D appeared where a plain coefficient is required."""


class NotDifferentiallyClosed(InvalidInputError):
    def __init__(self, gen_text, derivative_text):
        self.gen_text = gen_text
        self.derivative_text = derivative_text
        super().__init__(
            "derivative of %s (= %s) is not in the field generated by the "
            "given elements" % (gen_text, derivative_text))


class NoFirstOrderFactor(InconclusiveError):
    def __init__(self, annihilator):
        self.annihilator = annihilator
        super().__init__(
            "no first-order right factor over the base field for %s"
            % (annihilator,))


class Inconclusive(InconclusiveError):
    pass


class RelationNotFoundWithinCap(InconclusiveError):
    def __init__(self, max_k, degree_cap):
        self.max_k = max_k
        self.degree_cap = degree_cap
        super().__init__(
            "no algebraic relation among derivatives up to order %d at "
            "degree cap %d" % (max_k, degree_cap))


class AlgebraicOverF(PvtError):
    """Degenerate presentation case: y is algebraic over the base field.

    Carries the degenerate presentation so callers can treat it as data.
    """

    def __init__(self, presentation):
        self.presentation = presentation
        super().__init__("element is algebraic over the base field")


class UnsupportedTower(InvalidInputError):
    """The tower violates a structural precondition of the operation."""


class CaseThreeUnsupported(InconclusiveError):
    """Case-3 search needed at a pole the implementation cannot enumerate."""


class BudgetExceeded(PvtError):
    def __init__(self, budget_ms):
        self.budget_ms = budget_ms
        super().__init__("time budget of %d ms exceeded" % budget_ms)
