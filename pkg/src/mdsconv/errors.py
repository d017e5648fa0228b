"""Exception hierarchy. Every library error derives from MdsConvError."""


class MdsConvError(Exception):
    pass


# -- field construction and arithmetic --------------------------------------

class NotPrime(MdsConvError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class ReducibleModulus(MdsConvError):
    pass


class DegreeMismatch(MdsConvError):
    pass


class DivisionByZero(MdsConvError, ZeroDivisionError):
    pass


class FieldMismatch(MdsConvError):
    pass


class ZeroElement(MdsConvError):
    pass


class FactorizationUnavailable(MdsConvError):
    pass


class OrderNotDividing(MdsConvError):
    pass


class EvenOrderField(MdsConvError):
    pass


# -- matrices ----------------------------------------------------------------

class NonSquareSelection(MdsConvError):
    pass


class IndexOutOfRange(MdsConvError, IndexError):
    pass


class ShapeError(MdsConvError):
    pass


class DimensionMismatch(MdsConvError):
    pass


class BudgetExceeded(MdsConvError):
    def __init__(self, count, budget, hint=""):
        msg = f"work estimate {count} exceeds budget {budget}"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)
        self.count = count
        self.budget = budget


# -- polynomial generator matrices -------------------------------------------

class ZeroColumn(MdsConvError):
    pass


class NotColumnReduced(MdsConvError):
    pass


class RankDeficient(MdsConvError):
    pass


# -- constructions and parameters --------------------------------------------

class ParamDomain(MdsConvError):
    pass


class NBoundViolated(MdsConvError):
    pass


class FieldTooSmall(MdsConvError):
    pass


class EvenQ(MdsConvError):
    pass
