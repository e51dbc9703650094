"""Exception types raised across the package."""


class AfltError(ValueError):
    """Base class for every domain error raised by aflt."""


class NotSquarefree(AfltError):
    pass


class NonPositive(AfltError):
    pass


class DivisionByZero(AfltError, ZeroDivisionError):
    pass


class NotSplit(AfltError):
    pass


class NotRamified(AfltError):
    pass


class NotInert(AfltError):
    pass


class AllZero(AfltError):
    pass


class EvenRadical(AfltError):
    pass


class ExtraUnits(AfltError):
    """d in {1, 3}: the unit group is larger than {+-1}."""


class DegenerateLambda(AfltError):
    pass


class DegenerateRoots(AfltError):
    pass


class NotASolution(AfltError):
    pass


class TrivialSolution(AfltError):
    pass


class EvenCoefficient(AfltError):
    pass


class HypothesisFailure(AfltError):
    pass


class PrecisionFailure(AfltError):
    pass


class SNotSquarefree(AfltError):
    pass
