"""Exception hierarchy shared by every layer of the workbench."""


class AlgebraError(Exception):
    """Base class for all errors raised by wsprime."""


class InvalidOrder(AlgebraError, ValueError):
    pass


class ZeroRing(AlgebraError, ValueError):
    pass


class NotARing(AlgebraError, ValueError):
    pass


class NotAModule(AlgebraError, ValueError):
    pass


class UnknownElement(AlgebraError, IndexError):
    pass


class RingMismatch(AlgebraError, ValueError):
    pass


class HostMismatch(AlgebraError, ValueError):
    pass


class ForeignIdeal(AlgebraError, ValueError):
    pass


class ForeignSubmodule(AlgebraError, ValueError):
    pass


class EmptySet(AlgebraError, ValueError):
    pass


class ImproperIdeal(AlgebraError, ValueError):
    pass


class ImproperSubmodule(AlgebraError, ValueError):
    pass


class ZeroLocalization(AlgebraError, ValueError):
    pass


class NotApplicable(AlgebraError):
    """A definition's standing hypothesis fails, e.g. (N:_R M) meets S."""


class NotAnIdeal(AlgebraError, ValueError):
    pass


class NotAHomomorphism(AlgebraError, ValueError):
    pass


class IncompatibleAction(AlgebraError, ValueError):
    pass


class BudgetExceeded(AlgebraError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"corpus would contain {count} instances, budget is {budget}")
        self.count = count
        self.budget = budget


class UnknownTheorem(AlgebraError, KeyError):
    pass


class UnknownPredicate(AlgebraError, KeyError):
    pass


class CoverageError(AlgebraError):
    """The theorem ledger and the registered checks disagree."""
