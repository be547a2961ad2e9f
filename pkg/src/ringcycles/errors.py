"""Exception hierarchy shared by every module."""


class RingCyclesError(Exception):
    """Base class for all library errors."""


class DescriptorMismatchError(RingCyclesError):
    """Operands live in different rings."""


class NonUnitError(RingCyclesError):
    def __init__(self, valuation, message=None):
        self.valuation = valuation
        super().__init__(message or f"element is not a unit (valuation {valuation})")


class UnsupportedRingError(RingCyclesError):
    """Operation needs a field but the ring has k > 1."""


class ZeroRootError(RingCyclesError):
    """Polynomial has a zero constant term modulo p."""


class MultipleRootError(RingCyclesError):
    """Newton lifting was asked to lift a repeated root."""


class CapacityError(RingCyclesError):
    def __init__(self, required, budget, what="states"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} required: {required}, budget: {budget}")


class BoundExhaustedError(RingCyclesError):
    def __init__(self, bound):
        self.bound = bound
        super().__init__(f"no order found up to bound {bound}")


class OutOfTheoryError(RingCyclesError):
    """Input violates a hypothesis the theory needs."""


class OutOfTableError(OutOfTheoryError):
    """Cat parameters outside the range the period table covers (p <= 3)."""


class UndecidedError(RingCyclesError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"threshold search reached cap {cap} without a stabilization certificate")


class TheoryViolationError(RingCyclesError):
    """A theoretical prediction was contradicted by direct computation."""


class ParseError(RingCyclesError, ValueError):
    pass
