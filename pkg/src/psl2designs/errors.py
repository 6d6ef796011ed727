"""Exception types shared across the package."""


class BoundExceeded(RuntimeError):
    """A computation would exceed a configured size bound."""


class NotPrime(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class NotASquare(ValueError):
    pass


class UnsupportedQ(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class IndexBoundExceeded(BoundExceeded):
    pass


class NotTransitive(ValueError):
    pass


class NotFaithful(RuntimeError):
    """A coset action has a nontrivial kernel where a faithful one was required."""


class BlockSizeInvalid(ValueError):
    pass


class UnequalBlockSizes(ValueError):
    pass


class InvalidK(ValueError):
    pass


class ConstructionFailed(RuntimeError):
    pass


class PointOnHyperoval(ValueError):
    pass


class CaseConditionViolated(ValueError):
    pass
