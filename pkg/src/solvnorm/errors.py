"""Exception types raised across the package."""


class SolvNormError(ValueError):
    pass


class IllegalRank(SolvNormError):
    pass


class LatticeNotBetweenRootAndWeight(SolvNormError):
    pass


class DimensionMismatch(SolvNormError):
    pass


class GeneratorOutsideAmbient(SolvNormError):
    pass


class NotSublattice(SolvNormError):
    pass


class RankMismatch(SolvNormError):
    pass


class AmbientMismatch(SolvNormError):
    pass


class NoConsistentLabeling(SolvNormError):
    pass


class AmbiguousLabeling(AssertionError):
    """A valid (root, label) pair admitted two labelings; should never happen."""


class LabelConflict(SolvNormError):
    pass


class InvalidDatum(SolvNormError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class CenterNotRegularSimple(SolvNormError):
    pass


class RootSystemMismatch(SolvNormError):
    pass


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagreed."""
