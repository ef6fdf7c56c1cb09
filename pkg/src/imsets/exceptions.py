"""Exception hierarchy shared by all modules."""


class ImsetError(Exception):
    """Base class for domain errors (mapped to exit code 1 by the CLI)."""


class InvalidTripletError(ImsetError, ValueError):
    pass


class InvalidElementaryError(ImsetError, ValueError):
    pass


class GroundMismatchError(ImsetError, ValueError):
    pass


class NotInFiberError(ImsetError, ValueError):
    """A coefficient vector or grid is not a representation of its triplet."""


class InvalidPermutationError(ImsetError, ValueError):
    pass


class InapplicableMoveError(ImsetError, ValueError):
    pass


class IneligibleRiftError(ImsetError, ValueError):
    pass


class ClassificationError(ImsetError, RuntimeError):
    """A point of a supposedly valid grid fits none of the corner/edge/inner cases."""


class WorkLimitExceeded(ImsetError, RuntimeError):
    pass


class NonTerminationError(ImsetError, RuntimeError):
    pass
