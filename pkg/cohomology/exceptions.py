"""Errors raised while building local systems and cochain complexes."""


class CohomologyError(Exception):
    """Base class for cohomology errors"""


class UnknownEdgeError(CohomologyError):
    """An edge that is not a 1-simplex of S"""


class InvalidTwistError(CohomologyError):
    """A twist matrix of the wrong size or not invertible over the ring"""


class IncoherentSystemError(CohomologyError):
    """Twists that do not compose along 2-simplices; report holds every failure"""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class GroupActionError(CohomologyError):
    """An action on the coefficients that is not a homomorphism"""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ResourceCapError(CohomologyError):
    """A cochain basis larger than the configured cap"""

    def __init__(self, message, degree=None, size=None):
        super().__init__(message)
        self.degree = degree
        self.size = size
