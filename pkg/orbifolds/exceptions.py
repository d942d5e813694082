"""Errors raised while loading, assembling and walking orbifold complexes."""


class OrbifoldError(Exception):
    """Base class for orbifold errors"""


class DocumentFormatError(OrbifoldError):
    """A document that does not parse or does not match its schema"""

    def __init__(self, message, line=None, column=None, path=None, problems=None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.path = path
        self.problems = problems or []


class ComplexValidationError(OrbifoldError):
    """A structurally invalid complex; key names the offending entry"""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class UnknownSimplexError(OrbifoldError):
    """A top-simplex identifier the complex does not have"""


class MissingMuError(OrbifoldError):
    """A mu key that is neither supplied nor implied"""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class NoSimplexError(OrbifoldError):
    """Top simplices with empty common intersection"""


class ChartInconsistencyError(OrbifoldError):
    """Chart data violating effectiveness, equivariance or labelling"""


class DerivationError(OrbifoldError):
    """A mu derivation whose intermediate element has no preimage"""


class ChainMismatchError(OrbifoldError):
    """Consecutive derivation steps whose groups do not line up"""
