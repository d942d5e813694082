"""Errors raised by the exact algebra layer."""


class AlgebraError(Exception):
    """Base class for algebra errors"""


class InvalidOrderError(AlgebraError):
    """A group order that is not a positive integer"""


class GroupAxiomError(AlgebraError):
    """A multiplication table that does not describe a group"""


class ShapeError(AlgebraError):
    """Matrix dimensions or rings that do not fit together"""


class NotAComplexError(AlgebraError):
    """A pair of differentials whose composite is not zero"""

    def __init__(self, message, location=None, value=None):
        super().__init__(message)
        self.location = location
        self.value = value
