"""Exception types shared across the package."""

from __future__ import annotations


class CADError(Exception):
    """Base class for all errors raised by subcad."""


class ZeroPolynomial(CADError, ValueError):
    pass


class DegreeTooLow(CADError, ValueError):
    pass


class IdenticallyZero(CADError):
    """A polynomial vanished identically after substituting a sample point."""


class NotWellOriented(CADError):
    """Raised under the ``err`` failure policy when nullification occurs."""

    def __init__(self, index, poly_text: str):
        self.index = tuple(index)
        self.poly_text = poly_text
        super().__init__(
            "The input is not well-oriented (nullification of %s on cell %s)"
            % (poly_text, list(self.index))
        )


class ECNotInMainVariable(CADError, ValueError):
    pass


class ProvenanceMismatch(CADError, ValueError):
    pass


class ParseError(CADError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariable(ParseError):
    pass


class MalformedEC(ParseError):
    pass
