# -*- coding: utf-8 -*-

"""Exceptions raised by MCGz2."""

from typing import Optional

__all__ = [
    'MCGz2Error',
    'DimensionError',
    'ConfigurationError',
    'UnknownNameError',
    'ExpressionSyntaxError',
    'ArityError',
    'NotABasisError',
    'ZeroClassError',
    'NotSymplecticError',
    'NotDominatedError',
    'MoveIndexError',
    'ScriptError',
    'CertificateError',
    'VerificationError',
]


class MCGz2Error(Exception):
    """Base class for all errors raised by MCGz2."""


class DimensionError(MCGz2Error, ValueError):
    """Raised when vectors or matrices of incompatible sizes are combined."""


class ConfigurationError(MCGz2Error):
    """Raised when a registry, graph or data file is missing or malformed."""


class UnknownNameError(MCGz2Error, KeyError):
    """Raised when a curve, graph, identity or constructor name does not resolve."""

    def __init__(self, kind: str, name: str) -> None:
        super().__init__(f'unknown {kind}: {name}')
        self.kind = kind
        self.name = name

    def __str__(self) -> str:
        return self.args[0]


class ExpressionSyntaxError(MCGz2Error, ValueError):
    """Raised when an expression does not match the grammar."""

    def __init__(self, message: str, text: str, position: int) -> None:
        super().__init__(f'{message} at position {position} in {text!r}')
        self.text = text
        self.position = position


class ArityError(ExpressionSyntaxError):
    """Raised when a constructor is called with the wrong number of arguments."""


class NotABasisError(MCGz2Error):
    """Raised when a set of classes is supposed to be a basis but is not."""

    def __init__(self, rank: int, dimension: int, names: Optional[list] = None) -> None:
        super().__init__(f'classes span a space of rank {rank}, expected {dimension}')
        self.rank = rank
        self.dimension = dimension
        self.names = names


class ZeroClassError(MCGz2Error, ValueError):
    """Raised when a twist about the zero class is requested."""


class NotSymplecticError(MCGz2Error, ValueError):
    """Raised when a matrix does not preserve the intersection form."""


class NotDominatedError(MCGz2Error):
    """Raised when a graph does not bound the monodromy group of a factorization."""


class MoveIndexError(MCGz2Error, IndexError):
    """Raised when a Hurwitz move index is out of range."""


class ScriptError(MCGz2Error):
    """Raised when an equivalence script is malformed."""


class CertificateError(ScriptError):
    """Raised when a step of an equivalence script fails its check."""

    def __init__(self, step: int, message: str) -> None:
        super().__init__(f'step {step}: {message}')
        self.step = step


class VerificationError(MCGz2Error):
    """Raised when a report contains failed checks."""
