"""Exception hierarchy shared by every ydforge module.

Errors split into two families so the command line can map them onto exit
codes: ``InputError`` subclasses describe malformed or unusable input (exit 2)
while ``CheckFailed`` subclasses describe a mathematical property that was
tested and found false (exit 1).
"""

from __future__ import annotations

from typing import Any


class YDForgeError(Exception):
    """Base class for every error raised by ydforge."""


class InputError(YDForgeError):
    """The input could not be used (bad shape, bad syntax, bad parameter)."""


class CheckFailed(YDForgeError):
    """A required axiom failed; ``report`` carries the failing checks."""

    def __init__(self, message: str, report: Any = None) -> None:
        super().__init__(message)
        self.report = report


# scalars
class DivisionByZero(InputError, ZeroDivisionError):
    """Inversion of the zero rational function."""


class EvaluationPole(InputError):
    """A substitution sends a denominator to zero."""


class ScalarParseError(InputError):
    """A scalar or element expression could not be parsed."""


# hopf_core
class ShapeError(InputError):
    """Structure tensors have inconsistent sizes or indices."""


class NotConvolutionInvertible(CheckFailed):
    """The convolution inverse does not exist."""


class MissingAntipode(InputError):
    """An operation needs an antipode the data does not provide."""


# presentations
class DegreeCapExceeded(InputError):
    """A product or rewrite would leave the truncated range."""


class NonConfluent(CheckFailed):
    """An overlap ambiguity of the rewriting system does not resolve."""


class MissingGeneratorData(InputError):
    """Coproduct, counit, antipode or R values are missing for a generator."""


class NonTerminating(InputError):
    """Basis enumeration exceeded its bound without closing up."""


# matched_pairs
class BrAxiomsFail(CheckFailed):
    """A braiding fails one of br.1 to br.4."""


class MatchedPairAxiomsFail(CheckFailed):
    """A pair of actions fails the matched pair axioms."""


class PreconditionFail(CheckFailed):
    """A precondition of an equivalence suite is not satisfied."""


# ydbrace
class YDBraceAxiomsFail(CheckFailed):
    """Data fails the Yetter-Drinfeld brace axioms."""


class PiNotCoalgebraIso(CheckFailed):
    """A candidate 1-cocycle is not an invertible coalgebra morphism."""


# catalog
class BadDimension(InputError):
    """A catalog builder received an unsupported size parameter."""
