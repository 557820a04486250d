"""Exception hierarchy shared by every stage of the pipeline.

Errors fall into three families that the command line maps onto exit codes:

* ``InputError`` -- the document could not be turned into a simple graph (exit 3);
* ``NotRepresentable`` -- the graph is valid but has no realization in the
  requested mode (exit 2, the ``reason`` attribute names the obstruction);
* ``InternalError`` -- a construction produced something its own validator
  rejected.  These indicate bugs rather than properties of the input.
"""

from __future__ import annotations


class OrthoError(Exception):
    """Base class for all package errors."""

    reason = "Error"


class InputError(OrthoError):
    reason = "InvalidInput"


class MalformedInput(InputError):
    reason = "MalformedInput"


class SelfLoop(InputError):
    reason = "SelfLoop"


class DuplicateEdge(InputError):
    reason = "DuplicateEdge"


class NotRepresentable(OrthoError):
    reason = "NotRepresentable"


class NotConnected(NotRepresentable):
    reason = "NotConnected"


class NotCubic(NotRepresentable):
    reason = "NotCubic"


class NotBipartite(NotRepresentable):
    reason = "NotBipartite"

    def __init__(self, message: str, witness: list[int] | None = None) -> None:
        super().__init__(message)
        self.witness = witness or []


class NonPlanar(NotRepresentable):
    reason = "NonPlanar"


class NotPolyhedral(NotRepresentable):
    reason = "NotPolyhedral"


class NotBiconnected(NotPolyhedral):
    reason = "NotBiconnected"


class FaceColoringFailed(NotPolyhedral):
    reason = "FaceColoringFailed"


class PNodePresent(NotRepresentable):
    reason = "PNode"


class EvenParityTriangle(NotRepresentable):
    reason = "EvenParityTriangle"

    def __init__(self, message: str, triangle: tuple[int, int, int] | None = None) -> None:
        super().__init__(message)
        self.triangle = triangle


class NotSeparating(OrthoError):
    reason = "NotSeparating"


class NotBaseCase(OrthoError):
    reason = "NotBaseCase"


class NotApplicable(OrthoError):
    reason = "NotApplicable"


class TooLarge(OrthoError):
    reason = "TooLarge"


class NotCornerMode(OrthoError):
    reason = "NotCornerMode"


class InternalError(OrthoError):
    reason = "InternalError"


class InternalInvariantViolation(InternalError):
    reason = "InternalInvariantViolation"


class CoverInvalid(InternalError):
    reason = "CoverInvalid"


class CycleDetected(InternalError):
    reason = "CycleDetected"


class HingeMismatch(InternalError):
    reason = "HingeMismatch"
