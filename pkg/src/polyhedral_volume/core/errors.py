"""Exception hierarchy shared by the library and the CLI."""

from typing import Optional


class PolyvolError(ValueError):
    """Base class for every error raised by polyhedral-volume."""


class InputError(PolyvolError):
    """A polyhedron document or settings file could not be parsed."""


class PolyhedronError(PolyvolError):
    """A labeled polyhedron violates one of its structural invariants.

    ``invariant`` names the failed check so callers can report it without
    parsing the message.
    """

    invariant = "polyhedron"

    def __init__(self, message: str, witness: Optional[object] = None):
        super().__init__(message)
        self.witness = witness


class NotPlanarComplex(PolyhedronError):
    invariant = "planar-complex"


class Not3Connected(PolyhedronError):
    invariant = "3-connected"


class BadDegree(PolyhedronError):
    invariant = "vertex-degree"


class LabelOutOfRange(PolyhedronError):
    invariant = "label-range"


class MissingLabel(PolyhedronError):
    invariant = "label-coverage"


class TooFewVertices(PolyvolError):
    """Realizability theorems need more than four vertices."""


class ObtuseLabel(PolyvolError):
    """A label exceeds π/2."""


class IsTriangularPrism(PolyvolError):
    """The generalized checker excludes the triangular prism."""


class NotPrismatic(PolyvolError):
    """A circuit is not prismatic in the polyhedron it is applied to."""


class NotEuclidean4Circuit(PolyvolError):
    """Neighborhoods are only defined around Euclidean prismatic 4-circuits."""


class PreconditionViolated(PolyvolError):
    """An orbifold input fails the standing hypotheses of the decomposition."""

    def __init__(self, message: str, witness: Optional[object] = None):
        super().__init__(message)
        self.witness = witness


class HasPrismatic3Circuit(PolyvolError):
    """Uniformization requires a polyhedron without prismatic 3-circuits."""


class NotCoxeter(PolyvolError):
    """A label is not of the form π/n."""


class DecompositionError(PolyvolError):
    """The decomposition loop exhausted its budget or lost descent."""


class DomainError(PolyvolError):
    """A numeric argument lies outside the domain of a formula."""


class NoSolution(PolyvolError):
    """A bracketing root-find did not find a sign change."""


class HypothesisViolated(PolyvolError):
    """A bound formula was requested outside its hypotheses."""


class OddVertexCount(PolyvolError):
    """Prism regions contain an even number of vertices."""


class NotRealizable(PolyvolError):
    """The input is not realizable, so no bounds are produced."""

    def __init__(self, message: str, report: Optional[object] = None):
        super().__init__(message)
        self.report = report
