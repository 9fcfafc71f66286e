"""Exception types shared across the package."""


class ProbeCutError(Exception):
    """Base class for all errors raised by this package."""


class InvalidEdge(ProbeCutError):
    """An edge references a missing vertex or is a self-loop."""


class UnsupportedPattern(ProbeCutError):
    """Pattern search only supports patterns on at most 8 vertices."""


class InvalidCertificate(ProbeCutError):
    """A probe certificate violates its invariants against the instance."""


class InvalidInstance(ProbeCutError):
    """A partitioned probe instance violates its invariants."""


class NotConnected(ProbeCutError):
    """Operation requires a connected graph."""


class NotACograph(ProbeCutError):
    """Operation requires a P4-free input."""


class NotCubic(ProbeCutError):
    """Operation requires a 3-regular input."""


class NoEdges(ProbeCutError):
    """Operation requires at least one edge."""


class NotBipartite(ProbeCutError):
    """Operation requires a bipartite graph with the supplied class."""


class GenerationTimeout(ProbeCutError):
    """Rejection sampling exhausted its attempt budget."""


class PartialColouring(ProbeCutError):
    """A total colouring was required but some vertex is uncoloured."""


class PreconditionViolation(ProbeCutError):
    """A completion routine was called outside its contract."""


class UnsupportedD(ProbeCutError):
    """The requested d is outside the solver's range."""


class WrongCase(ProbeCutError):
    """Non-probe classification requires at least three probe components."""


class StructureViolation(ProbeCutError):
    """The instance lacks structure promised by its declared class."""


class OracleScaleExceeded(ProbeCutError):
    """Input is above the brute-force oracle's scale guard."""


class InvalidSatInstance(ProbeCutError):
    """A SAT instance fails the restricted occurrence/shape conditions."""


class ParseError(ProbeCutError):
    """Malformed instance text."""
