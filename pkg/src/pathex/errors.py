"""Exception hierarchy for pathex.

Every error raised on purpose by this package derives from PathexError so
callers (in particular the CLI) can map failures to exit codes without
matching on message strings.
"""


class PathexError(Exception):
    """Base class for all pathex errors."""


class InvalidGraphError(PathexError):
    """A graph violates its structural invariants (labels, loops, duplicates)."""


class InvalidVertexError(PathexError):
    """A vertex label lies outside [1, n]."""


class InvalidPatternError(PathexError):
    """A pattern specification is malformed (e.g. a path on fewer than 2 vertices)."""


class InvalidAnchorError(PathexError):
    """Anchored-pair anchors coincide or fall outside the host vertex set."""


class InvalidMeasureError(PathexError):
    """An edge measure violates its invariants (negative weight, bad labels)."""


class NonProbabilityMeasureError(InvalidMeasureError):
    """An operation requiring total mass 1 received a measure of different mass."""


class DegenerateMeasureError(InvalidMeasureError):
    """An operation requiring nonempty support received the zero measure."""


class InvalidSpecError(PathexError):
    """A construction specification is infeasible (e.g. blow-up with n < 2m)."""


class ResourceLimitError(PathexError):
    """A request exceeds the configured size caps for exhaustive search."""


class UsageError(PathexError):
    """A manifest or CLI invocation is malformed."""
