"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: usage problems (bad parameters) exit 1,
data problems (malformed inputs, degenerate labels) exit 2, anything else
exit 3.
"""


class LinkbenchError(Exception):
    """Base class for all library errors."""


class MalformedInputError(LinkbenchError):
    """Input data violates a structural precondition (bad ids, shapes, lengths)."""


class InvalidPairError(LinkbenchError):
    """A node pair is unusable, e.g. u == v."""


class InvalidParameterError(LinkbenchError):
    """A hyperparameter or configuration value is out of its allowed range."""


class DegenerateLabelsError(LinkbenchError):
    """An operation requiring both classes received a single-class input."""


class DegenerateFoldError(DegenerateLabelsError):
    """A cross-validation fold (or its complement) is missing a class."""


class SamplingExhaustedError(LinkbenchError):
    """Negative sampling cannot produce the requested number of non-edges."""


class GraphTooSmallError(LinkbenchError):
    """The graph has too few edges for the requested split."""
