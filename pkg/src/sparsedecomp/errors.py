"""Exception hierarchy shared across the toolkit.

The CLI maps these onto process exit codes: input problems exit 2,
infeasible or unsupported instances exit 1, and internal diagnostics
(invariant or certification failures that should never occur) exit 3.
"""


class SparseDecompError(Exception):
    """Base class for all toolkit errors."""


class InputFormatError(SparseDecompError):
    """Malformed graph file, fraction string, or certificate document."""


class InfeasibleError(SparseDecompError):
    """The requested object provably does not exist for this input."""


class HypothesisError(InfeasibleError):
    """Density hypotheses of the decomposition driver are not met."""


class UnsupportedCaseError(InfeasibleError):
    """The single documented input family this toolkit refuses to color."""


class DiagnosticError(SparseDecompError):
    """Internal invariant failure; indicates a bug, not a bad input."""


class CertificationError(DiagnosticError):
    """A produced decomposition failed its independent density check.

    Carries the offending parts so the failure can be analyzed.
    """

    def __init__(self, message, *, violating=None, decomposition=None):
        super().__init__(message)
        self.violating = violating
        self.decomposition = decomposition


class VerificationError(DiagnosticError):
    """A produced edge coloring failed its pattern-freeness check."""


class OptimizerBudgetError(DiagnosticError):
    """Local search exceeded its proven move bound."""


class GoodArcNotFoundError(DiagnosticError):
    """A terminal cycle offered no root candidate with disjoint fractional
    neighborhoods; carries the component and the common-neighbor witness."""

    def __init__(self, message, *, component=None, star_center=None):
        super().__init__(message)
        self.component = component
        self.star_center = star_center


class UnboundedFlowError(SparseDecompError):
    """The flow network admits a source-sink path of unbounded capacity."""
