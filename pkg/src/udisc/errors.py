"""Exception types shared across the package."""


class UdiscError(Exception):
    """Base class for every error raised by this package."""


class NotSquareError(UdiscError):
    """Matrix is not square."""


class NotHermitianError(UdiscError):
    """Matrix deviates from its adjoint beyond tolerance."""

    def __init__(self, asymmetry: float):
        self.asymmetry = asymmetry
        super().__init__(f"matrix is not Hermitian (relative asymmetry {asymmetry:.3e})")


class NotPsdError(UdiscError):
    """Matrix has an eigenvalue below the allowed negative drift."""

    def __init__(self, worst_eigenvalue: float):
        self.worst_eigenvalue = worst_eigenvalue
        super().__init__(f"matrix is not positive semidefinite (worst eigenvalue {worst_eigenvalue:.6e})")


class TraceNotOneError(UdiscError):
    """Candidate density matrix has trace different from one."""

    def __init__(self, measured_trace: float):
        self.measured_trace = measured_trace
        super().__init__(f"trace must be 1, measured {measured_trace:.12g}")


class NotOrthonormalError(UdiscError):
    """Columns expected to form an orthonormal set do not."""


class DimMismatchError(UdiscError):
    """Operands live in Hilbert spaces of different dimension."""


class CountMismatchError(UdiscError):
    """Number of measurement operators does not match the number of states."""


class EmptySetError(UdiscError):
    """An operation received an empty state list."""


class BadPriorsError(UdiscError):
    """Prior probabilities are invalid (nonpositive or not summing to one)."""


class NotOrthogonalFamilyError(UdiscError):
    """Projector construction requires mutually orthogonal supports."""


class PreconditionNotMetError(UdiscError):
    """The supplied measurement does not unambiguously discriminate the ensemble."""


class ConditionFailsError(UdiscError):
    """Some states cannot be identified: removing them does not shrink the joint support."""

    def __init__(self, failing_states: list):
        self.failing_states = list(failing_states)
        names = ", ".join(str(i) for i in self.failing_states)
        super().__init__(f"identifiability fails for state index(es): {names}")


class DeskScaleExceededError(UdiscError):
    """Problem size exceeds the desk-scale limits of the optimizer."""


class BadRankError(UdiscError):
    """Requested rank is outside [1, dim]."""


class RanksExceedDimError(UdiscError):
    """Requested support ranks cannot fit disjointly in the given dimension."""


class ParseError(UdiscError):
    """Input document is malformed; message carries the offending location."""


class BadFlagsError(UdiscError):
    """Command-line flags are inconsistent or out of range."""
