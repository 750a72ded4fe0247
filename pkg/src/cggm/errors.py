"""Exception hierarchy shared across the package."""


class CggmError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraphError(CggmError):
    """Malformed colored graph (bad partitions, self-loops, out-of-range vertices)."""


class NotAutomorphismError(CggmError):
    """A supplied permutation does not preserve the adjacency structure."""


class GroupOrderCapError(CggmError):
    """Group enumeration exceeded the cap; generous transitivity is unknown."""


class NoCpeoError(CggmError):
    """The coloring admits no color perfect elimination ordering."""


class NotPeoError(CggmError):
    """A supplied vertex ordering is not a perfect elimination ordering."""


class ColorCountCapError(CggmError):
    """Too many vertex color classes for the exhaustive cpeo search."""


class NotCerError(CggmError):
    """The colored graph is not (at least) color elimination-regular."""


class SpaceStructureError(CggmError):
    """Basis violates the block direct-sum structure or spans no identity."""


class SpanResidualError(CggmError):
    """A matrix that must lie in the space has a nonzero span residual."""


class SimpleSpectrumError(CggmError):
    """Random Method could not find a generic element with simple spectrum."""


class CommutativityError(CggmError):
    """Block algebra is not commutative where commutativity is required."""


class UnstableFrameError(CggmError):
    """Two independent generic elements produced incompatible Jordan frames."""


class FrameVerificationError(CggmError):
    """A Jordan frame fails idempotency/orthogonality/completeness checks."""


class ProjectionFactorError(CggmError):
    """Matrix passed as an orthogonal projection has spectrum far from {0, 1}."""


class StructureConstantError(CggmError):
    """Structure constants are inconsistent (counting identity violated)."""


class NotPositiveDefiniteError(CggmError):
    """A matrix required to be (strictly) positive definite is not."""


class DivergenceError(CggmError):
    """Integral parameters below the convergence threshold."""

    def __init__(self, s, threshold):
        super().__init__(
            f"integral diverges: s = {s} is not above the threshold {threshold}"
        )
        self.s = s
        self.threshold = threshold


class ReconstructionError(CggmError):
    """Generalized Cholesky factor fails to reconstruct its input to tolerance."""


class OracleError(CggmError):
    """Numerical oracle failed (bad proposal, dimension cap, divergence)."""


class SrgParameterError(CggmError):
    """Parameters do not describe a primitive strongly regular graph."""
