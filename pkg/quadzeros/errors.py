"""
Exception hierarchy for the quadzeros toolkit.

Every error carries the exit code the command-line front end reports for it.
"""


class QuadZerosError(Exception):
    """Base class for all library errors"""

    exit_code = 4


class InvalidParams(QuadZerosError):
    """Parameters violate a documented hypothesis"""

    exit_code = 2


class ConditionViolated(InvalidParams):
    """The reality condition 1+a+b >= 0 and 9-27a+b >= 0 fails"""


class PreconditionFailed(InvalidParams):
    """An operation was called outside its parameter regime"""


class ZeroPolynomial(QuadZerosError):
    pass


class DegenerateLeadingCoefficient(QuadZerosError):
    """Leading coefficient vanishes at working precision; deflate first"""


class RootAccuracyError(QuadZerosError):
    """A computed root misses the declared residual bound"""


class NotIsolating(QuadZerosError):
    """Interval endpoints do not bracket a single sign change"""


class NoRootInRegion(QuadZerosError):
    """The endpoint cubic has no unique real zero with |zeta| >= 1"""


class BranchAmbiguity(QuadZerosError):
    """f* does not have exactly one real zero on (-1, 1)"""


class AsymptoteProximity(QuadZerosError):
    """theta sits on the vertical asymptote where 1/zeta vanishes"""


class FactorizationMismatch(QuadZerosError):
    """tau e^{+-i theta} and zeta tau are not the zeros of D(t, z)"""


class WitnessSearchFailed(QuadZerosError):
    pass


class UniqueRootViolation(QuadZerosError):
    """The discriminant polynomial does not have a unique real zero"""
