"""Exception types raised across the package."""


class ZastavaError(Exception):
    pass


class UnsupportedType(ZastavaError):
    pass


class NegativeCoordinate(ZastavaError):
    pass


class NonExpandable(ZastavaError):
    pass


class InternalNonFactored(ZastavaError):
    pass


class GradingMismatch(ZastavaError):
    pass


class SlotOverflow(ZastavaError):
    pass


class NotHypersurface(ZastavaError):
    pass


class InhomogeneousRelation(ZastavaError):
    pass


class InexactDivision(ZastavaError):
    pass


class NotInOrbit(ZastavaError):
    pass


class NormalizationFailure(ZastavaError):
    pass


class SchemaError(ZastavaError):
    pass


class NonInvariantEigenvalue(ZastavaError):
    pass


class BoxExceeded(ZastavaError):
    pass


class NotTriangular(ZastavaError):
    pass


class SingularCoefficient(ZastavaError):
    pass


class InconsistentSystem(ZastavaError):
    pass
