"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for malformed or inconsistent input, 3 for a well-formed request that has
no mathematical answer (zero vector, degenerate plane, conformal forms asked
for a witness, ...).
"""


class RigidityError(ValueError):
    exit_code = 3


class InputError(RigidityError):
    exit_code = 2


class NonFiniteEntry(InputError):
    pass


class NotSquare(InputError):
    pass


class NotHermitian(InputError):
    pass


class NotPositiveDefinite(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class FieldMismatch(InputError):
    pass


class ThetaOutOfRange(InputError):
    pass


class EmptySample(InputError):
    pass


class PointValidationError(InputError):
    """A per-point metric matrix failed validation; ``index``/``point`` name it."""

    def __init__(self, index, point, cause):
        self.index = index
        self.point = tuple(float(t) for t in point)
        self.cause = cause
        super().__init__(f"point #{index} {self.point}: {type(cause).__name__}: {cause}")


class SchemaError(InputError):
    pass


class ZeroVectorAngle(RigidityError):
    pass


class ZeroVector(RigidityError):
    pass


class ZeroInnerProductArg(RigidityError):
    pass


class KahlerDegenerate(RigidityError):
    pass


class KindRequiresComplex(RigidityError):
    pass


class InternalInconsistency(RigidityError):
    pass


class FormsAreConformal(RigidityError):
    pass


class DimensionTooSmall(RigidityError):
    pass


class NotOrthogonalIn1(RigidityError):
    pass
