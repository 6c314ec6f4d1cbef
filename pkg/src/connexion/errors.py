"""Exception classes.

``InputError`` marks malformed input (CLI exit code 2); ``DomainError`` marks
a well-formed request with no mathematical answer (CLI exit code 1).
"""


class ConnexionError(Exception):
    pass


class InputError(ConnexionError, ValueError):
    pass


class SingularCurveError(InputError):
    pass


class DomainError(ConnexionError):
    pass


class CurveMismatchError(DomainError):
    pass


class NonRationalSupportError(DomainError):
    """A zero or pole lies at a point that is not defined over Q."""

    def __init__(self, factor, what: str = "support"):
        self.factor = factor
        super().__init__(f"{what} meets non-rational points over the factor {factor}")


class HigherOrderPoleError(DomainError):
    def __init__(self, point, order: int):
        self.point, self.order = point, order
        super().__init__(f"pole of order {order} at {point}")


class NonIntegerResidueError(DomainError):
    def __init__(self, point, residue):
        self.point, self.residue = point, residue
        super().__init__(f"non-integer residue {residue} at {point}")


class NotRegularError(DomainError):
    pass


class NotPrincipalError(DomainError):
    def __init__(self, divisor, obstruction=None):
        self.divisor, self.obstruction = divisor, obstruction
        msg = f"divisor {divisor} is not principal"
        if obstruction is not None:
            msg += f" (group-law sum {obstruction})"
        super().__init__(msg)


class NotUnitIdealError(DomainError):
    pass


class SolverError(DomainError):
    pass


class QuadratureError(DomainError):
    pass


class ClearanceError(QuadratureError):
    pass
