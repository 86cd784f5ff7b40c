"""Domain errors.

Every error carries a short ``name`` (used as the ``error`` field of the CLI's
JSON error object) and a ``context`` dict with the numbers that triggered it.
"""


class RayBracketError(Exception):
    name = "RayBracketError"

    def __init__(self, detail, **context):
        super().__init__(detail)
        self.detail = detail
        self.context = context

    def to_dict(self):
        return {"error": self.name, "detail": self.detail, "context": dict(self.context)}


class DeterminantViolation(RayBracketError, ValueError):
    """Sum-determinant AD + BC (or M11 M22 + M12 M21) is not unity."""

    name = "DeterminantViolation"

    def __init__(self, residual, tol, **context):
        super().__init__(
            f"sum-determinant differs from 1 by {residual:.3e} (tolerance {tol:.1e})",
            residual=residual,
            tolerance=tol,
            **context,
        )
        self.residual = residual


class ImageAtInfinity(RayBracketError, ArithmeticError):
    """The imaging denominator M12 S - M22 vanishes."""

    name = "ImageAtInfinity"

    def __init__(self, denominator, S, **context):
        super().__init__(
            f"image at infinity: M12*S - M22 = {denominator!r} at S = {S!r}",
            denominator=denominator,
            S=S,
            **context,
        )


class StencilNearSingularity(RayBracketError, ArithmeticError):
    name = "StencilNearSingularity"


class NonFiniteResult(RayBracketError, ArithmeticError):
    name = "NonFiniteResult"


class GradeOutOfRange(RayBracketError, ValueError):
    name = "GradeOutOfRange"


class DslSyntaxError(RayBracketError, SyntaxError):
    """Parse failure at a 1-based character ``position``."""

    name = "SyntaxError"

    def __init__(self, message, position, expected=()):
        expected = sorted(set(expected))
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected one of: {', '.join(expected)})"
        super().__init__(detail, position=position, expected=expected)
        self.position = position
        self.expected = expected


class UnboundVariable(RayBracketError, NameError):
    name = "UnboundVariable"


class UsageError(RayBracketError, ValueError):
    name = "UsageError"
