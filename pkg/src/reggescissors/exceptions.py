"""Exception types shared across the package."""


class GeometryDomainError(ValueError):
    """An input violates a geometric precondition (range, class, angle sum)."""


class DegenerateSystemError(ArithmeticError):
    """The octahedron angle system is too degenerate to solve reliably."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class NonUnitRootError(DegenerateSystemError):
    """A holonomy root left the unit circle beyond tolerance (no real angle offset)."""


class QuadratureError(ArithmeticError):
    """Numerical integration failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved: float = float("nan")):
        super().__init__(message)
        self.achieved = achieved
