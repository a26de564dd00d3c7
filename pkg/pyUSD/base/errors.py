class USDError(Exception):
    """Base class of all errors raised by pyUSD"""


class LinearDependenceError(USDError, ValueError):
    """Signal states are (numerically) linearly dependent.

    Linearly dependent signals cannot be distinguished unambiguously, the
    dual vectors do not exist.
    """

    def __init__(self, gram_volume: float, tolerance: float):
        self.gram_volume = gram_volume
        self.tolerance = tolerance
        super().__init__(
            f"States are linearly dependent: Gram volume T={gram_volume:.3e} "
            f"is below tolerance {tolerance:.1e}."
        )


class InfeasibleCoefficientsError(USDError, ValueError):
    """Coefficients leave the inconclusive operator with a negative eigenvalue"""

    def __init__(self, min_eigenvalue: float, tolerance: float):
        self.min_eigenvalue = min_eigenvalue
        self.tolerance = tolerance
        super().__init__(
            f"Inconclusive operator is not positive semi-definite: minimum "
            f"eigenvalue {min_eigenvalue:.3e} < -{tolerance:.1e}."
        )


class InternalConsistencyError(USDError, RuntimeError):
    """Two independent evaluations of the same quantity disagree"""


class UnsupportedDimensionError(USDError, ValueError):
    """Operation is only defined for a specific number of signals"""

    def __init__(self, operation: str, expected: int, given: int):
        self.expected = expected
        self.given = given
        super().__init__(
            f"'{operation}' requires N={expected} signals, got N={given}."
        )
