"""Exception hierarchy for momentreg."""


class MomentRegError(Exception):
    """Base class for all errors raised by the package."""


class InputError(MomentRegError, ValueError):
    """Invalid argument: empty bag, non-finite value, bad degree count, ..."""


class SpanError(MomentRegError, ArithmeticError):
    """The input state has no component inside the fitted model's span."""

    def __init__(self, message="state outside model span"):
        super().__init__(message)


class IndefiniteMatrixError(MomentRegError, ArithmeticError):
    """A matrix required to be positive definite has a negative eigenvalue."""

    def __init__(self, eigenvalue, index, scale):
        self.eigenvalue = eigenvalue
        self.index = index
        super().__init__(
            f"matrix is indefinite: eigenvalue #{index} = {eigenvalue:.6g} "
            f"(largest magnitude {scale:.6g})"
        )


class ConvergenceError(MomentRegError, ArithmeticError):
    """Iterative diagonalization exhausted its sweep budget."""

    def __init__(self, sweeps, residual):
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(relative off-diagonal norm {residual:.3e})"
        )


class FormatError(MomentRegError, ValueError):
    """Malformed dataset or model file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
