"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: InputError -> 2, NumericError -> 3,
InvariantError -> 4.
"""


class CslcsError(Exception):
    pass


class InputError(CslcsError, ValueError):
    """Malformed or out-of-contract input."""


class SizeLimitError(InputError):
    """Input exceeds a guard against exponential or quadratic blowup."""


class NumericError(CslcsError, RuntimeError):
    """Numerical failure (non-convergence, invalid flux, ...)."""


class SolverError(NumericError):
    """The fitting solver failed to produce an admissible solution."""


class InvariantError(CslcsError, AssertionError):
    """An exact structural invariant was violated."""
