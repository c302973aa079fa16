"""Exception hierarchy shared by the library and the command-line tool."""


class MaxAlgebraError(Exception):
    """Base class for all errors raised by :mod:`maxeig`."""


class DimensionError(MaxAlgebraError, ValueError):
    """Operands have incompatible shapes."""


class InvalidEntryError(MaxAlgebraError, ValueError):
    """A matrix or vector entry is negative, NaN or infinite."""


class JumpLimitError(MaxAlgebraError):
    """Jump enumeration was requested for a matrix larger than the limit."""

    def __init__(self, n, limit):
        self.n = n
        self.limit = limit
        super().__init__(
            f"jump enumeration needs n! permutations; n={n} exceeds "
            f"jump_limit={limit} (use the karp method for larger matrices)"
        )


class ConvergenceError(MaxAlgebraError):
    """The power iteration did not become periodic within ``max_iter`` steps."""

    def __init__(self, message, last_iterate=None, iterations=0):
        self.last_iterate = last_iterate
        self.iterations = iterations
        super().__init__(message)


class EigenvectorError(MaxAlgebraError):
    """A constructed eigenvector failed the eigen-equation check."""


class ReciprocityError(MaxAlgebraError, ValueError):
    """Matrix is not symmetrically reciprocal.

    ``pair`` holds the 0-based indices of the worst-violating entry and
    ``product`` the value of ``a_ij * a_ji`` there.
    """

    def __init__(self, pair, product):
        self.pair = pair
        self.product = product
        i, j = pair
        super().__init__(
            f"a[{i},{j}] * a[{j},{i}] = {product:.12g}, expected 1"
        )


class ParseError(MaxAlgebraError, ValueError):
    """A matrix file could not be parsed."""
