"""Exception types raised across the package."""


class ParseError(ValueError):
    """A data file could not be parsed; the message names file and line."""


class BinningError(ValueError):
    """A quantization dictionary could not be built (degenerate data)."""


class NumericError(RuntimeError):
    """A numeric routine failed: divergence, non-finite state, or no convergence."""
