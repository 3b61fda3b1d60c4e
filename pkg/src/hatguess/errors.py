"""Exception types shared across the package.

Timeouts and "not found" results are *outcomes*, returned as values by the
operations that produce them; exceptions are reserved for misuse (bad
parameters, malformed files) and for refusals (work budget exceeded before
a computation is even attempted).
"""


class ParameterError(ValueError):
    """Invalid argument: violated precondition, bad generator spec, etc."""


class UnsupportedModeError(ParameterError):
    """Operation requires the other graph mode (directed vs undirected)."""


class StrategyMismatchError(ParameterError):
    """Strategy shape (arity, q, neighbor lists) does not fit the graph."""


class FormatError(ValueError):
    """Malformed graph / matrix / strategy file."""


class WorkBudgetError(RuntimeError):
    """Predicted work exceeds the configured ceiling; refusing to start."""


class NotReducibleError(RuntimeError):
    """Pendant-vertex reduction found conflicting guesses: the input
    strategy does not win, so no reduced strategy is derivable."""
