"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class SpmError(Exception):
    exit_code = 1


class ParseError(SpmError):
    """Malformed edge-list input."""

    exit_code = 1

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphError(SpmError):
    """A graph is unsuitable for the requested operation."""

    exit_code = 1


class NotStronglyConnectedError(GraphError):
    exit_code = 2

    def __init__(self, n_components: int):
        self.n_components = n_components
        super().__init__(
            f"graph is not strongly connected ({n_components} strongly connected components)"
        )


class PeriodicGraphError(GraphError):
    exit_code = 3

    def __init__(self, period: int):
        self.period = period
        super().__init__(f"graph is periodic: period = {period}")


class ConvergenceError(SpmError):
    exit_code = 4
