"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or contract-violating input.

    ``path`` is a JSON pointer into the offending document when the error
    comes from a loaded file, otherwise ``None``.
    """

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message if path is None else f"{message} (at {path})")
        self.message = message
        self.path = path


class CapExceeded(InputError):
    """A configured size cap would be exceeded; the request is refused."""


class ConstructionError(RuntimeError):
    """A construction could not be completed; ``step`` names where it broke."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message if step is None else f"step {step}: {message}")
        self.step = step
