class UsageError(ValueError):
    """Bad arguments: out-of-range index, h < 2, empty input, and so on."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
