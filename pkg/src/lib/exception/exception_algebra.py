class UnsafeException(Exception):
    def __init__(self, message, code=3):
        super().__init__(message)
        self.message = message
        self.code = code

    def __str__(self):
        return f"UnsafeException: {self.code} - {self.message}"


class SafeException(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.message = message
        self.code = code

    def __str__(self):
        return f"{type(self).__name__}: {self.code} - {self.message}"


class MalformedInputException(SafeException):
    def __init__(self, message, position=None, code=2):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message, code)
        self.position = position


class UnsupportedArityException(SafeException):
    def __init__(self, message, code=2):
        super().__init__(message, code)


class DomainMismatchException(SafeException):
    def __init__(self, message, code=2):
        super().__init__(message, code)


class DimensionMismatchException(SafeException):
    def __init__(self, message, code=2):
        super().__init__(message, code)


class LatticeException(SafeException):
    def __init__(self, message, code=2):
        super().__init__(message, code)


class AuditFailureException(SafeException):
    """A named pipeline check did not produce the expected value."""

    def __init__(self, check: str, expected=None, actual=None, code=1):
        message = f"check '{check}' failed"
        if expected is not None:
            message += f": expected {expected}, got {actual}"
        elif actual:
            message += f": {actual}"
        super().__init__(message, code)
        self.check = check
        self.expected = expected
        self.actual = actual
