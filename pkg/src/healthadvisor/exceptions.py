class HealthAdvisorError(Exception):
    pass


class DomainError(HealthAdvisorError, ValueError):
    """An operation was called outside its domain (empty data, unknown attribute, ...)."""


class ValidationError(HealthAdvisorError, ValueError):
    """An input document failed validation.

    ``line`` is the 1-based line number in the source file when known.
    """

    def __init__(self, message, *, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)
