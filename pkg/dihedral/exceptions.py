"""Error hierarchy shared by the computation modules, the commands and the API.

Every error carries the process exit status the management commands use:
2 for unreadable or inconsistent input, 3 when the input is well formed
but violates a mathematical precondition.
"""


class DihedralError(Exception):
    exit_code = 1

    def __init__(self, message):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return self.message


class InputError(DihedralError):
    exit_code = 2


class DiagramFormatError(InputError):
    pass


class SchemaError(InputError):
    pass


class UnknownCurveError(InputError):
    pass


class UnknownLetterError(InputError):
    pass


class MissingBlockError(InputError):
    pass


class PreconditionError(DihedralError):
    exit_code = 3


class TrivialColoringError(PreconditionError):
    def __init__(self, message="coloring trivial"):
        super().__init__(message)


class InvalidColoringError(PreconditionError):
    pass


class AnchorDataError(PreconditionError):
    pass


class InvalidBridgeData(PreconditionError):
    pass


class NotSurjectiveError(PreconditionError):
    def __init__(self, message="not surjective"):
        super().__init__(message)


class EndpointColorMismatch(PreconditionError):
    pass


class NonPrimitiveClassError(PreconditionError):
    pass


class CoverHomologyError(PreconditionError):
    pass
