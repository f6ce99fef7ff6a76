"""Error hierarchy shared by the engine, tool API, and CLI.

Every error carries a stable ``code`` string that is surfaced verbatim in
tool results and over the wire protocol.
"""


class SimError(Exception):
    code = "internal_error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConfigError(SimError):
    code = "config_error"


class SchemaError(SimError):
    code = "schema_error"


class ValidationError(SimError):
    code = "validation_error"


class CalibrationError(SimError):
    code = "calibration_error"


class UnknownReferenceError(SimError):
    code = "unknown_reference"


class ArgumentError(SimError):
    code = "bad_arguments"


class FundsError(SimError):
    code = "insufficient_funds"


class GateError(SimError):
    code = "phase_gate"


class UnknownToolError(SimError):
    code = "unknown_tool"


class InvalidActionError(SimError):
    code = "invalid_action"


class DisabledError(SimError):
    code = "news_disabled"


class ProtocolError(SimError):
    code = "protocol_error"
