/** Typed errors mirroring every error code the simulator can send. */

export interface WireError {
  code: string;
  message: string;
}

export class SimClientError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(message);
    this.name = new.target.name;
    this.code = code;
  }
}

export class ConfigError extends SimClientError {}
export class SchemaError extends SimClientError {}
export class ValidationError extends SimClientError {}
export class CalibrationError extends SimClientError {}
export class UnknownReferenceError extends SimClientError {}
export class ArgumentError extends SimClientError {}
export class FundsError extends SimClientError {}
export class GateError extends SimClientError {}
export class UnknownToolError extends SimClientError {}
export class InvalidActionError extends SimClientError {}
export class DisabledError extends SimClientError {}
export class ProtocolError extends SimClientError {}
export class InternalError extends SimClientError {}

type ErrorClass = new (code: string, message: string) => SimClientError;

export const ERROR_CLASSES: Record<string, ErrorClass> = {
  config_error: ConfigError,
  schema_error: SchemaError,
  validation_error: ValidationError,
  calibration_error: CalibrationError,
  unknown_reference: UnknownReferenceError,
  bad_arguments: ArgumentError,
  insufficient_funds: FundsError,
  phase_gate: GateError,
  unknown_tool: UnknownToolError,
  invalid_action: InvalidActionError,
  news_disabled: DisabledError,
  protocol_error: ProtocolError,
  internal_error: InternalError,
};

export function errorFromWire(error: WireError): SimClientError {
  const cls = ERROR_CLASSES[error.code] ?? SimClientError;
  return new cls(error.code, error.message);
}
