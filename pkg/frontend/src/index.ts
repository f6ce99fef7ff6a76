export {
  ArgumentError,
  CalibrationError,
  ConfigError,
  DisabledError,
  ERROR_CLASSES,
  errorFromWire,
  FundsError,
  GateError,
  InternalError,
  InvalidActionError,
  ProtocolError,
  SchemaError,
  SimClientError,
  UnknownReferenceError,
  UnknownToolError,
  ValidationError,
  type WireError,
} from "./errors.js";
export {
  runScriptedEpisode,
  Session,
  type EpisodeEndEvent,
  type Phase,
  type PhaseStartEvent,
  type ScriptedDay,
  type SessionOptions,
  type SimEvent,
} from "./session.js";
