#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace upm {

enum class ErrorCode {
  malformed_xml,
  missing_activity,
  missing_timestamp,
  invalid_interval,
  empty_label_set,
  conflicting_timestamps,
  duplicate_case_id,
  duplicate_event_id,
  no_net,
  disconnected_arc,
  empty_trace,
  not_enabled,
  unreachable,
  state_space_exceeded,
  cap_exceeded,
  dictionary_too_small,
  invalid_spec,
  trace_not_found,
  io_error,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_xml: return "malformed_xml";
    case ErrorCode::missing_activity: return "missing_activity";
    case ErrorCode::missing_timestamp: return "missing_timestamp";
    case ErrorCode::invalid_interval: return "invalid_interval";
    case ErrorCode::empty_label_set: return "empty_label_set";
    case ErrorCode::conflicting_timestamps: return "conflicting_timestamps";
    case ErrorCode::duplicate_case_id: return "duplicate_case_id";
    case ErrorCode::duplicate_event_id: return "duplicate_event_id";
    case ErrorCode::no_net: return "no_net";
    case ErrorCode::disconnected_arc: return "disconnected_arc";
    case ErrorCode::empty_trace: return "empty_trace";
    case ErrorCode::not_enabled: return "not_enabled";
    case ErrorCode::unreachable: return "unreachable";
    case ErrorCode::state_space_exceeded: return "state_space_exceeded";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::dictionary_too_small: return "dictionary_too_small";
    case ErrorCode::invalid_spec: return "invalid_spec";
    case ErrorCode::trace_not_found: return "trace_not_found";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

/// Library-wide exception. `code()` is stable and machine-readable; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace upm
