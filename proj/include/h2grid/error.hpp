#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace h2grid {

enum class ErrorCode {
  InvalidProblem,
  ResourceLimit,
  NetworkDisconnected,
  InvalidLine,
  EmptyNetwork,
  InfeasibleHour,
  InfeasibleRedispatch,
  IncompleteSite,
  NoCandidates,
  InvalidStationSpec,
  InvalidDepreciation,
  StructurallyInfeasible,
  ChainInfeasible,
  DivisionDomain,
  IncompleteBaseline,
  MissingSeries,
  CannotScale,
  ConfigError,
  IoError,
  InvalidSpec,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

// Base exception for every failure surfaced by the library. Callers that
// need the category switch on code(); the message carries context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the category prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

class InfeasibleHourError : public Error {
 public:
  InfeasibleHourError(int hour, double deficit_mw, const std::string& message)
      : Error(ErrorCode::InfeasibleHour, message), hour_(hour), deficit_mw_(deficit_mw) {}

  int hour() const noexcept { return hour_; }
  // Zero when the hour fails for network reasons rather than a capacity shortfall.
  double deficit_mw() const noexcept { return deficit_mw_; }

 private:
  int hour_;
  double deficit_mw_;
};

}  // namespace h2grid
