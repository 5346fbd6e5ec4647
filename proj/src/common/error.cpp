#include "h2grid/error.hpp"

namespace h2grid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NetworkDisconnected: return "NetworkDisconnected";
    case ErrorCode::InvalidLine: return "InvalidLine";
    case ErrorCode::EmptyNetwork: return "EmptyNetwork";
    case ErrorCode::InfeasibleHour: return "InfeasibleHour";
    case ErrorCode::InfeasibleRedispatch: return "InfeasibleRedispatch";
    case ErrorCode::IncompleteSite: return "IncompleteSite";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::InvalidStationSpec: return "InvalidStationSpec";
    case ErrorCode::InvalidDepreciation: return "InvalidDepreciation";
    case ErrorCode::StructurallyInfeasible: return "StructurallyInfeasible";
    case ErrorCode::ChainInfeasible: return "ChainInfeasible";
    case ErrorCode::DivisionDomain: return "DivisionDomain";
    case ErrorCode::IncompleteBaseline: return "IncompleteBaseline";
    case ErrorCode::MissingSeries: return "MissingSeries";
    case ErrorCode::CannotScale: return "CannotScale";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace h2grid
