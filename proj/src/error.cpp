#include "qdl/error.hpp"

namespace qdl {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorKind::IncompleteIrrepSet: return "IncompleteIrrepSet";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::ToleranceExceeded: return "ToleranceExceeded";
    case ErrorKind::BadDimensions: return "BadDimensions";
    case ErrorKind::NotARibbon: return "NotARibbon";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::BoundaryTooClose: return "BoundaryTooClose";
    case ErrorKind::NonAdjacentSite: return "NonAdjacentSite";
    case ErrorKind::LatticeMismatch: return "LatticeMismatch";
    case ErrorKind::SupportBudgetExceeded: return "SupportBudgetExceeded";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::NotStronglyOpen: return "NotStronglyOpen";
    case ErrorKind::SitesNotDisjoint: return "SitesNotDisjoint";
    case ErrorKind::UnsupportedOrientation: return "UnsupportedOrientation";
    case ErrorKind::NotAHopfAlgebra: return "NotAHopfAlgebra";
    case ErrorKind::NoIntegral: return "NoIntegral";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace qdl
