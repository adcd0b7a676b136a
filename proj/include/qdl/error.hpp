#pragma once

#include <stdexcept>
#include <string>

namespace qdl {

enum class ErrorKind {
  UnsupportedGroup,
  IncompleteIrrepSet,
  GroupMismatch,
  ToleranceExceeded,
  BadDimensions,
  NotARibbon,
  EndpointMismatch,
  BoundaryTooClose,
  NonAdjacentSite,
  LatticeMismatch,
  SupportBudgetExceeded,
  NotOpen,
  NotStronglyOpen,
  SitesNotDisjoint,
  UnsupportedOrientation,
  NotAHopfAlgebra,
  NoIntegral,
  ConfigError,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qdl
