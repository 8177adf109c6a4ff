#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctbp {

enum class ErrorKind {
  AllZero,
  DegenerateAtCollision,
  OnDiscriminant,
  Boundary,
  ChartUndefined,
  NotACusp,
  CollisionPoint,
  CollisionInput,
  NotACentralConfiguration,
  NotRealizable,
  NonpositiveMultiplier,
  Collision,
  NoSuchRoot,
  InvalidInput,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::DegenerateAtCollision: return "DegenerateAtCollision";
    case ErrorKind::OnDiscriminant: return "OnDiscriminant";
    case ErrorKind::Boundary: return "Boundary";
    case ErrorKind::ChartUndefined: return "ChartUndefined";
    case ErrorKind::NotACusp: return "NotACusp";
    case ErrorKind::CollisionPoint: return "CollisionPoint";
    case ErrorKind::CollisionInput: return "CollisionInput";
    case ErrorKind::NotACentralConfiguration: return "NotACentralConfiguration";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::NonpositiveMultiplier: return "NonpositiveMultiplier";
    case ErrorKind::Collision: return "Collision";
    case ErrorKind::NoSuchRoot: return "NoSuchRoot";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ctbp
