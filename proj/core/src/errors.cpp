#include "moment_atlas/errors.hpp"

#include <sstream>

namespace moment_atlas {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ComplexDisconnected: return "ComplexDisconnected";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::PathOffCurve: return "PathOffCurve";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::PointOnCurve: return "PointOnCurve";
    case ErrorKind::ConditionStarViolated: return "ConditionStarViolated";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::Blowup: return "Blowup";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

bool Error::is_precondition() const noexcept {
  switch (kind_) {
    case ErrorKind::PathOffCurve:
    case ErrorKind::NotClosed:
    case ErrorKind::PointOnCurve:
    case ErrorKind::ConditionStarViolated:
    case ErrorKind::Blowup:
      return true;
    default:
      return false;
  }
}

namespace {
std::string off_curve_message(std::size_t index, double distance) {
  std::ostringstream os;
  os << "sample " << index << " lies " << distance << " away from the complex";
  return os.str();
}
}  // namespace

PathOffCurve::PathOffCurve(std::size_t sample_index, double distance)
    : Error(ErrorKind::PathOffCurve, off_curve_message(sample_index, distance)),
      index_(sample_index),
      distance_(distance) {}

ConditionStarViolated::ConditionStarViolated(std::string clause, std::size_t i,
                                             std::size_t j,
                                             const std::string& detail)
    : Error(ErrorKind::ConditionStarViolated,
            "clause " + clause + " (cubes " + std::to_string(i) + ", " +
                std::to_string(j) + "): " + detail),
      clause_(std::move(clause)),
      i_(i),
      j_(j) {}

Blowup::Blowup(double v0)
    : Error(ErrorKind::Blowup,
            "solution left the divergence guard for v0 = " + std::to_string(v0)),
      v0_(v0) {}

}  // namespace moment_atlas
