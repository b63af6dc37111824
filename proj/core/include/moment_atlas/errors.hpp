#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace moment_atlas {

enum class ErrorKind {
  InvalidInput,
  ComplexDisconnected,
  DegenerateGeometry,
  PathOffCurve,
  NotClosed,
  PointOnCurve,
  ConditionStarViolated,
  DegreeTooLarge,
  LengthMismatch,
  Blowup,
};

std::string_view to_string(ErrorKind kind);

// Base class for every failure raised by the library. Validation failures
// (malformed input, degenerate geometry) and mathematical precondition
// failures (a path that leaves its curve, an open word where a closed one is
// required) are distinguished by is_precondition().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  bool is_precondition() const noexcept;

 private:
  ErrorKind kind_;
};

class PathOffCurve : public Error {
 public:
  PathOffCurve(std::size_t sample_index, double distance);
  std::size_t sample_index() const noexcept { return index_; }
  double distance() const noexcept { return distance_; }

 private:
  std::size_t index_;
  double distance_;
};

class ConditionStarViolated : public Error {
 public:
  ConditionStarViolated(std::string clause, std::size_t i, std::size_t j,
                        const std::string& detail);
  const std::string& clause() const noexcept { return clause_; }
  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }

 private:
  std::string clause_;
  std::size_t i_;
  std::size_t j_;
};

class Blowup : public Error {
 public:
  explicit Blowup(double v0);
  double initial_value() const noexcept { return v0_; }

 private:
  double v0_;
};

}  // namespace moment_atlas
