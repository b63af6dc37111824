#pragma once

#include <span>
#include <string>
#include <vector>

namespace moment_atlas {

struct RelationSearch {
  bool found = false;
  std::vector<long long> relation;  // first nonzero entry positive
  double residual = 0.0;            // |sum c_j v_j| for the relation
  long long height = 0;             // coefficient bound searched
  std::string method;               // "exhaustive" or "lll"
};

/// Searches for a nonzero integer vector c with |c_j| <= height and
/// |sum c_j v_j| below 2^-precision_bits (relative to the values' scale).
/// Exhaustive when the search box is small enough (the last coefficient is
/// solved by rounding), LLL lattice reduction otherwise. A negative result
/// only certifies the absence of relations up to `height` for the
/// exhaustive method; for LLL it is heuristic.
RelationSearch q_independence_check(std::span<const double> values, int precision_bits = 40,
                                    long long height = 10000);

}  // namespace moment_atlas
