#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polycontain/rational.hpp"

namespace polycontain {

enum class VerdictStatus { kCertifiedContained, kCertifiedNotContained, kUndecided };

const char* to_string(VerdictStatus s);

/// Outcome of a containment decision, from either evidence path or both.
struct ContainmentVerdict {
  VerdictStatus status = VerdictStatus::kUndecided;
  std::optional<int> order_used;
  std::vector<double> mu_values;  // SOS bound per order, starting at t = 2
  std::optional<RationalVector> witness;  // a point of P outside Q, input coordinates
  std::optional<double> residual;         // identity residual of the accepted certificate
  bool vacuous = false;                   // P empty
  std::optional<Rational> mu_star;        // exact bilinear optimum when the oracle ran
  std::optional<bool> strong_containment; // only from exact oracle evidence
  std::vector<std::string> notes;
};

}  // namespace polycontain
