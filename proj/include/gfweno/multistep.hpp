#pragma once

#include <span>
#include <vector>

#include "gfweno/core.hpp"

namespace gfweno {

enum class AdamsFamily { bashforth, moulton };

const char* family_name(AdamsFamily f);

/// Adams quadrature rule for the cell integral over [x_j, x_{j+1}]:
///
///   I_j ≈ dx · Σ_{m=0}^{s} β_m ψ(x_{j+1-s+m})
///
/// Bashforth of order q uses s = q steps with β_s = 0 (explicit);
/// Moulton of order q uses s = q-1 steps with β_s ≠ 0 (implicit).
struct MultiStepRule {
  AdamsFamily family;
  int order = 0;             // q
  int steps = 0;             // s
  std::vector<double> beta;  // β_0 .. β_s

  bool implicit() const { return family == AdamsFamily::moulton; }

  /// Number of nodes with nonzero weight (= q for both families).
  int active_nodes() const { return order; }

  /// The nonzero weights, left to right. For Bashforth this drops the
  /// trailing zero; the active window then ends at the cell's left node.
  std::span<const double> active() const {
    return std::span<const double>(beta).first(static_cast<size_t>(order));
  }

  std::string name() const;
};

/// Rule of the given family and order (orders 4, 6, 8 supported).
MultiStepRule multistep_weights(AdamsFamily family, int order);

/// Weights of the n-node member of the family (order n, n = 1..8): the
/// window of n consecutive nodes ends at the cell's left node (Bashforth)
/// or right node (Moulton). n = 1 gives the rectangle rules, Moulton n = 2
/// the trapezoidal rule.
std::vector<double> reduced_weights(AdamsFamily family, int n);

}  // namespace gfweno
