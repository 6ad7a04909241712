#pragma once

#include <span>
#include <vector>

#include "gfweno/grid.hpp"
#include "gfweno/model.hpp"

namespace gfweno {

/// WENO reconstruction order p = 2k+1 ∈ {3, 5, 7}.
struct WenoOrder {
  int p = 5;
  int k = 2;

  static WenoOrder from_p(int p) {
    if (p != 3 && p != 5 && p != 7)
      throw ConfigError("weno: order must be 3, 5 or 7");
    return WenoOrder{p, (p - 1) / 2};
  }
};

namespace weno {

/// Jiang-Shu smoothness indicators of the k+1 candidate substencils,
/// leftmost substencil first. stencil has 2k+1 values, out has k+1.
void smoothness_indicators(std::span<const double> stencil, int k,
                           std::span<double> out);

/// Ideal (linear) substencil weights, leftmost first.
std::span<const double> linear_weights(int k);

/// Interpolation coefficients of substencil r (value at x_{i+1/2} from the
/// k+1 points x_{i-k+r} .. x_{i+r}).
std::span<const double> candidate_coefficients(int k, int r);

/// Nonlinear weights ω_r = α_r / Σα with α_r = d_r / (ε + β_r)².
void nonlinear_weights(std::span<const double> stencil, int k, double eps,
                       std::span<double> w);

/// Convex combination of the candidate reconstructions under given weights.
/// Exposed so linearity under frozen weights is testable.
double combine(std::span<const double> stencil, int k,
               std::span<const double> w);

/// Left-biased reconstruction: value at x_{i+1/2} from f_{i-k} .. f_{i+k}.
double reconstruct_left(std::span<const double> stencil, int k, double eps);

/// Right-biased reconstruction: value at x_{i+1/2} from f_{i-k+1} .. f_{i+k+1}
/// (equals reconstruct_left of the reversed stencil).
double reconstruct_right(std::span<const double> stencil, int k, double eps);

}  // namespace weno

/// |J|⁻¹ J = R sign(Λ) R⁻¹ evaluated at the Roe state of (ul, ur), with
/// eigenvalue magnitudes floored at 1e-8 · max(1, spectral radius) so sonic
/// interfaces stay finite.
Mat upwind_sign_matrix(const ModelSpec& model, const Vec& ul, const Vec& ur);

/// Upwind split of the modified fluxes over one interface stencil.
struct SplitFluxes {
  int first_node = 0;      // node index of plus[0]/minus[0]
  std::vector<Vec> plus;   // nodes i-k .. i+k+1
  std::vector<Vec> minus;
};

SplitFluxes upwind_split(const NodalField& modified, const State& states,
                         const ModelSpec& model, WenoOrder order,
                         int interface_i);

/// Reconstructed interface flux F̂_{i+1/2}: left-biased reconstruction of the
/// plus part plus right-biased reconstruction of the minus part.
Vec interface_flux(const NodalField& modified, const State& states,
                   const ModelSpec& model, WenoOrder order, int interface_i,
                   double eps);

}  // namespace gfweno
