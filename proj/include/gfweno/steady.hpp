#pragma once

#include <functional>
#include <vector>

#include "gfweno/global_flux.hpp"
#include "gfweno/grid.hpp"
#include "gfweno/model.hpp"
#include "gfweno/multistep.hpp"

namespace gfweno {

/// Root branch used when inverting the flux (or Bernoulli) relations. The
/// scalar branches pick the sign of U; the shallow-water branches pick the
/// depth root above/below the sonic depth.
enum class FluxBranch {
  scalar_positive,
  scalar_negative,
  swe_subcritical,
  swe_supercritical,
};

/// U with flux(U) = f_target on the requested branch. Throws NoRootError
/// (carrying the sonic gap) when the target lies below the sonic minimum.
Vec invert_flux(const ModelSpec& model, const Vec& f_target, FluxBranch branch);

/// Depth solving q²/(2h²) + g h = rhs on the requested branch.
double swe_bernoulli_depth(double g, double q, double rhs, FluxBranch branch);

/// Right state of an admissible jump at a discontinuity of H: the limits are
/// connected by dF/dH = S(U) integrated from H_left to H_right.
Vec admissible_jump(const ModelSpec& model, const Vec& u_left, double h_left,
                    double h_right, FluxBranch branch);

struct SteadyProblem {
  const ModelSpec* model = nullptr;
  MultiStepRule rule;
  Grid grid;
  int first_node = 0;     // sweep covers first_node .. last_node
  int last_node = 0;
  std::vector<Vec> seeds; // rule.steps values at first_node ..
  FluxBranch branch = FluxBranch::scalar_positive;
  SingularityRegistry registry;
  double t = 0.0;
};

/// Discrete stationary solution by one multi-step sweep in flux space:
/// F(U*_j) = F(U*_{j-1}) + I_{j-1}(U*), with the admissible-jump step at
/// singular interfaces and same-family reduced rules just after them.
/// Moulton rules solve the implicit node by damped fixed-point iteration.
std::vector<Vec> steady_sweep(const SteadyProblem& problem);

/// Seeds for a sweep when no exact relation is available: classical RK4
/// sub-stepping (10 substeps per cell) of the flux-space ODE from u_anchor at
/// anchor_node, walking one node per entry in the given direction (±1).
/// Returns `count` values at anchor_node, anchor_node+direction, ...
std::vector<Vec> bootstrap_seeds(const ModelSpec& model, const Grid& grid,
                                 const Vec& u_anchor, int anchor_node,
                                 int count, int direction, FluxBranch branch,
                                 double t = 0.0);

// --- Closed-form stationary solutions used by the benchmark cases ---------

/// Burgers stationary value at x: U e^{-H} = C (p = 2) or
/// U^{2-p}/(2-p) - H = C (p ≠ 2).
double burgers_stationary_value(const BurgersModel& model, double c, double x,
                                double t = 0.0);

/// Bernoulli stationary state at x: q = c1, q²/(2h²) + g h − g H = c2.
Vec swe_bernoulli_state(const ShallowWaterModel& model, double c1, double c2,
                        FluxBranch branch, double x, double t = 0.0);

/// Friction closed form (κ = k h |q|): prescribed free-surface profile z,
/// h = h0 / sqrt(1 + (2 h0² g / q0²)(z(x0) − z(x)) − 2 k h0² (x − x0)).
struct FrictionSteadyProfile {
  double h0, q0, a, b, c, k;
  double g = 1.0;
  double x0 = 0.0;

  double z(double x) const;
  double dz(double x) const;
  double depth(double x) const;
  double ddepth(double x) const;
  double geometry(double x) const { return depth(x) - z(x); }
  double geometry_slope(double x) const { return ddepth(x) - dz(x); }
};

}  // namespace gfweno
