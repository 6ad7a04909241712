#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gfweno/global_flux.hpp"
#include "gfweno/grid.hpp"
#include "gfweno/model.hpp"
#include "gfweno/multistep.hpp"
#include "gfweno/weno.hpp"

namespace gfweno {

struct BoundarySide {
  enum class Kind {
    periodic,
    extrapolate,       // degree-0
    dirichlet,         // values(x, t)
    frozen,            // ghost values kept as initialized (well-prepared data)
    swe_subcritical_inlet,   // fix q, extrapolate h
    swe_subcritical_outlet,  // fix h, extrapolate q
    swe_supercritical_inlet, // fix h and q
  };
  Kind kind = Kind::extrapolate;
  double fixed_h = 0.0;
  double fixed_q = 0.0;
  std::function<Vec(double x, double t)> values;

  static BoundarySide periodic() { return {Kind::periodic, 0, 0, nullptr}; }
  static BoundarySide extrapolate() { return {}; }
  static BoundarySide frozen() { return {Kind::frozen, 0, 0, nullptr}; }
  static BoundarySide dirichlet(std::function<Vec(double, double)> v) {
    return {Kind::dirichlet, 0, 0, std::move(v)};
  }
  static BoundarySide subcritical_inlet(double q) {
    return {Kind::swe_subcritical_inlet, 0, q, nullptr};
  }
  static BoundarySide subcritical_outlet(double h) {
    return {Kind::swe_subcritical_outlet, h, 0, nullptr};
  }
  static BoundarySide supercritical_inlet(double h, double q) {
    return {Kind::swe_supercritical_inlet, h, q, nullptr};
  }
};

struct BoundaryPolicy {
  BoundarySide left, right;

  static BoundaryPolicy periodic() {
    return {BoundarySide::periodic(), BoundarySide::periodic()};
  }
  static BoundaryPolicy extrapolate() { return {}; }
  static BoundaryPolicy frozen() {
    return {BoundarySide::frozen(), BoundarySide::frozen()};
  }
  static BoundaryPolicy dirichlet(std::function<Vec(double, double)> v) {
    return {BoundarySide::dirichlet(v), BoundarySide::dirichlet(v)};
  }
};

struct SchemeConfig {
  WenoOrder weno = WenoOrder::from_p(5);
  MultiStepRule rule = multistep_weights(AdamsFamily::moulton, 4);
  double cfl = 0.45;
  BoundaryPolicy boundary;
  bool water_at_rest_fix = false;
  SingularityRegistry registry;
  double steady_tol = 1e-13;
  long max_steps = 2'000'000;
  bool global_flux = true;  // false: non-well-balanced baseline (WENOp-nWB)
  double weno_eps = 1e-6;
  double dt_exponent = 1.0;  // dt = cfl dx^e / max |λ|

  int ghost_width() const { return weno.k + rule.steps; }
};

class Solver {
 public:
  Solver(const ModelSpec& model, const Grid& grid, SchemeConfig config);

  const Grid& grid() const { return grid_; }
  const SchemeConfig& config() const { return cfg_; }
  const ModelSpec& model() const { return *model_; }

  /// Zero state with the solver's ghost band.
  State make_state() const;

  void fill_ghosts(State& u, double t) const;

  /// Semi-discrete right-hand side −(F̂_{i+1/2} − F̂_{i-1/2})/dx at the
  /// interior nodes (ghosts must be filled for time t).
  NodalField rhs(const State& u, double t) const;

  /// CFL time step cfl · dx^e / max interface spectral radius; capped at
  /// cfl · dx^e when all wave speeds vanish.
  double cfl_dt(const State& u) const;

  /// One SSP-RK3 step (Shu-Osher convex combination); ghosts are refilled
  /// before each stage. Ghost values of frozen sides carry over from u.
  State step(const State& u, double t, double dt) const;

  State run_to_time(State u, double t0, double t_end) const;

  struct SteadyResult {
    State state;
    std::vector<double> residuals;
    bool converged = false;
    long steps = 0;
  };
  /// March until ‖rhs‖∞ ≤ steady_tol or max_steps; returns the best state
  /// seen. Exits early when the residual stops improving (roundoff floor).
  SteadyResult run_to_steady(State u, double t0 = 0.0) const;

  /// Max-norm of the semi-discrete right-hand side.
  double steady_residual(const State& u, double t) const;

  /// Accumulated bathymetry H̃ (water-at-rest fix only), else nullptr.
  const NodalField* quad_bathymetry() const {
    return htilde_ ? &*htilde_ : nullptr;
  }
  const SourceQuadrature& source_quadrature() const { return quad_; }

 private:
  NodalField rhs_interior(const State& u, double t) const;
  void check_states(const State& u, const char* context) const;

  const ModelSpec* model_;
  Grid grid_;
  SchemeConfig cfg_;
  SourceQuadrature quad_;
  std::optional<NodalField> htilde_;
};

}  // namespace gfweno
