#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gfweno/grid.hpp"
#include "gfweno/model.hpp"
#include "gfweno/multistep.hpp"

namespace gfweno {

/// A registered jump of H at the interface x_{ℓ+1/2}, with the H limits on
/// each side of the jump.
struct Singularity {
  int interface = 0;  // ℓ
  double h_left = 0.0;
  double h_right = 0.0;
};

class SingularityRegistry {
 public:
  SingularityRegistry() = default;

  void add(const Singularity& s);
  bool empty() const { return entries_.empty(); }
  const std::vector<Singularity>& entries() const { return entries_; }

  /// Singularity whose cell [x_ℓ, x_{ℓ+1}] is the given cell, if any.
  const Singularity* at_cell(int cell) const;
  /// Nearest singularity with ℓ < cell ≤ ℓ + window, if any.
  const Singularity* left_of(int cell, int window) const;

  /// Entries must be separated by more than 2s nodes and must not sit inside
  /// the ghost band.
  void validate(const MultiStepRule& rule, int n_intervals, int ghost) const;

 private:
  std::vector<Singularity> entries_;  // sorted by interface
};

/// Locate jumps of H on a grid: a jump inside a cell registers at that cell's
/// interface; a node-aligned jump registers at the right-adjacent interface
/// (H(x_j) then carries the left limit, matching left-closed branch
/// definitions).
SingularityRegistry locate_singularities(const Grid& grid,
                                         const ModelSpec& model,
                                         std::span<const double> jump_xs,
                                         double t = 0.0);

/// Source integrand Ψ(U, x, t) = S(U) H_x(x, t) + s(U, x, t).
Vec source_integrand(const ModelSpec& model, const Vec& u, double x, double t);

/// How the source integral over cell [x_c, x_{c+1}] is evaluated.
struct CellQuadrature {
  enum class Kind { standard, reduced, singular };
  Kind kind = Kind::standard;
  int first_node = 0;               // leftmost active node
  std::span<const double> weights;  // active weights, left to right
  const Singularity* sing = nullptr;

  int last_node() const { return first_node + static_cast<int>(weights.size()) - 1; }
};

/// Window schedule of a rule around the registered singular interfaces.
/// Near a singularity at ℓ the window is anchored at x_{ℓ+1} and grows back
/// to full order s cells later (the r-step members of the same family).
class SourceQuadrature {
 public:
  SourceQuadrature(MultiStepRule rule, SingularityRegistry registry);

  CellQuadrature cell(int c) const;
  const MultiStepRule& rule() const { return rule_; }
  const SingularityRegistry& registry() const { return reg_; }

 private:
  MultiStepRule rule_;
  SingularityRegistry reg_;
  std::vector<std::vector<double>> reduced_;  // [n] = n-node weights
};

/// Source linearization S̃ across an admissible jump: S̃ [[H]] = [[F]].
double burgers_source_linearization(double ul, double ur, int exponent);
double swe_depth_linearization(double hl, double hr, double qbar, double g);

/// I_ℓ = S̃_{ℓ+1/2} (H_r − H_l) for the singular cell; H values are the nodal
/// ones so the jump relation spans the whole cell.
Vec singular_cell_integral(const Vec& ul, const Vec& ur, const ModelSpec& model,
                           double h_geom_left, double h_geom_right);

/// Water-at-rest variant: second component g η̃ [[H̃]] + (g/2) [[H̃²]] with η̃
/// built from the same linearization.
Vec singular_cell_integral_war(const Vec& ul, const Vec& ur,
                               const ShallowWaterModel& model, double ht_left,
                               double ht_right);

/// Standard-rule integral of the source over cell [x_c, x_{c+1}]; the caller
/// routes cells near a singularity elsewhere.
Vec cell_source_integral(const Grid& grid, const State& states,
                         const ModelSpec& model, const MultiStepRule& rule,
                         int cell, double t);

/// Quadrature-consistent bathymetry H̃ with H̃_0 = H(x_0), accumulated over
/// the full ghost-extended node range with the same cell schedule as the
/// source integral (node-to-node jump across singular cells).
NodalField accumulate_bathymetry(const Grid& grid, const ModelSpec& model,
                                 const SourceQuadrature& quad, int ghost,
                                 double t = 0.0);

/// Second component of I_j under the water-at-rest correction: quadrature of
/// g η H_x plus the (g/2)[[H̃²]] jump, with η = h − H̃.
double water_at_rest_integral(const Grid& grid, const State& states,
                              const ShallowWaterModel& model,
                              const SourceQuadrature& quad,
                              const NodalField& htilde, int cell, double t);

/// Per-node source primitives R_j and modified fluxes F_j = F(U_j) − R_j.
struct GlobalFlux {
  NodalField primitives;
  NodalField modified;
};

struct GlobalFluxOptions {
  bool water_at_rest = false;
  const NodalField* quad_bathymetry = nullptr;  // required when water_at_rest
};

/// Assemble R (R_0 = 0, R_{j+1} = R_j + I_j, extended backward into the left
/// ghost band) and the modified fluxes over the node range needed by the
/// reconstruction stencils.
GlobalFlux build_global_flux(const Grid& grid, const State& states,
                             const ModelSpec& model,
                             const SourceQuadrature& quad, double t,
                             const GlobalFluxOptions& options = {});

}  // namespace gfweno
