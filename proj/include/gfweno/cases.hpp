#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfweno/solver.hpp"
#include "gfweno/steady.hpp"

namespace gfweno {

/// Parsed scheme identifier: "weno{3|5|7}gf-{ab|am}{4|6|8}" or
/// "weno{3|5|7}-nwb".
struct SchemeId {
  int p = 5;
  bool global_flux = true;
  AdamsFamily family = AdamsFamily::moulton;
  int order = 4;
  std::string text;

  static SchemeId parse(const std::string& id);
};

std::vector<std::string> scheme_catalog();

/// Discrete L¹ norm dx · Σ_i |a_i − b_i| per component over the interior
/// nodes. Throws ConfigError on interval-count mismatch.
std::vector<double> l1_error(const State& a, const State& b, const Grid& grid);

/// log₂ ratios of consecutive errors over a dyadic ladder; non-positive
/// errors yield NaN (printed as "-").
std::vector<double> observed_order(std::span<const double> errors);

struct PerturbationSpec {
  enum class Shape { box, gaussian };
  Shape shape = Shape::box;
  double x_lo = 0.0, x_hi = 0.0;  // box support
  double center = 0.0, rate = 0.0;  // gaussian: amp · exp(−rate (x−center)²)
  double amplitude = 0.0;
  int component = 0;
};

struct RunOverrides {
  std::optional<double> t_end;
  std::optional<bool> steady;
  std::optional<double> cfl;
  std::optional<double> amplitude;
};

/// A case instantiated for one scheme and mesh: model, solver, initial data
/// and the measurement hooks.
struct PreparedCase {
  std::string case_id;
  std::shared_ptr<const ModelSpec> model;
  Grid grid;
  std::unique_ptr<Solver> solver;
  State initial;
  bool steady_by_default = false;
  double default_t_end = 0.0;
  std::function<State(double t)> reference;    // may be empty
  std::function<State()> underlying_steady;    // may be empty
  std::optional<PerturbationSpec> perturbation;
  std::string ref_scheme;  // fine-grid reference for perturbation figures
  int ref_n = 0;
};

std::vector<std::string> case_catalog();
std::string case_description(const std::string& case_id);

/// Smallest mesh the case is exercised on by the smoke tests.
int case_smoke_n(const std::string& case_id);

PreparedCase prepare_case(const std::string& case_id, const SchemeId& scheme,
                          int n, const RunOverrides& overrides = {});

struct SolveResult {
  double t_end = 0.0;
  bool steady_mode = false;
  bool converged = true;
  long steps = 0;
  bool has_error = false;
  std::vector<double> l1;
  double wall_seconds = 0.0;
  Grid grid;
  State final_state;
  std::shared_ptr<const ModelSpec> model;
};

SolveResult run_case(const std::string& case_id, const std::string& scheme_id,
                     int n, const RunOverrides& overrides = {});

struct ConvergenceRow {
  int n = 0;
  std::vector<double> err;    // per component
  std::vector<double> order;  // NaN on the first row
};

std::vector<ConvergenceRow> convergence_study(const std::string& case_id,
                                              const std::string& scheme_id,
                                              std::span<const int> n_list,
                                              const RunOverrides& overrides = {});

struct PerturbationTrace {
  std::vector<double> x;
  std::vector<std::vector<double>> deviation;  // [component][node]
};

/// Deviation of the perturbed run at t_end from the scheme's own underlying
/// discrete stationary solution (well-prepared initialization).
PerturbationTrace perturbation_study(const std::string& case_id,
                                     const std::string& scheme_id, int n,
                                     double t_end, double amplitude);

// --- Shared state builders -------------------------------------------------

State state_from(const Solver& solver, const std::function<Vec(double)>& f);

/// Discrete stationary state by a multi-step sweep over the solver's full
/// ghost-extended node range, seeded from `seed` at the leftmost nodes.
State sweep_state(const Solver& solver, FluxBranch branch,
                  const std::function<Vec(double)>& seed, double t = 0.0);

/// Same, with seeds bootstrapped by RK4 from an anchor value at node 0.
State sweep_state_from_anchor(const Solver& solver, FluxBranch branch,
                              const Vec& anchor, double t = 0.0);

void apply_perturbation(State& u, const Grid& grid, const PerturbationSpec& p);

// --- CSV -------------------------------------------------------------------

std::string format_sig17(double v);
void write_state_csv(std::ostream& os, const Grid& grid, const State& u,
                     const ModelSpec& model);
void write_convergence_csv(std::ostream& os,
                           std::span<const ConvergenceRow> rows);
void write_perturbation_csv(std::ostream& os, const PerturbationTrace& trace,
                            const ModelSpec& model);

}  // namespace gfweno
