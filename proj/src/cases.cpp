#include "gfweno/cases.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <map>
#include <ostream>

namespace gfweno {
namespace {

double sq(double a) { return a * a; }

// Sinusoidal bump bathymetry of the shallow-water benchmarks.
double swe_bump(double x) {
  const double w = x - 12.5;
  return 0.05 * std::sin(w) * std::exp(1.0 - w * w);
}
double swe_bump_slope(double x) {
  const double w = x - 12.5;
  return 0.05 * std::exp(1.0 - w * w) * (std::cos(w) - 2.0 * w * std::sin(w));
}

}  // namespace

SchemeId SchemeId::parse(const std::string& id) {
  SchemeId s;
  s.text = id;
  const auto fail = [&]() -> SchemeId {
    throw ConfigError("unknown scheme id '" + id +
                      "' (expected weno{3|5|7}gf-{ab|am}{4|6|8} or weno{3|5|7}-nwb)");
  };
  if (id.rfind("weno", 0) != 0 || id.size() < 8) return fail();
  const char pc = id[4];
  if (pc != '3' && pc != '5' && pc != '7') return fail();
  s.p = pc - '0';
  const std::string rest = id.substr(5);
  if (rest == "-nwb") {
    s.global_flux = false;
    return s;
  }
  if (rest.rfind("gf-", 0) != 0 || rest.size() != 6) return fail();
  const std::string fam = rest.substr(3, 2);
  if (fam == "ab")
    s.family = AdamsFamily::bashforth;
  else if (fam == "am")
    s.family = AdamsFamily::moulton;
  else
    return fail();
  const char qc = rest[5];
  if (qc != '4' && qc != '6' && qc != '8') return fail();
  s.order = qc - '0';
  return s;
}

std::vector<std::string> scheme_catalog() {
  std::vector<std::string> out;
  for (int p : {3, 5, 7}) {
    for (const char* fam : {"ab", "am"})
      for (int q : {4, 6, 8})
        out.push_back("weno" + std::to_string(p) + "gf-" + fam + std::to_string(q));
    out.push_back("weno" + std::to_string(p) + "-nwb");
  }
  return out;
}

std::vector<double> l1_error(const State& a, const State& b, const Grid& grid) {
  if (a.intervals() != b.intervals() || a.intervals() != grid.n)
    throw ConfigError("l1_error: grid mismatch");
  std::vector<double> out(static_cast<size_t>(a.components()), 0.0);
  for (int j = 0; j <= grid.n; ++j)
    for (int c = 0; c < a.components(); ++c)
      out[static_cast<size_t>(c)] += std::abs(a.at(j)[c] - b.at(j)[c]);
  for (double& e : out) e *= grid.dx;
  return out;
}

std::vector<double> observed_order(std::span<const double> errors) {
  std::vector<double> out;
  for (size_t i = 0; i + 1 < errors.size(); ++i) {
    if (errors[i] > 0.0 && errors[i + 1] > 0.0)
      out.push_back(std::log2(errors[i] / errors[i + 1]));
    else
      out.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

State state_from(const Solver& solver, const std::function<Vec(double)>& f) {
  State u = solver.make_state();
  for (int j = u.first_node(); j <= u.last_node(); ++j)
    u.at(j) = f(solver.grid().node(j));
  return u;
}

State sweep_state(const Solver& solver, FluxBranch branch,
                  const std::function<Vec(double)>& seed, double t) {
  const Grid& grid = solver.grid();
  SteadyProblem pb;
  pb.model = &solver.model();
  pb.rule = solver.config().rule;
  pb.grid = grid;
  pb.first_node = -solver.config().ghost_width();
  pb.last_node = grid.n + solver.config().ghost_width();
  pb.branch = branch;
  pb.registry = solver.config().registry;
  pb.t = t;
  for (int j = 0; j < pb.rule.steps; ++j)
    pb.seeds.push_back(seed(grid.node(pb.first_node + j)));
  const std::vector<Vec> values = steady_sweep(pb);
  State u = solver.make_state();
  for (int j = u.first_node(); j <= u.last_node(); ++j)
    u.at(j) = values[static_cast<size_t>(j - pb.first_node)];
  return u;
}

State sweep_state_from_anchor(const Solver& solver, FluxBranch branch,
                              const Vec& anchor, double t) {
  const int g = solver.config().ghost_width();
  const std::vector<Vec> ghosts = bootstrap_seeds(
      solver.model(), solver.grid(), anchor, 0, g + 1, -1, branch, t);
  // ghosts[i] approximates the steady state at node -i.
  return sweep_state(
      solver, branch,
      [&](double x) {
        const int j =
            static_cast<int>(std::lround((x - solver.grid().x_start) / solver.grid().dx));
        return ghosts[static_cast<size_t>(-j)];
      },
      t);
}

void apply_perturbation(State& u, const Grid& grid, const PerturbationSpec& p) {
  for (int j = 0; j <= grid.n; ++j) {
    const double x = grid.node(j);
    double d = 0.0;
    if (p.shape == PerturbationSpec::Shape::box) {
      if (x >= p.x_lo && x <= p.x_hi) d = p.amplitude;
    } else {
      d = p.amplitude * std::exp(-p.rate * sq(x - p.center));
    }
    u.at(j)[p.component] += d;
  }
}

namespace {

SchemeConfig base_config(const SchemeId& s, const RunOverrides& ov) {
  SchemeConfig c;
  c.weno = WenoOrder::from_p(s.p);
  c.rule = multistep_weights(s.global_flux ? s.family : AdamsFamily::moulton,
                             s.global_flux ? s.order : 4);
  c.global_flux = s.global_flux;
  if (ov.cfl) c.cfl = *ov.cfl;
  return c;
}

struct CaseEntry {
  std::string description;
  int smoke_n;
  PreparedCase (*build)(const SchemeId&, int, const RunOverrides&);
};

void attach_solver(PreparedCase& pc, const SchemeConfig& cfg) {
  pc.solver = std::make_unique<Solver>(*pc.model, pc.grid, cfg);
}

// Underlying steady state for perturbation studies: global-flux schemes use
// the sweep; the baseline marches to its own (approximate) equilibrium.
std::function<State()> march_underlying(const PreparedCase& pc) {
  const Solver* solver = pc.solver.get();
  State init = pc.initial;
  return [solver, init]() {
    return solver->run_to_steady(init).state;
  };
}

PreparedCase build_burgers_mms(const SchemeId& scheme, int n,
                               const RunOverrides& ov) {
  constexpr double kSpeed = 1.0, kX0 = 5.0;
  const auto profile = [](double x, double t) {
    return std::exp(-sq(x - kX0 - kSpeed * t));
  };
  const auto slope = [profile](double x, double t) {
    return -2.0 * (x - kX0 - kSpeed * t) * profile(x, t);
  };
  PreparedCase pc;
  pc.model = std::make_shared<BurgersModel>(
      BurgersModel::manufactured(kSpeed, Geometry{profile, slope}));
  pc.grid = Grid(0.0, 15.0, n);
  SchemeConfig cfg = base_config(scheme, ov);
  cfg.dt_exponent = std::max(1.0, scheme.p / 3.0);
  cfg.boundary = BoundaryPolicy::dirichlet(
      [profile](double x, double t) { return Vec::scalar(profile(x, t)); });
  attach_solver(pc, cfg);
  pc.initial = state_from(*pc.solver, [&](double x) { return Vec::scalar(profile(x, 0.0)); });
  pc.default_t_end = 2.0;
  const Solver* solver = pc.solver.get();
  pc.reference = [solver, profile](double t) {
    return state_from(*solver, [&](double x) { return Vec::scalar(profile(x, t)); });
  };
  return pc;
}

PreparedCase burgers_steady_case(const SchemeId& scheme, int n,
                                 const RunOverrides& ov, Geometry geom,
                                 std::vector<double> jumps) {
  PreparedCase pc;
  pc.model = std::make_shared<BurgersModel>(2, std::move(geom));
  pc.grid = Grid(-1.0, 1.0, n);
  const auto* model = static_cast<const BurgersModel*>(pc.model.get());
  const auto exact = [model](double x) {
    return Vec::scalar(burgers_stationary_value(*model, 1.0, x));
  };
  SchemeConfig cfg = base_config(scheme, ov);
  cfg.boundary = BoundaryPolicy::dirichlet(
      [exact](double x, double) { return exact(x); });
  if (!jumps.empty())
    cfg.registry = locate_singularities(pc.grid, *pc.model, jumps);
  attach_solver(pc, cfg);
  pc.initial = state_from(*pc.solver, exact);
  const Solver* solver = pc.solver.get();
  pc.reference = [solver, exact](double) { return state_from(*solver, exact); };
  if (scheme.global_flux) {
    pc.underlying_steady = [solver, exact]() {
      return sweep_state(*solver, FluxBranch::scalar_positive, exact);
    };
  } else {
    pc.underlying_steady = march_underlying(pc);
  }
  return pc;
}

PreparedCase build_burgers_smooth_steady(const SchemeId& s, int n,
                                         const RunOverrides& ov) {
  PreparedCase pc = burgers_steady_case(
      s, n, ov,
      Geometry::steady([](double x) { return x; }, [](double) { return 1.0; }),
      {});
  pc.steady_by_default = true;
  return pc;
}

PreparedCase build_burgers_oscillatory(const SchemeId& s, int n,
                                       const RunOverrides& ov) {
  PreparedCase pc = burgers_steady_case(
      s, n, ov,
      Geometry::steady([](double x) { return x + 0.1 * std::sin(100.0 * x); },
                       [](double x) { return 1.0 + 10.0 * std::cos(100.0 * x); }),
      {});
  pc.default_t_end = 1.0;
  PerturbationSpec p;
  p.shape = PerturbationSpec::Shape::box;
  p.x_lo = -0.7;
  p.x_hi = -0.5;
  p.amplitude = 0.2;
  pc.perturbation = p;
  pc.ref_scheme = "weno7gf-am8";
  pc.ref_n = 2000;
  return pc;
}

double two_disc_h(double x) {
  if (x <= 0.0) return 0.1 * x;
  if (x <= 0.5) return 0.5 + x;
  return 0.9 + x;
}

PreparedCase build_burgers_two_discontinuities(const SchemeId& s, int n,
                                               const RunOverrides& ov) {
  PreparedCase pc = burgers_steady_case(
      s, n, ov,
      Geometry::steady(two_disc_h,
                       [](double x) { return x <= 0.0 ? 0.1 : 1.0; }),
      {0.0, 0.5});
  pc.default_t_end = 0.2;
  return pc;
}

PreparedCase build_burgers_one_disc_perturbed(const SchemeId& s, int n,
                                              const RunOverrides& ov) {
  PreparedCase pc = burgers_steady_case(
      s, n, ov,
      Geometry::steady([](double x) { return x <= 0.0 ? 0.1 * x : 0.9 + x; },
                       [](double x) { return x <= 0.0 ? 0.1 : 1.0; }),
      {0.0});
  pc.default_t_end = 0.5;
  PerturbationSpec p;
  p.shape = PerturbationSpec::Shape::gaussian;
  p.center = -0.5;
  p.rate = 200.0;
  p.amplitude = 0.3;
  pc.perturbation = p;
  pc.ref_scheme = "weno5gf-am8";
  pc.ref_n = 2000;
  // The case's initial condition is the perturbed stationary solution.
  apply_perturbation(pc.initial, pc.grid, p);
  pc.reference = nullptr;
  return pc;
}

// Lake-at-rest geometry: the momentum source is +g h H_x, so rest states
// satisfy h = η* + H; the usual bottom-elevation bump enters with flipped
// sign.
double lake_h(double x) { return x <= 14.0 ? -swe_bump(x) : 0.1 - swe_bump(x); }

PreparedCase lake_case(const SchemeId& scheme, int n, const RunOverrides& ov) {
  PreparedCase pc;
  pc.model = std::make_shared<ShallowWaterModel>(
      9.81, Geometry::steady(lake_h, [](double x) { return -swe_bump_slope(x); }));
  pc.grid = Grid(0.0, 25.0, n);
  SchemeConfig cfg = base_config(scheme, ov);
  cfg.registry = locate_singularities(pc.grid, *pc.model, std::array{14.0});
  cfg.water_at_rest_fix = scheme.global_flux;
  cfg.boundary = BoundaryPolicy::frozen();
  attach_solver(pc, cfg);
  const Solver* solver = pc.solver.get();
  const ModelSpec* model = pc.model.get();
  if (const NodalField* ht = solver->quad_bathymetry()) {
    pc.initial = solver->make_state();
    for (int j = pc.initial.first_node(); j <= pc.initial.last_node(); ++j)
      pc.initial.at(j) = Vec::pair(2.0 + ht->at(j)[0], 0.0);
  } else {
    pc.initial = state_from(*solver, [model](double x) {
      return Vec::pair(2.0 + model->geometry(x, 0.0), 0.0);
    });
  }
  pc.default_t_end = 2.0;
  State init = pc.initial;
  pc.reference = [init](double) { return init; };
  pc.underlying_steady = [init]() { return init; };
  return pc;
}

PreparedCase build_swe_lake_at_rest(const SchemeId& s, int n,
                                    const RunOverrides& ov) {
  return lake_case(s, n, ov);
}

PreparedCase build_swe_lake_perturbation_small(const SchemeId& s, int n,
                                               const RunOverrides& ov) {
  PreparedCase pc = lake_case(s, n, ov);
  pc.default_t_end = 1.0;
  PerturbationSpec p;
  p.x_lo = 7.5;
  p.x_hi = 9.5;
  p.amplitude = 1e-4;
  pc.perturbation = p;
  pc.ref_scheme = "weno7gf-am8";
  pc.ref_n = 500;
  apply_perturbation(pc.initial, pc.grid, p);
  pc.reference = nullptr;
  return pc;
}

PreparedCase build_swe_lake_riemann(const SchemeId& s, int n,
                                    const RunOverrides& ov) {
  PreparedCase pc = lake_case(s, n, ov);
  pc.default_t_end = 1.0;
  PerturbationSpec p;
  p.x_lo = 0.0;
  p.x_hi = 12.0;
  p.amplitude = 1.0;
  pc.perturbation = p;
  pc.ref_scheme = "weno7gf-am8";
  pc.ref_n = 500;
  apply_perturbation(pc.initial, pc.grid, p);
  pc.reference = nullptr;
  return pc;
}

PreparedCase bernoulli_case(const SchemeId& scheme, int n,
                            const RunOverrides& ov, double h0, double q0,
                            FluxBranch branch, bool reversed) {
  PreparedCase pc;
  pc.model = std::make_shared<ShallowWaterModel>(
      9.81, Geometry::steady(swe_bump, swe_bump_slope));
  pc.grid = Grid(0.0, 25.0, n);
  const auto* swe = static_cast<const ShallowWaterModel*>(pc.model.get());
  const double g = swe->gravity();
  const double q = reversed ? -q0 : q0;
  const double c2 = 0.5 * sq(q) / sq(h0) + g * h0 - g * swe->geometry(0.0, 0.0);
  const auto exact = [swe, q, c2, branch](double x) {
    return swe_bernoulli_state(*swe, q, c2, branch, x);
  };
  SchemeConfig cfg = base_config(scheme, ov);
  if (branch == FluxBranch::swe_subcritical) {
    BoundarySide inlet = BoundarySide::subcritical_inlet(q);
    BoundarySide outlet = BoundarySide::subcritical_outlet(h0);
    cfg.boundary = reversed ? BoundaryPolicy{outlet, inlet}
                            : BoundaryPolicy{inlet, outlet};
  } else {
    BoundarySide inlet = BoundarySide::supercritical_inlet(h0, q);
    cfg.boundary = reversed ? BoundaryPolicy{BoundarySide::extrapolate(), inlet}
                            : BoundaryPolicy{inlet, BoundarySide::extrapolate()};
    cfg.steady_tol = 2e-12;
  }
  attach_solver(pc, cfg);
  pc.initial = state_from(*pc.solver, exact);
  pc.steady_by_default = true;
  const Solver* solver = pc.solver.get();
  pc.reference = [solver, exact](double) { return state_from(*solver, exact); };
  if (scheme.global_flux) {
    pc.underlying_steady = [solver, exact, branch]() {
      return sweep_state(*solver, branch, exact);
    };
  } else {
    pc.underlying_steady = march_underlying(pc);
  }
  PerturbationSpec p;
  p.x_lo = 7.5;
  p.x_hi = 9.5;
  p.amplitude = 1e-4;
  pc.perturbation = p;
  pc.ref_scheme = "weno7gf-am8";
  pc.ref_n = 500;
  return pc;
}

PreparedCase build_swe_subcritical(const SchemeId& s, int n, const RunOverrides& ov) {
  return bernoulli_case(s, n, ov, 2.0, 4.42, FluxBranch::swe_subcritical, false);
}
PreparedCase build_swe_subcritical_reversed(const SchemeId& s, int n,
                                            const RunOverrides& ov) {
  return bernoulli_case(s, n, ov, 2.0, 4.42, FluxBranch::swe_subcritical, true);
}
PreparedCase build_swe_supercritical(const SchemeId& s, int n,
                                     const RunOverrides& ov) {
  return bernoulli_case(s, n, ov, 2.0, 24.0, FluxBranch::swe_supercritical, false);
}
PreparedCase build_swe_supercritical_reversed(const SchemeId& s, int n,
                                              const RunOverrides& ov) {
  return bernoulli_case(s, n, ov, 2.0, 24.0, FluxBranch::swe_supercritical, true);
}

PreparedCase build_swe_transcritical(const SchemeId& scheme, int n,
                                     const RunOverrides& ov) {
  const auto bump = [](double x) {
    return (x > 8.0 && x < 12.0) ? 0.2 - 0.05 * sq(x - 10.0) : 0.0;
  };
  const auto bump_slope = [](double x) {
    return (x > 8.0 && x < 12.0) ? -0.1 * (x - 10.0) : 0.0;
  };
  PreparedCase pc;
  pc.model = std::make_shared<ShallowWaterModel>(
      9.81, Geometry::steady([bump](double x) { return -bump(x); },
                             [bump_slope](double x) { return -bump_slope(x); }));
  pc.grid = Grid(0.0, 25.0, n);
  const auto* swe = static_cast<const ShallowWaterModel*>(pc.model.get());
  const double g = swe->gravity();
  const double q = 1.53;
  const double hs = std::cbrt(q * q / g);
  // Criticality at the crest fixes the Bernoulli constant.
  const double c2 = 1.5 * g * hs - g * swe->geometry(10.0, 0.0);
  const auto exact = [swe, q, c2](double x) {
    const FluxBranch b =
        x < 10.0 ? FluxBranch::swe_subcritical : FluxBranch::swe_supercritical;
    return swe_bernoulli_state(*swe, q, c2, b, x);
  };
  SchemeConfig cfg = base_config(scheme, ov);
  cfg.boundary = BoundaryPolicy{BoundarySide::subcritical_inlet(q),
                                BoundarySide::extrapolate()};
  cfg.steady_tol = 1e-12;
  attach_solver(pc, cfg);
  pc.initial = state_from(*pc.solver, exact);
  pc.steady_by_default = true;
  const Solver* solver = pc.solver.get();
  pc.reference = [solver, exact](double) { return state_from(*solver, exact); };
  pc.underlying_steady = march_underlying(pc);
  PerturbationSpec p;
  p.x_lo = 7.5;
  p.x_hi = 9.5;
  p.amplitude = 1e-4;
  pc.perturbation = p;
  pc.ref_scheme = "weno7gf-am8";
  pc.ref_n = 1000;
  return pc;
}

PreparedCase friction_khq_case(const SchemeId& scheme, int n,
                               const RunOverrides& ov,
                               const FrictionSteadyProfile& profile,
                               FluxBranch branch) {
  PreparedCase pc;
  pc.model = std::make_shared<ShallowWaterModel>(
      profile.g,
      Geometry::steady([profile](double x) { return profile.geometry(x); },
                       [profile](double x) { return profile.geometry_slope(x); }),
      FrictionLaw::quadratic_depth(profile.k));
  pc.grid = Grid(0.0, 1.0, n);
  const auto exact = [profile](double x) {
    return Vec::pair(profile.depth(x), profile.q0);
  };
  SchemeConfig cfg = base_config(scheme, ov);
  cfg.boundary = BoundaryPolicy::dirichlet(
      [exact](double x, double) { return exact(x); });
  attach_solver(pc, cfg);
  pc.initial = state_from(*pc.solver, exact);
  pc.steady_by_default = true;
  const Solver* solver = pc.solver.get();
  pc.reference = [solver, exact](double) { return state_from(*solver, exact); };
  if (scheme.global_flux) {
    pc.underlying_steady = [solver, exact, branch]() {
      return sweep_state(*solver, branch, exact);
    };
  } else {
    pc.underlying_steady = march_underlying(pc);
  }
  PerturbationSpec p;
  p.x_lo = 0.1;
  p.x_hi = 0.2;
  p.amplitude = 1e-4;
  pc.perturbation = p;
  pc.ref_scheme = "weno5gf-am8";
  pc.ref_n = 2000;
  return pc;
}

PreparedCase build_swe_friction_khq_super(const SchemeId& s, int n,
                                          const RunOverrides& ov) {
  return friction_khq_case(s, n, ov,
                           FrictionSteadyProfile{1.0, 1.5, 2.5, 0.5, 2.0, 0.3},
                           FluxBranch::swe_supercritical);
}
PreparedCase build_swe_friction_khq_sub(const SchemeId& s, int n,
                                        const RunOverrides& ov) {
  return friction_khq_case(s, n, ov,
                           FrictionSteadyProfile{1.0, 0.3, 2.5, 0.25, 0.5, 0.5},
                           FluxBranch::swe_subcritical);
}

PreparedCase manning_case(const SchemeId& scheme, int n, const RunOverrides& ov,
                          double h0, double q0, FluxBranch branch) {
  const double g = 9.81, k = 0.05;
  // Normal-flow slope: g h H_x balances the Manning drag at the inflow state,
  // so a steady profile exists across the whole channel.
  const double sigma = k * q0 * q0 / (g * std::pow(h0, 10.0 / 3.0));
  PreparedCase pc;
  pc.model = std::make_shared<ShallowWaterModel>(
      g,
      Geometry::steady([sigma](double x) { return sigma * x + swe_bump(x); },
                       [sigma](double x) { return sigma + swe_bump_slope(x); }),
      FrictionLaw::manning(k));
  pc.grid = Grid(0.0, 25.0, n);
  SchemeConfig cfg = base_config(scheme, ov);
  cfg.boundary = BoundaryPolicy::frozen();
  cfg.steady_tol = 2e-12;
  attach_solver(pc, cfg);
  const Solver* solver = pc.solver.get();
  const Vec anchor = Vec::pair(h0, q0);
  if (scheme.global_flux) {
    pc.initial = sweep_state_from_anchor(*solver, branch, anchor);
  } else {
    // The baseline has no discrete steady sweep; start from the smooth
    // near-normal profile.
    pc.initial = state_from(*solver, [&](double) { return anchor; });
  }
  pc.default_t_end = 2.0;
  State init = pc.initial;
  pc.reference = [init](double) { return init; };
  pc.underlying_steady = [init]() { return init; };
  PerturbationSpec p;
  p.x_lo = 7.5;
  p.x_hi = 9.5;
  p.amplitude = 1e-4;
  pc.perturbation = p;
  pc.ref_scheme = "weno7gf-ab8";
  pc.ref_n = 1000;
  return pc;
}

PreparedCase build_swe_friction_manning_super(const SchemeId& s, int n,
                                              const RunOverrides& ov) {
  return manning_case(s, n, ov, 2.0, 24.0, FluxBranch::swe_supercritical);
}
PreparedCase build_swe_friction_manning_sub(const SchemeId& s, int n,
                                            const RunOverrides& ov) {
  return manning_case(s, n, ov, 2.0, 4.42, FluxBranch::swe_subcritical);
}

const std::map<std::string, CaseEntry>& registry() {
  static const std::map<std::string, CaseEntry> reg = {
      {"burgers-mms",
       {"Burgers, traveling manufactured solution (S = U − C, moving H)", 60,
        build_burgers_mms}},
      {"burgers-smooth-steady",
       {"Burgers, smooth steady state U* = e^x (S = U², H = x)", 20,
        build_burgers_smooth_steady}},
      {"burgers-oscillatory",
       {"Burgers, highly oscillatory H = x + 0.1 sin(100x)", 100,
        build_burgers_oscillatory}},
      {"burgers-two-discontinuities",
       {"Burgers, piecewise H with jumps at x = 0 (node) and x = 0.5 (face)",
        102, build_burgers_two_discontinuities}},
      {"burgers-one-discontinuity-perturbed",
       {"Burgers, perturbed stationary solution over one H jump", 100,
        build_burgers_one_disc_perturbed}},
      {"swe-lake-at-rest",
       {"Shallow water, lake at rest over a discontinuous bump", 25,
        build_swe_lake_at_rest}},
      {"swe-lake-perturbation-small",
       {"Shallow water, 1e-4 perturbation of the lake at rest", 100,
        build_swe_lake_perturbation_small}},
      {"swe-lake-riemann",
       {"Shallow water, unit-height Riemann perturbation of the lake", 100,
        build_swe_lake_riemann}},
      {"swe-subcritical",
       {"Shallow water, subcritical steady flow over a bump (q = 4.42)", 25,
        build_swe_subcritical}},
      {"swe-subcritical-reversed",
       {"Shallow water, reversed subcritical steady flow", 50,
        build_swe_subcritical_reversed}},
      {"swe-supercritical",
       {"Shallow water, supercritical steady flow over a bump (q = 24)", 25,
        build_swe_supercritical}},
      {"swe-supercritical-reversed",
       {"Shallow water, reversed supercritical steady flow", 50,
        build_swe_supercritical_reversed}},
      {"swe-transcritical",
       {"Shallow water, transcritical flow over a parabolic bump", 50,
        build_swe_transcritical}},
      {"swe-friction-khq-super",
       {"Shallow water + κ = k h|q| friction, supercritical analytic steady",
        20, build_swe_friction_khq_super}},
      {"swe-friction-khq-sub",
       {"Shallow water + κ = k h|q| friction, subcritical analytic steady", 20,
        build_swe_friction_khq_sub}},
      {"swe-friction-manning-super",
       {"Shallow water + Manning friction, supercritical discrete steady", 20,
        build_swe_friction_manning_super}},
      {"swe-friction-manning-sub",
       {"Shallow water + Manning friction, subcritical discrete steady", 20,
        build_swe_friction_manning_sub}},
  };
  return reg;
}

const CaseEntry& find_case(const std::string& id) {
  const auto it = registry().find(id);
  if (it == registry().end()) {
    std::string msg = "unknown case id '" + id + "'; registered cases:";
    for (const auto& [key, _] : registry()) msg += " " + key;
    throw ConfigError(msg);
  }
  return it->second;
}

}  // namespace

std::vector<std::string> case_catalog() {
  std::vector<std::string> out;
  for (const auto& [key, _] : registry()) out.push_back(key);
  return out;
}

std::string case_description(const std::string& case_id) {
  return find_case(case_id).description;
}

int case_smoke_n(const std::string& case_id) { return find_case(case_id).smoke_n; }

PreparedCase prepare_case(const std::string& case_id, const SchemeId& scheme,
                          int n, const RunOverrides& overrides) {
  PreparedCase pc = find_case(case_id).build(scheme, n, overrides);
  pc.case_id = case_id;
  return pc;
}

SolveResult run_case(const std::string& case_id, const std::string& scheme_id,
                     int n, const RunOverrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  const SchemeId scheme = SchemeId::parse(scheme_id);
  PreparedCase pc = prepare_case(case_id, scheme, n, overrides);
  SolveResult res;
  res.grid = pc.grid;
  res.model = pc.model;
  res.steady_mode = overrides.t_end ? false
                    : overrides.steady.value_or(pc.steady_by_default);
  res.t_end = overrides.t_end.value_or(pc.default_t_end);
  if (res.steady_mode) {
    Solver::SteadyResult sr = pc.solver->run_to_steady(pc.initial);
    res.final_state = std::move(sr.state);
    res.converged = sr.converged;
    res.steps = sr.steps;
  } else {
    res.final_state = pc.solver->run_to_time(pc.initial, 0.0, res.t_end);
  }
  if (pc.reference) {
    const State ref = pc.reference(res.steady_mode ? 0.0 : res.t_end);
    res.l1 = l1_error(res.final_state, ref, pc.grid);
    res.has_error = true;
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::vector<ConvergenceRow> convergence_study(const std::string& case_id,
                                              const std::string& scheme_id,
                                              std::span<const int> n_list,
                                              const RunOverrides& overrides) {
  if (n_list.empty()) throw ConfigError("convergence_study: empty n list");
  for (size_t i = 0; i + 1 < n_list.size(); ++i)
    if (n_list[i + 1] <= n_list[i])
      throw ConfigError("convergence_study: n list must be ascending");
  // Runs are independent; fan them out and assemble in ladder order.
  std::vector<std::future<SolveResult>> runs;
  for (int n : n_list)
    runs.push_back(std::async(std::launch::async, [=, &overrides] {
      return run_case(case_id, scheme_id, n, overrides);
    }));
  std::vector<ConvergenceRow> rows;
  for (size_t i = 0; i < runs.size(); ++i) {
    const SolveResult r = runs[i].get();
    if (!r.has_error)
      throw ConfigError("convergence_study: case '" + case_id +
                        "' has no reference solution");
    ConvergenceRow row;
    row.n = n_list[i];
    row.err = r.l1;
    row.order.assign(row.err.size(), std::numeric_limits<double>::quiet_NaN());
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      const double ratio = std::log(double(row.n) / prev.n);
      for (size_t c = 0; c < row.err.size(); ++c)
        if (prev.err[c] > 0.0 && row.err[c] > 0.0)
          row.order[c] = std::log(prev.err[c] / row.err[c]) / ratio;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PerturbationTrace perturbation_study(const std::string& case_id,
                                     const std::string& scheme_id, int n,
                                     double t_end, double amplitude) {
  const SchemeId scheme = SchemeId::parse(scheme_id);
  PreparedCase pc = prepare_case(case_id, scheme, n, {});
  if (!pc.perturbation)
    throw ConfigError("case '" + case_id + "' defines no perturbation");
  if (!pc.underlying_steady)
    throw ConfigError("case '" + case_id + "' has no underlying steady state");
  const State base = pc.underlying_steady();
  State perturbed = base;
  PerturbationSpec p = *pc.perturbation;
  p.amplitude = amplitude;
  apply_perturbation(perturbed, pc.grid, p);
  const State final_state = pc.solver->run_to_time(perturbed, 0.0, t_end);
  PerturbationTrace trace;
  const int m = final_state.components();
  trace.deviation.resize(static_cast<size_t>(m));
  for (int j = 0; j <= pc.grid.n; ++j) {
    trace.x.push_back(pc.grid.node(j));
    for (int c = 0; c < m; ++c)
      trace.deviation[static_cast<size_t>(c)].push_back(final_state.at(j)[c] -
                                                        base.at(j)[c]);
  }
  return trace;
}

std::string format_sig17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_state_csv(std::ostream& os, const Grid& grid, const State& u,
                     const ModelSpec& model) {
  const bool swe = model.components() == 2;
  os << (swe ? "x,h,q,eta,H\n" : "x,u,H\n");
  for (int j = 0; j <= grid.n; ++j) {
    const double x = grid.node(j);
    const double h_geom = model.geometry(x, 0.0);
    os << format_sig17(x) << ',' << format_sig17(u.at(j)[0]);
    if (swe)
      os << ',' << format_sig17(u.at(j)[1]) << ','
         << format_sig17(u.at(j)[0] - h_geom);
    os << ',' << format_sig17(h_geom) << '\n';
  }
}

void write_convergence_csv(std::ostream& os,
                           std::span<const ConvergenceRow> rows) {
  if (rows.empty()) return;
  const size_t m = rows.front().err.size();
  os << "n";
  for (size_t c = 0; c < m; ++c)
    os << ",err_c" << c << ",ord_c" << c;
  os << '\n';
  for (const ConvergenceRow& row : rows) {
    os << row.n;
    for (size_t c = 0; c < m; ++c) {
      os << ',' << format_sig17(row.err[c]) << ',';
      if (std::isnan(row.order[c]))
        os << '-';
      else
        os << format_sig17(row.order[c]);
    }
    os << '\n';
  }
}

void write_perturbation_csv(std::ostream& os, const PerturbationTrace& trace,
                            const ModelSpec& model) {
  const bool swe = model.components() == 2;
  os << (swe ? "x,deta,dq\n" : "x,du\n");
  for (size_t i = 0; i < trace.x.size(); ++i) {
    os << format_sig17(trace.x[i]) << ',' << format_sig17(trace.deviation[0][i]);
    if (swe) os << ',' << format_sig17(trace.deviation[1][i]);
    os << '\n';
  }
}

}  // namespace gfweno
