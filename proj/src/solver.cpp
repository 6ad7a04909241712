#include "gfweno/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gfweno {

Solver::Solver(const ModelSpec& model, const Grid& grid, SchemeConfig config)
    : model_(&model),
      grid_(grid),
      cfg_(std::move(config)),
      quad_(cfg_.rule, cfg_.registry) {
  if (!(cfg_.cfl > 0.0 && cfg_.cfl < 1.0))
    throw ConfigError("solver: cfl must lie in (0, 1)");
  cfg_.registry.validate(cfg_.rule, grid_.n, cfg_.ghost_width());
  if (cfg_.water_at_rest_fix) {
    if (model.components() != 2)
      throw ConfigError("solver: water-at-rest fix applies to shallow water only");
    htilde_ = accumulate_bathymetry(grid_, model, quad_, cfg_.ghost_width());
  }
}

State Solver::make_state() const {
  return State(grid_.n, model_->components(), cfg_.ghost_width());
}

void Solver::fill_ghosts(State& u, double t) const {
  const int g = u.ghost();
  const int n = grid_.n;
  const auto fill_side = [&](const BoundarySide& side, bool left) {
    switch (side.kind) {
      case BoundarySide::Kind::periodic:
        for (int j = 1; j <= g; ++j) {
          if (left)
            u.at(-j) = u.at(n - j);
          else
            u.at(n + j) = u.at(j);
        }
        return;
      case BoundarySide::Kind::extrapolate:
        for (int j = 1; j <= g; ++j) {
          if (left)
            u.at(-j) = u.at(0);
          else
            u.at(n + j) = u.at(n);
        }
        return;
      case BoundarySide::Kind::dirichlet:
        for (int j = 1; j <= g; ++j) {
          const int node = left ? -j : n + j;
          u.at(node) = side.values(grid_.node(node), t);
        }
        return;
      case BoundarySide::Kind::frozen:
        return;
      case BoundarySide::Kind::swe_subcritical_inlet:
        for (int j = 1; j <= g; ++j) {
          const int node = left ? -j : n + j;
          const Vec& edge = u.at(left ? 0 : n);
          u.at(node) = Vec::pair(edge[0], side.fixed_q);
        }
        return;
      case BoundarySide::Kind::swe_subcritical_outlet:
        for (int j = 1; j <= g; ++j) {
          const int node = left ? -j : n + j;
          const Vec& edge = u.at(left ? 0 : n);
          u.at(node) = Vec::pair(side.fixed_h, edge[1]);
        }
        return;
      case BoundarySide::Kind::swe_supercritical_inlet:
        for (int j = 1; j <= g; ++j) {
          const int node = left ? -j : n + j;
          u.at(node) = Vec::pair(side.fixed_h, side.fixed_q);
        }
        return;
    }
  };
  fill_side(cfg_.boundary.left, true);
  fill_side(cfg_.boundary.right, false);
}

void Solver::check_states(const State& u, const char* context) const {
  for (int j = u.first_node(); j <= u.last_node(); ++j)
    model_->check_admissible(u.at(j),
                             std::string(context) + ", node " + std::to_string(j));
}

NodalField Solver::rhs_interior(const State& u, double t) const {
  check_states(u, "rhs");
  const int n = grid_.n;
  const int m = model_->components();
  NodalField modified(n, m, u.ghost());
  if (cfg_.global_flux) {
    GlobalFluxOptions opt;
    opt.water_at_rest = cfg_.water_at_rest_fix;
    opt.quad_bathymetry = htilde_ ? &*htilde_ : nullptr;
    modified = build_global_flux(grid_, u, *model_, quad_, t, opt).modified;
  } else {
    for (int j = u.first_node(); j <= u.last_node(); ++j)
      modified.at(j) = model_->flux(u.at(j));
  }

  std::vector<Vec> fhat(static_cast<size_t>(n + 2));
  for (int i = -1; i <= n; ++i)
    fhat[static_cast<size_t>(i + 1)] =
        interface_flux(modified, u, *model_, cfg_.weno, i, cfg_.weno_eps);

  NodalField out(n, m, u.ghost());
  const double inv_dx = 1.0 / grid_.dx;
  for (int i = 0; i <= n; ++i) {
    Vec r = fhat[static_cast<size_t>(i + 1)] - fhat[static_cast<size_t>(i)];
    r *= -inv_dx;
    if (!cfg_.global_flux)
      r += source_integrand(*model_, u.at(i), grid_.node(i), t);
    out.at(i) = r;
  }
  return out;
}

NodalField Solver::rhs(const State& u, double t) const { return rhs_interior(u, t); }

double Solver::cfl_dt(const State& u) const {
  double radius = 0.0;
  for (int i = 0; i < grid_.n; ++i) {
    const Vec lam = model_->eigenvalues(model_->roe_state(u.at(i), u.at(i + 1)));
    for (int c = 0; c < lam.size(); ++c)
      radius = std::max(radius, std::abs(lam[c]));
  }
  const double base = cfg_.cfl * std::pow(grid_.dx, cfg_.dt_exponent);
  if (radius == 0.0) return base;
  return base / radius;
}

namespace {

// u_out := a·u_a + b·(u_b + dt·L) on the interior nodes.
void combine(State& out, double a, const State& ua, double b, const State& ub,
             double dt, const NodalField& l, int n) {
  const int m = out.components();
  for (int i = 0; i <= n; ++i) {
    Vec v(m);
    for (int c = 0; c < m; ++c)
      v[c] = a * ua.at(i)[c] + b * (ub.at(i)[c] + dt * l.at(i)[c]);
    out.at(i) = v;
  }
}

}  // namespace

State Solver::step(const State& u, double t, double dt) const {
  const int n = grid_.n;
  State s0 = u;
  fill_ghosts(s0, t);
  const NodalField l0 = rhs_interior(s0, t);

  State s1 = s0;
  combine(s1, 0.0, s0, 1.0, s0, dt, l0, n);
  check_states(s1, "ssp-rk3 stage 1");
  fill_ghosts(s1, t + dt);
  const NodalField l1 = rhs_interior(s1, t + dt);

  State s2 = s1;
  combine(s2, 0.75, s0, 0.25, s1, dt, l1, n);
  check_states(s2, "ssp-rk3 stage 2");
  fill_ghosts(s2, t + 0.5 * dt);
  const NodalField l2 = rhs_interior(s2, t + 0.5 * dt);

  State s3 = s2;
  combine(s3, 1.0 / 3.0, s0, 2.0 / 3.0, s2, dt, l2, n);
  check_states(s3, "ssp-rk3 stage 3");
  return s3;
}

State Solver::run_to_time(State u, double t0, double t_end) const {
  if (t_end < t0) throw ConfigError("run_to_time: t_end before start time");
  double t = t0;
  long steps = 0;
  while (t < t_end) {
    fill_ghosts(u, t);
    double dt = cfl_dt(u);
    dt = std::min(dt, t_end - t);
    u = step(u, t, dt);
    t += dt;
    if (++steps > cfg_.max_steps)
      throw SolverError("run_to_time: exceeded max_steps before reaching t_end");
  }
  return u;
}

Solver::SteadyResult Solver::run_to_steady(State u, double t0) const {
  SteadyResult result;
  double t = t0;
  double best = std::numeric_limits<double>::infinity();
  long since_best = 0;
  State best_state = u;
  for (long step_count = 0; step_count < cfg_.max_steps; ++step_count) {
    fill_ghosts(u, t);
    const double res = steady_residual(u, t);
    result.residuals.push_back(res);
    if (res < best) {
      best = res;
      best_state = u;
      since_best = 0;
    } else {
      ++since_best;
    }
    if (res <= cfg_.steady_tol) {
      result.state = u;
      result.converged = true;
      result.steps = step_count;
      return result;
    }
    if (since_best > 2000) break;  // residual floored by roundoff
    const double dt = cfl_dt(u);
    u = step(u, t, dt);
    t += dt;
  }
  result.state = best_state;
  result.converged = false;
  result.steps = static_cast<long>(result.residuals.size());
  return result;
}

double Solver::steady_residual(const State& u, double t) const {
  return rhs_interior(u, t).interior_inf_norm();
}

}  // namespace gfweno
