#include "gfweno/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gfweno {
namespace {

// Safeguarded Newton on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
double bracketed_newton(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo,
                        double hi, double guess) {
  double a = lo, b = hi;
  double fa = f(a);
  double x = std::clamp(guess, a, b);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const double d = df(x);
    double next = d != 0.0 ? x - fx / d : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

double sonic_depth(double g, double q) { return std::cbrt(q * q / g); }

// Depth with q²/h + g h²/2 = f2 on the requested branch.
double swe_flux_depth(double g, double q, double f2, FluxBranch branch) {
  const auto psi = [&](double h) { return q * q / h + 0.5 * g * h * h; };
  const auto dpsi = [&](double h) { return -q * q / (h * h) + g * h; };
  if (q == 0.0) {
    if (!(f2 > 0)) throw NoRootError("swe flux inversion: non-positive target", -f2);
    return std::sqrt(2.0 * f2 / g);
  }
  const double hs = sonic_depth(g, q);
  const double fmin = psi(hs);
  if (f2 < fmin)
    throw NoRootError("swe flux inversion: target below the sonic minimum",
                      fmin - f2);
  const auto fn = [&](double h) { return psi(h) - f2; };
  if (branch == FluxBranch::swe_subcritical) {
    double hi = std::sqrt(2.0 * f2 / g) + hs + 1.0;
    return bracketed_newton(fn, dpsi, hs, hi, std::sqrt(2.0 * f2 / g));
  }
  double lo = std::min(q * q / f2, hs);
  while (fn(lo) < 0.0) lo *= 0.5;
  return bracketed_newton(fn, dpsi, lo, hs, q * q / f2);
}

}  // namespace

double swe_bernoulli_depth(double g, double q, double rhs, FluxBranch branch) {
  const auto energy = [&](double h) { return 0.5 * q * q / (h * h) + g * h; };
  const auto denergy = [&](double h) { return -q * q / (h * h * h) + g; };
  if (q == 0.0) {
    if (!(rhs > 0)) throw NoRootError("bernoulli: non-positive energy", -rhs);
    return rhs / g;
  }
  const double hs = sonic_depth(g, q);
  const double emin = energy(hs);
  if (rhs < emin)
    throw NoRootError("bernoulli: energy below the sonic minimum", emin - rhs);
  const auto fn = [&](double h) { return energy(h) - rhs; };
  if (branch == FluxBranch::swe_subcritical) {
    const double hi = rhs / g + hs + 1.0;
    return bracketed_newton(fn, denergy, hs, hi, rhs / g);
  }
  double lo = std::min(std::abs(q) / std::sqrt(2.0 * rhs), hs);
  while (fn(lo) < 0.0) lo *= 0.5;
  return bracketed_newton(fn, denergy, lo, hs, lo);
}

Vec invert_flux(const ModelSpec& model, const Vec& f_target, FluxBranch branch) {
  if (model.components() == 1) {
    const double f = f_target[0];
    if (f < 0.0) throw NoRootError("burgers flux inversion: negative target", -f);
    const double u = std::sqrt(2.0 * f);
    return Vec::scalar(branch == FluxBranch::scalar_negative ? -u : u);
  }
  const auto& swe = dynamic_cast<const ShallowWaterModel&>(model);
  const double q = f_target[0];
  const double h = swe_flux_depth(swe.gravity(), q, f_target[1], branch);
  return Vec::pair(h, q);
}

Vec admissible_jump(const ModelSpec& model, const Vec& u_left, double h_left,
                    double h_right, FluxBranch branch) {
  const double jump = h_right - h_left;
  if (const auto* burgers = dynamic_cast<const BurgersModel*>(&model)) {
    const int p = burgers->exponent();
    const double u = u_left[0];
    if (p == 1) return Vec::scalar(u + jump);
    if (p == 2) return Vec::scalar(u * std::exp(jump));
    // U^{2-p}/(2-p) − H invariant.
    const double w = std::pow(u, 2 - p) + (2 - p) * jump;
    if (!(w > 0.0))
      throw InadmissibleJumpError("burgers: no admissible state across the jump");
    return Vec::scalar(std::pow(w, 1.0 / (2 - p)));
  }
  const auto& swe = dynamic_cast<const ShallowWaterModel&>(model);
  const double g = swe.gravity();
  const double q = u_left[1];
  const double hl = u_left[0];
  const double rhs = 0.5 * q * q / (hl * hl) + g * hl + g * jump;
  try {
    return Vec::pair(swe_bernoulli_depth(g, q, rhs, branch), q);
  } catch (const NoRootError& e) {
    throw InadmissibleJumpError(std::string("swe: no admissible state across the jump (") +
                                e.what() + ")");
  }
}

std::vector<Vec> steady_sweep(const SteadyProblem& pb) {
  const ModelSpec& model = *pb.model;
  const MultiStepRule& rule = pb.rule;
  const int s = rule.steps;
  if (static_cast<int>(pb.seeds.size()) != s)
    throw ConfigError("steady_sweep: seed count must equal the rule's steps");
  const int count = pb.last_node - pb.first_node + 1;
  if (count < s) throw ConfigError("steady_sweep: node range shorter than the seed band");
  SourceQuadrature quad(rule, pb.registry);
  const double dx = pb.grid.dx;

  std::vector<Vec> u(static_cast<size_t>(count));
  const auto node_of = [&](int j) { return pb.first_node + j; };
  for (int j = 0; j < s; ++j) u[static_cast<size_t>(j)] = pb.seeds[static_cast<size_t>(j)];

  for (int j = s; j < count; ++j) {
    const int cell = node_of(j) - 1;  // integrate over [x_{j-1}, x_j]
    const CellQuadrature cq = quad.cell(cell);
    if (cq.kind == CellQuadrature::Kind::singular) {
      u[static_cast<size_t>(j)] = admissible_jump(
          model, u[static_cast<size_t>(j - 1)],
          model.geometry(pb.grid.node(cell), pb.t),
          model.geometry(pb.grid.node(cell + 1), pb.t), pb.branch);
      continue;
    }
    const auto psi = [&](const Vec& state, int node) {
      return source_integrand(model, state, pb.grid.node(node), pb.t);
    };
    const int n = static_cast<int>(cq.weights.size());
    const bool implicit_last = cq.last_node() == node_of(j);
    Vec base = model.flux(u[static_cast<size_t>(j - 1)]);
    const int explicit_count = implicit_last ? n - 1 : n;
    for (int m = 0; m < explicit_count; ++m) {
      const int node = cq.first_node + m;
      base += (dx * cq.weights[static_cast<size_t>(m)]) *
              psi(u[static_cast<size_t>(node - pb.first_node)], node);
    }
    if (!implicit_last) {
      u[static_cast<size_t>(j)] = invert_flux(model, base, pb.branch);
      continue;
    }
    // Moulton: fixed point on the implicit node, damped when non-monotone.
    // Transient iterates can overshoot past the sonic minimum on coarse
    // grids; halve back toward the last invertible flux instead of aborting.
    const Vec f_anchor = model.flux(u[static_cast<size_t>(j - 1)]);
    const auto guarded_invert = [&](Vec& target) {
      for (int halvings = 0; halvings < 40; ++halvings) {
        try {
          return invert_flux(model, target, pb.branch);
        } catch (const NoRootError&) {
          target = 0.5 * (target + f_anchor);
        }
      }
      return invert_flux(model, target, pb.branch);
    };
    const double wlast = dx * cq.weights[static_cast<size_t>(n - 1)];
    Vec f = base + wlast * psi(u[static_cast<size_t>(j - 1)], node_of(j));
    double prev_delta = std::numeric_limits<double>::infinity();
    bool done = false;
    for (int it = 0; it < 100; ++it) {
      const Vec unew = guarded_invert(f);
      Vec fnew = base + wlast * psi(unew, node_of(j));
      const double delta = (fnew - f).inf_norm();
      if (delta > prev_delta) fnew = 0.5 * (fnew + f);
      const double scale = std::max(1.0, f.inf_norm());
      if (delta <= 1e-13 * scale || delta == prev_delta) {
        f = fnew;
        done = true;
        break;
      }
      prev_delta = delta;
      f = fnew;
    }
    if (!done)
      throw IterationError("steady_sweep: implicit node did not converge at node " +
                               std::to_string(node_of(j)),
                           prev_delta);
    u[static_cast<size_t>(j)] = invert_flux(model, f, pb.branch);
  }
  return u;
}

std::vector<Vec> bootstrap_seeds(const ModelSpec& model, const Grid& grid,
                                 const Vec& u_anchor, int anchor_node,
                                 int count, int direction, FluxBranch branch,
                                 double t) {
  if (direction != 1 && direction != -1)
    throw ConfigError("bootstrap_seeds: direction must be +1 or -1");
  std::vector<Vec> seeds;
  seeds.reserve(static_cast<size_t>(count));
  seeds.push_back(u_anchor);
  const auto rhs = [&](const Vec& u, double x) {
    return source_integrand(model, u, x, t);
  };
  Vec f = model.flux(u_anchor);
  for (int j = 1; j < count; ++j) {
    const double x0 = grid.node(anchor_node + direction * (j - 1));
    const int sub = 10;
    const double h = direction * grid.dx / sub;
    double x = x0;
    for (int step = 0; step < sub; ++step) {
      const Vec u1 = invert_flux(model, f, branch);
      const Vec k1 = rhs(u1, x);
      const Vec u2 = invert_flux(model, f + 0.5 * h * k1, branch);
      const Vec k2 = rhs(u2, x + 0.5 * h);
      const Vec u3 = invert_flux(model, f + 0.5 * h * k2, branch);
      const Vec k3 = rhs(u3, x + 0.5 * h);
      const Vec u4 = invert_flux(model, f + h * k3, branch);
      const Vec k4 = rhs(u4, x + h);
      f += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      x += h;
    }
    seeds.push_back(invert_flux(model, f, branch));
  }
  return seeds;
}

double burgers_stationary_value(const BurgersModel& model, double c, double x,
                                double t) {
  const int p = model.exponent();
  const double h = model.geometry(x, t);
  if (p == 2) return c * std::exp(h);
  return std::pow((2 - p) * (c + h), 1.0 / (2 - p));
}

Vec swe_bernoulli_state(const ShallowWaterModel& model, double c1, double c2,
                        FluxBranch branch, double x, double t) {
  const double rhs = c2 + model.gravity() * model.geometry(x, t);
  return Vec::pair(swe_bernoulli_depth(model.gravity(), c1, rhs, branch), c1);
}

double FrictionSteadyProfile::z(double x) const {
  const double e = std::exp(1.0);
  return a - b * (c * x * std::exp(std::cos(4 * M_PI * x)) - 1.0 / e) / (e - 1.0 / e);
}

double FrictionSteadyProfile::dz(double x) const {
  const double e = std::exp(1.0);
  const double w = std::exp(std::cos(4 * M_PI * x));
  return -b * c * w * (1.0 - 4 * M_PI * x * std::sin(4 * M_PI * x)) / (e - 1.0 / e);
}

double FrictionSteadyProfile::depth(double x) const {
  const double r = 1.0 + (2.0 * h0 * h0 * g / (q0 * q0)) * (z(x0) - z(x)) -
                   2.0 * k * h0 * h0 * (x - x0);
  if (!(r > 0.0)) throw SolverError("friction profile: radicand not positive");
  return h0 / std::sqrt(r);
}

double FrictionSteadyProfile::ddepth(double x) const {
  const double r = 1.0 + (2.0 * h0 * h0 * g / (q0 * q0)) * (z(x0) - z(x)) -
                   2.0 * k * h0 * h0 * (x - x0);
  const double dr = -(2.0 * h0 * h0 * g / (q0 * q0)) * dz(x) - 2.0 * k * h0 * h0;
  return -0.5 * h0 * dr / (r * std::sqrt(r));
}

}  // namespace gfweno
