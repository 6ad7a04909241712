#include "gfweno/global_flux.hpp"

#include <algorithm>
#include <cmath>

namespace gfweno {

void SingularityRegistry::add(const Singularity& s) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), s,
      [](const Singularity& a, const Singularity& b) { return a.interface < b.interface; });
  entries_.insert(it, s);
}

const Singularity* SingularityRegistry::at_cell(int cell) const {
  for (const auto& s : entries_)
    if (s.interface == cell) return &s;
  return nullptr;
}

const Singularity* SingularityRegistry::left_of(int cell, int window) const {
  const Singularity* best = nullptr;
  for (const auto& s : entries_)
    if (s.interface < cell && cell <= s.interface + window) best = &s;
  return best;
}

void SingularityRegistry::validate(const MultiStepRule& rule, int n_intervals,
                                   int ghost) const {
  const int s = rule.steps;
  for (size_t i = 0; i < entries_.size(); ++i) {
    const int l = entries_[i].interface;
    if (l - 2 * s < -ghost || l + 2 * s > n_intervals + ghost)
      throw ConfigError("singularity at interface " + std::to_string(l) +
                        " sits too close to the ghost band");
    if (i > 0 && l - entries_[i - 1].interface <= 2 * s)
      throw ConfigError("singular interfaces closer than 2s nodes are not supported");
  }
}

SingularityRegistry locate_singularities(const Grid& grid,
                                         const ModelSpec& model,
                                         std::span<const double> jump_xs,
                                         double t) {
  SingularityRegistry reg;
  for (double xs : jump_xs) {
    const double u = (xs - grid.x_start) / grid.dx;
    const int nearest = static_cast<int>(std::lround(u));
    const double d = 1e-9 * std::max(1.0, std::abs(xs));
    const double h_lo = model.geometry(xs - d, t);
    const double h_hi = model.geometry(xs + d, t);
    int ell;
    if (std::abs(u - nearest) < 1e-9) {
      // Node-aligned: pick the adjacent interface on the side the rounded
      // node coordinate does NOT evaluate on, so no quadrature window mixes
      // both branches.
      const double h_node = model.geometry(grid.node(nearest), t);
      ell = std::abs(h_node - h_lo) <= std::abs(h_node - h_hi) ? nearest
                                                               : nearest - 1;
    } else {
      ell = static_cast<int>(std::floor(u));
    }
    reg.add(Singularity{ell, h_lo, h_hi});
  }
  return reg;
}

Vec source_integrand(const ModelSpec& model, const Vec& u, double x, double t) {
  Vec v = model.source_coeff(u);
  v *= model.geometry_slope(x, t);
  v += model.pointwise_source(u, x, t);
  return v;
}

SourceQuadrature::SourceQuadrature(MultiStepRule rule, SingularityRegistry registry)
    : rule_(std::move(rule)), reg_(std::move(registry)) {
  reduced_.resize(static_cast<size_t>(rule_.order) + 1);
  for (int n = 1; n <= rule_.order; ++n)
    reduced_[static_cast<size_t>(n)] = reduced_weights(rule_.family, n);
}

CellQuadrature SourceQuadrature::cell(int c) const {
  const bool moulton = rule_.implicit();
  const int q = rule_.order;
  CellQuadrature out;
  if (const Singularity* s = reg_.at_cell(c)) {
    out.kind = CellQuadrature::Kind::singular;
    out.sing = s;
    return out;
  }
  int n = q;
  out.kind = CellQuadrature::Kind::standard;
  if (const Singularity* s = reg_.left_of(c, rule_.steps - 1)) {
    const int d = c - s->interface;  // 1 .. steps-1
    n = moulton ? d + 1 : d;
    out.kind = CellQuadrature::Kind::reduced;
  }
  out.weights = std::span<const double>(reduced_[static_cast<size_t>(n)]);
  const int last = moulton ? c + 1 : c;
  out.first_node = last - n + 1;
  return out;
}

double burgers_source_linearization(double ul, double ur, int p) {
  const double mean = 0.5 * (ul + ur);
  if (p == 1) return mean;
  if (p == 2) {
    // S̃ = Ū [[U]] / ln(U_r/U_l); removable singularity via α/ln(1+α) → 1.
    const double alpha = (ur - ul) / ul;
    if (std::abs(alpha) < 1e-8) return mean * ul * (1.0 + 0.5 * alpha);
    return mean * (ur - ul) / std::log(ur / ul);
  }
  const double jump = ur - ul;
  if (std::abs(jump) < 1e-10 * std::max(std::abs(ul), std::abs(ur))) {
    double s = 1.0;
    for (int i = 0; i < p; ++i) s *= mean;
    return s;
  }
  const double jump_pow = std::pow(ur, 2 - p) - std::pow(ul, 2 - p);
  return (2 - p) * mean * jump / jump_pow;
}

double swe_depth_linearization(double hl, double hr, double qbar, double g) {
  const double hbar = 0.5 * (hl + hr);
  const double prod = hl * hr;
  const double w = qbar * qbar / (g * prod * prod);
  const double den = 1.0 - w * hbar;
  if (std::abs(den) < 1e-12)
    throw SingularJumpError("swe: resonant geometry jump (linearization denominator vanishes)");
  return hbar + w * (hbar * hbar - prod) / den;
}

Vec singular_cell_integral(const Vec& ul, const Vec& ur, const ModelSpec& model,
                           double h_geom_left, double h_geom_right) {
  const double jump_h = h_geom_right - h_geom_left;
  if (const auto* burgers = dynamic_cast<const BurgersModel*>(&model)) {
    return Vec::scalar(
        burgers_source_linearization(ul[0], ur[0], burgers->exponent()) * jump_h);
  }
  const auto& swe = dynamic_cast<const ShallowWaterModel&>(model);
  const double qbar = 0.5 * (ul[1] + ur[1]);
  const double htil = swe_depth_linearization(ul[0], ur[0], qbar, swe.gravity());
  return Vec::pair(0.0, swe.gravity() * htil * jump_h);
}

Vec singular_cell_integral_war(const Vec& ul, const Vec& ur,
                               const ShallowWaterModel& model, double ht_left,
                               double ht_right) {
  const double g = model.gravity();
  const double qbar = 0.5 * (ul[1] + ur[1]);
  const double etal = ul[0] - ht_left, etar = ur[0] - ht_right;
  // η̃ = η̄ + (h̃ − h̄), the correction being the same as in the depth form.
  const double corr =
      swe_depth_linearization(ul[0], ur[0], qbar, g) - 0.5 * (ul[0] + ur[0]);
  const double eta_til = 0.5 * (etal + etar) + corr;
  const double jump = ht_right - ht_left;
  const double jump_sq = ht_right * ht_right - ht_left * ht_left;
  return Vec::pair(0.0, g * eta_til * jump + 0.5 * g * jump_sq);
}

namespace {

Vec quadrature_sum(const Grid& grid, const State& states, const ModelSpec& model,
                   const CellQuadrature& cq, double t) {
  const int m = model.components();
  Vec acc(m);
  for (size_t w = 0; w < cq.weights.size(); ++w) {
    const int node = cq.first_node + static_cast<int>(w);
    acc += cq.weights[w] *
           source_integrand(model, states.at(node), grid.node(node), t);
  }
  return grid.dx * acc;
}

double war_quadrature_sum(const Grid& grid, const State& states,
                          const ShallowWaterModel& model,
                          const CellQuadrature& cq, const NodalField& htilde,
                          double t) {
  const double g = model.gravity();
  double acc = 0.0;
  for (size_t w = 0; w < cq.weights.size(); ++w) {
    const int node = cq.first_node + static_cast<int>(w);
    const double x = grid.node(node);
    const Vec& u = states.at(node);
    const double eta = u[0] - htilde.at(node)[0];
    acc += cq.weights[w] *
           (g * eta * model.geometry_slope(x, t) + model.pointwise_source(u, x, t)[1]);
  }
  return grid.dx * acc;
}

Vec cell_integral(const Grid& grid, const State& states, const ModelSpec& model,
                  const SourceQuadrature& quad, int c, double t,
                  const GlobalFluxOptions& opt) {
  const CellQuadrature cq = quad.cell(c);
  if (cq.kind == CellQuadrature::Kind::singular) {
    if (opt.water_at_rest) {
      const auto& swe = dynamic_cast<const ShallowWaterModel&>(model);
      return singular_cell_integral_war(states.at(c), states.at(c + 1), swe,
                                        opt.quad_bathymetry->at(c)[0],
                                        opt.quad_bathymetry->at(c + 1)[0]);
    }
    return singular_cell_integral(states.at(c), states.at(c + 1), model,
                                  model.geometry(grid.node(c), t),
                                  model.geometry(grid.node(c + 1), t));
  }
  if (opt.water_at_rest) {
    const auto& swe = dynamic_cast<const ShallowWaterModel&>(model);
    const NodalField& ht = *opt.quad_bathymetry;
    const double hl = ht.at(c)[0], hr = ht.at(c + 1)[0];
    Vec v(2);
    v[1] = war_quadrature_sum(grid, states, swe, cq, ht, t) +
           0.5 * swe.gravity() * (hr * hr - hl * hl);
    return v;
  }
  return quadrature_sum(grid, states, model, cq, t);
}

}  // namespace

Vec cell_source_integral(const Grid& grid, const State& states,
                         const ModelSpec& model, const MultiStepRule& rule,
                         int cell, double t) {
  SourceQuadrature quad(rule, SingularityRegistry{});
  return quadrature_sum(grid, states, model, quad.cell(cell), t);
}

NodalField accumulate_bathymetry(const Grid& grid, const ModelSpec& model,
                                 const SourceQuadrature& quad, int ghost,
                                 double t) {
  NodalField ht(grid.n, 1, ghost);
  const auto increment = [&](int c) -> double {
    const CellQuadrature cq = quad.cell(c);
    if (cq.kind == CellQuadrature::Kind::singular)
      return model.geometry(grid.node(c + 1), t) - model.geometry(grid.node(c), t);
    double acc = 0.0;
    for (size_t w = 0; w < cq.weights.size(); ++w)
      acc += cq.weights[w] *
             model.geometry_slope(grid.node(cq.first_node + static_cast<int>(w)), t);
    return grid.dx * acc;
  };
  ht.at(0)[0] = model.geometry(grid.node(0), t);
  for (int c = 0; c < grid.n + ghost; ++c) ht.at(c + 1)[0] = ht.at(c)[0] + increment(c);
  for (int c = -1; c >= -ghost; --c) ht.at(c)[0] = ht.at(c + 1)[0] - increment(c);
  return ht;
}

double water_at_rest_integral(const Grid& grid, const State& states,
                              const ShallowWaterModel& model,
                              const SourceQuadrature& quad,
                              const NodalField& htilde, int cell, double t) {
  GlobalFluxOptions opt;
  opt.water_at_rest = true;
  opt.quad_bathymetry = &htilde;
  return cell_integral(grid, states, model, quad, cell, t, opt)[1];
}

GlobalFlux build_global_flux(const Grid& grid, const State& states,
                             const ModelSpec& model,
                             const SourceQuadrature& quad, double t,
                             const GlobalFluxOptions& options) {
  if (options.water_at_rest && options.quad_bathymetry == nullptr)
    throw ConfigError("build_global_flux: water-at-rest fix needs the accumulated bathymetry");
  const int m = model.components();
  const int ghost = states.ghost();
  const int s = quad.rule().steps;
  // R is accumulated over every cell whose quadrature window fits inside the
  // state band; with ghost = k + s this covers all reconstruction stencils.
  const int lo = s - 1 - ghost;
  const int hi = grid.n + ghost;
  GlobalFlux gf{NodalField(grid.n, m, ghost), NodalField(grid.n, m, ghost)};

  gf.primitives.at(0) = Vec(m);
  for (int c = 0; c < hi; ++c)
    gf.primitives.at(c + 1) =
        gf.primitives.at(c) + cell_integral(grid, states, model, quad, c, t, options);
  for (int c = -1; c >= lo; --c)
    gf.primitives.at(c) =
        gf.primitives.at(c + 1) - cell_integral(grid, states, model, quad, c, t, options);

  for (int j = states.first_node(); j <= states.last_node(); ++j) {
    if (j < lo || j > hi) {
      gf.modified.at(j) = model.flux(states.at(j));
    } else {
      gf.modified.at(j) = model.flux(states.at(j)) - gf.primitives.at(j);
    }
  }
  return gf;
}

}  // namespace gfweno
