#include "gfweno/weno.hpp"

#include <algorithm>

namespace gfweno {
namespace weno {
namespace {

inline double sq(double a) { return a * a; }

constexpr double kD1[2] = {1.0 / 3.0, 2.0 / 3.0};
constexpr double kD2[3] = {1.0 / 10.0, 6.0 / 10.0, 3.0 / 10.0};
constexpr double kD3[4] = {1.0 / 35.0, 12.0 / 35.0, 18.0 / 35.0, 4.0 / 35.0};

constexpr double kC1[2][2] = {{-1.0 / 2, 3.0 / 2}, {1.0 / 2, 1.0 / 2}};
constexpr double kC2[3][3] = {{2.0 / 6, -7.0 / 6, 11.0 / 6},
                              {-1.0 / 6, 5.0 / 6, 2.0 / 6},
                              {2.0 / 6, 5.0 / 6, -1.0 / 6}};
constexpr double kC3[4][4] = {{-3.0 / 12, 13.0 / 12, -23.0 / 12, 25.0 / 12},
                              {1.0 / 12, -5.0 / 12, 13.0 / 12, 3.0 / 12},
                              {-1.0 / 12, 7.0 / 12, 7.0 / 12, -1.0 / 12},
                              {3.0 / 12, 13.0 / 12, -5.0 / 12, 1.0 / 12}};

}  // namespace

std::span<const double> linear_weights(int k) {
  switch (k) {
    case 1:
      return kD1;
    case 2:
      return kD2;
    case 3:
      return kD3;
  }
  throw ConfigError("weno: unsupported k");
}

std::span<const double> candidate_coefficients(int k, int r) {
  switch (k) {
    case 1:
      return kC1[r];
    case 2:
      return kC2[r];
    case 3:
      return kC3[r];
  }
  throw ConfigError("weno: unsupported k");
}

void smoothness_indicators(std::span<const double> f, int k,
                           std::span<double> out) {
  assert(f.size() == static_cast<size_t>(2 * k + 1));
  assert(out.size() == static_cast<size_t>(k + 1));
  switch (k) {
    case 1:
      out[0] = sq(f[1] - f[0]);
      out[1] = sq(f[2] - f[1]);
      return;
    case 2:
      out[0] = 13.0 / 12 * sq(f[0] - 2 * f[1] + f[2]) +
               0.25 * sq(f[0] - 4 * f[1] + 3 * f[2]);
      out[1] = 13.0 / 12 * sq(f[1] - 2 * f[2] + f[3]) + 0.25 * sq(f[1] - f[3]);
      out[2] = 13.0 / 12 * sq(f[2] - 2 * f[3] + f[4]) +
               0.25 * sq(3 * f[2] - 4 * f[3] + f[4]);
      return;
    case 3: {
      // Balsara-Shu integer forms; the 1/240 restores the Jiang-Shu
      // derivative-integral normalization (linear data gives slope²).
      constexpr double c = 1.0 / 240.0;
      out[0] = c * (f[0] * (547 * f[0] - 3882 * f[1] + 4642 * f[2] - 1854 * f[3]) +
                    f[1] * (7043 * f[1] - 17246 * f[2] + 7042 * f[3]) +
                    f[2] * (11003 * f[2] - 9402 * f[3]) + 2107 * f[3] * f[3]);
      out[1] = c * (f[1] * (267 * f[1] - 1642 * f[2] + 1602 * f[3] - 494 * f[4]) +
                    f[2] * (2843 * f[2] - 5966 * f[3] + 1922 * f[4]) +
                    f[3] * (3443 * f[3] - 2522 * f[4]) + 547 * f[4] * f[4]);
      out[2] = c * (f[2] * (547 * f[2] - 2522 * f[3] + 1922 * f[4] - 494 * f[5]) +
                    f[3] * (3443 * f[3] - 5966 * f[4] + 1602 * f[5]) +
                    f[4] * (2843 * f[4] - 1642 * f[5]) + 267 * f[5] * f[5]);
      out[3] = c * (f[3] * (2107 * f[3] - 9402 * f[4] + 7042 * f[5] - 1854 * f[6]) +
                    f[4] * (11003 * f[4] - 17246 * f[5] + 4642 * f[6]) +
                    f[5] * (7043 * f[5] - 3882 * f[6]) + 547 * f[6] * f[6]);
      return;
    }
  }
  throw ConfigError("weno: unsupported k");
}

void nonlinear_weights(std::span<const double> f, int k, double eps,
                       std::span<double> w) {
  double beta[4];
  smoothness_indicators(f, k, std::span<double>(beta, k + 1));
  auto d = linear_weights(k);
  double sum = 0.0;
  for (int r = 0; r <= k; ++r) {
    w[r] = d[r] / sq(eps + beta[r]);
    sum += w[r];
  }
  for (int r = 0; r <= k; ++r) w[r] /= sum;
}

double combine(std::span<const double> f, int k, std::span<const double> w) {
  double v = 0.0;
  for (int r = 0; r <= k; ++r) {
    auto c = candidate_coefficients(k, r);
    double vr = 0.0;
    for (int j = 0; j <= k; ++j) vr += c[j] * f[r + j];
    v += w[r] * vr;
  }
  return v;
}

double reconstruct_left(std::span<const double> f, int k, double eps) {
  double w[4];
  nonlinear_weights(f, k, eps, std::span<double>(w, k + 1));
  return combine(f, k, std::span<const double>(w, k + 1));
}

double reconstruct_right(std::span<const double> f, int k, double eps) {
  double rev[7];
  const int n = 2 * k + 1;
  for (int i = 0; i < n; ++i) rev[i] = f[n - 1 - i];
  return reconstruct_left(std::span<const double>(rev, n), k, eps);
}

}  // namespace weno

Mat upwind_sign_matrix(const ModelSpec& model, const Vec& ul, const Vec& ur) {
  const EigenSystem es = model.eigen_system(model.roe_state(ul, ur));
  const int m = es.lambda.size();
  double radius = 0.0;
  for (int i = 0; i < m; ++i) radius = std::max(radius, std::abs(es.lambda[i]));
  const double floor = 1e-8 * std::max(1.0, radius);
  Mat sgn(m);
  for (int i = 0; i < m; ++i) {
    const double s = es.lambda[i] / std::max(std::abs(es.lambda[i]), floor);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) sgn(r, c) += es.right(r, i) * s * es.left(i, c);
  }
  return sgn;
}

SplitFluxes upwind_split(const NodalField& modified, const State& states,
                         const ModelSpec& model, WenoOrder order,
                         int interface_i) {
  const int i = interface_i, k = order.k;
  const Mat sgn = upwind_sign_matrix(model, states.at(i), states.at(i + 1));
  SplitFluxes out;
  out.first_node = i - k;
  out.plus.reserve(2 * k + 2);
  out.minus.reserve(2 * k + 2);
  for (int j = i - k; j <= i + k + 1; ++j) {
    const Vec& f = modified.at(j);
    const Vec y = sgn.apply(f);
    out.plus.push_back(0.5 * f + 0.5 * y);
    out.minus.push_back(0.5 * f - 0.5 * y);
  }
  return out;
}

Vec interface_flux(const NodalField& modified, const State& states,
                   const ModelSpec& model, WenoOrder order, int interface_i,
                   double eps) {
  const int k = order.k;
  const SplitFluxes split =
      upwind_split(modified, states, model, order, interface_i);
  const int m = modified.components();
  Vec fhat(m);
  double buf[7];
  for (int c = 0; c < m; ++c) {
    for (int j = 0; j <= 2 * k; ++j) buf[j] = split.plus[j][c];
    const double fp =
        weno::reconstruct_left(std::span<const double>(buf, 2 * k + 1), k, eps);
    for (int j = 0; j <= 2 * k; ++j) buf[j] = split.minus[j + 1][c];
    const double fm = weno::reconstruct_right(
        std::span<const double>(buf, 2 * k + 1), k, eps);
    fhat[c] = fp + fm;
  }
  return fhat;
}

}  // namespace gfweno
