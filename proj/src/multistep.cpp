#include "gfweno/multistep.hpp"

#include <numeric>

namespace gfweno {
namespace {

// Exact rational arithmetic for the small moment systems solved below.
// Numerators fit comfortably in __int128 for n <= 8.
struct Frac {
  __int128 num = 0;
  __int128 den = 1;

  Frac() = default;
  Frac(long long n) : num(n), den(1) {}
  Frac(__int128 n, __int128 d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
  }

  friend Frac operator+(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return Frac(a.num * b.num, a.den * b.den);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den, a.den * b.num);
  }
  bool zero() const { return num == 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Solve the moment system  Σ_m w_m τ_m^d = ∫₀¹ t^d dt,  d = 0..n-1,
// for integer node offsets τ (relative to the cell's left node).
std::vector<double> moment_weights(const std::vector<int>& tau) {
  const int n = static_cast<int>(tau.size());
  std::vector<std::vector<Frac>> a(n, std::vector<Frac>(n + 1));
  for (int d = 0; d < n; ++d) {
    for (int m = 0; m < n; ++m) {
      __int128 p = 1;
      for (int e = 0; e < d; ++e) p *= tau[m];
      a[d][m] = Frac(p, 1);
    }
    a[d][n] = Frac(1, d + 1);
  }
  // Gaussian elimination with exact pivoting on the first nonzero entry.
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col].zero()) ++piv;
    if (piv == n) throw ConfigError("multistep: singular moment system");
    std::swap(a[piv], a[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].zero()) continue;
      Frac f = a[r][col] / a[col][col];
      for (int c = col; c <= n; ++c) a[r][c] = a[r][c] - f * a[col][c];
    }
  }
  std::vector<double> w(n);
  for (int m = 0; m < n; ++m) w[m] = (a[m][n] / a[m][m]).value();
  return w;
}

}  // namespace

const char* family_name(AdamsFamily f) {
  return f == AdamsFamily::bashforth ? "AB" : "AM";
}

std::string MultiStepRule::name() const {
  return std::string(family_name(family)) + std::to_string(order);
}

std::vector<double> reduced_weights(AdamsFamily family, int n) {
  if (n < 1 || n > 8) throw ConfigError("reduced_weights: node count must be in [1, 8]");
  std::vector<int> tau(n);
  // Bashforth window ends at the cell's left node (offset 0), Moulton at the
  // right node (offset 1).
  const int last = family == AdamsFamily::bashforth ? 0 : 1;
  for (int m = 0; m < n; ++m) tau[m] = last - (n - 1) + m;
  return moment_weights(tau);
}

MultiStepRule multistep_weights(AdamsFamily family, int order) {
  if (order != 4 && order != 6 && order != 8)
    throw ConfigError("multistep_weights: unsupported order " + std::to_string(order) +
                      " (expected 4, 6 or 8)");
  MultiStepRule rule;
  rule.family = family;
  rule.order = order;
  rule.steps = family == AdamsFamily::bashforth ? order : order - 1;
  rule.beta = reduced_weights(family, order);
  if (family == AdamsFamily::bashforth) rule.beta.push_back(0.0);
  return rule;
}

}  // namespace gfweno
