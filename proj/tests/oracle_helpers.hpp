// Test-only oracles: exact rational polynomial algebra used to derive WENO
// candidate coefficients, linear weights, Jiang-Shu indicator forms and
// Adams moment weights independently of the library implementation.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Frac {
  __int128 num = 0;
  __int128 den = 1;

  Frac() = default;
  Frac(long long n) : num(n) {}
  Frac(__int128 n, __int128 d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::runtime_error("oracle: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num, b = den;
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
  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// Polynomial with rational coefficients, coeff[d] on x^d.
struct Poly {
  std::vector<Frac> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  Frac eval(const Frac& x) const {
    Frac v(0);
    for (int d = degree(); d >= 0; --d) v = v * x + c[static_cast<size_t>(d)];
    return v;
  }
  Poly derivative() const {
    Poly out;
    for (int d = 1; d <= degree(); ++d)
      out.c.push_back(Frac(d) * c[static_cast<size_t>(d)]);
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, Frac(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j)
        out.c[i + j] = out.c[i + j] + a.c[i] * b.c[j];
    return out;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly out;
    out.c.assign(std::max(a.c.size(), b.c.size()), Frac(0));
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] = out.c[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] = out.c[i] + b.c[i];
    return out;
  }
  // ∫ over [-1/2, 1/2].
  Frac integrate_cell() const {
    Frac acc(0);
    for (int d = 0; d <= degree(); ++d) {
      if (d % 2 != 0) continue;  // odd powers cancel
      // ((1/2)^{d+1} - (-1/2)^{d+1}) / (d+1) = 2 (1/2)^{d+1} / (d+1)
      __int128 pow2 = 1;
      for (int e = 0; e < d; ++e) pow2 *= 2;
      acc = acc + c[static_cast<size_t>(d)] / Frac(static_cast<__int128>(d + 1) * pow2, 1);
    }
    return acc;
  }
};

// Lagrange basis polynomial for rational nodes, in exact rationals.
inline Poly lagrange_basis(const std::vector<Frac>& nodes, size_t which) {
  Poly p;
  p.c = {Frac(1)};
  Frac denom(1);
  for (size_t m = 0; m < nodes.size(); ++m) {
    if (m == which) continue;
    Poly factor;
    factor.c = {Frac(0) - nodes[m], Frac(1)};
    p = p * factor;
    denom = denom * (nodes[which] - nodes[m]);
  }
  for (auto& coeff : p.c) coeff = coeff / denom;
  return p;
}

// Finite-difference flux reconstruction treats the nodal values f_j as cell
// averages of an underlying function h over [j-1/2, j+1/2]; the operator
// returns h's reconstruction polynomial. This builds the influence
// polynomial of f_{which} for consecutive integer nodes: the derivative of
// the Lagrange interpolant of the primitive H at the half-integer points,
// keeping the terms multiplied by f_{which}.
inline std::vector<Poly> fd_influence_polynomials(const std::vector<int>& nodes) {
  const size_t n = nodes.size();
  std::vector<Frac> half_points;
  for (size_t m = 0; m <= n; ++m)
    half_points.push_back(Frac(2 * nodes[0] - 1 + 2 * static_cast<int>(m), 2));
  std::vector<Poly> out(n);
  for (size_t j = 0; j < n; ++j) {
    // H(half_points[m]) = Σ_{i<m} f_i, so f_j multiplies Σ_{m>j} ℓ_m.
    Poly acc;
    acc.c = {Frac(0)};
    for (size_t m = j + 1; m <= n; ++m) acc = acc + lagrange_basis(half_points, m);
    out[j] = acc.derivative();
  }
  return out;
}

// Reconstruction coefficients: value at x = 1/2 of the reconstruction
// polynomial as a linear form in the nodal values.
inline std::vector<double> fd_reconstruction_coefficients(
    const std::vector<int>& nodes) {
  std::vector<double> out;
  for (const Poly& p : fd_influence_polynomials(nodes))
    out.push_back(p.eval(Frac(1, 2)).value());
  return out;
}

// Jiang-Shu quadratic form for the substencil with the given integer node
// offsets (node i at 0): Q such that β(f) = fᵀ Q f with
// β = Σ_{l=1..k} ∫_{-1/2}^{1/2} (p^{(l)})² dx over the reconstruction
// polynomial p.
inline std::vector<std::vector<double>> jiang_shu_form(const std::vector<int>& nodes) {
  const size_t n = nodes.size();
  const int k = static_cast<int>(n) - 1;
  const std::vector<Poly> basis = fd_influence_polynomials(nodes);
  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      Frac acc(0);
      Poly da = basis[a], db = basis[b];
      for (int l = 1; l <= k; ++l) {
        da = da.derivative();
        db = db.derivative();
        acc = acc + (da * db).integrate_cell();
      }
      q[a][b] = acc.value();
    }
  return q;
}

inline double apply_form(const std::vector<std::vector<double>>& q,
                         const std::vector<double>& f) {
  double acc = 0.0;
  for (size_t a = 0; a < q.size(); ++a)
    for (size_t b = 0; b < q.size(); ++b) acc += q[a][b] * f[a] * f[b];
  return acc;
}

// Deterministic uniform generator for property tests.
struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  double uniform(double lo, double hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double u = static_cast<double>(state >> 11) / 9007199254740992.0;
    return lo + (hi - lo) * u;
  }
};

}  // namespace oracle
