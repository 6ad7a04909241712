#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gfweno {

// ---------------------------------------------------------------------------
// Error types. The CLI maps ConfigError/UsageError to exit code 2 and
// SolverError (and derived) to exit code 3.
// ---------------------------------------------------------------------------

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// State outside the model's admissible set (e.g. non-positive depth).
struct AdmissibilityError : SolverError {
  using SolverError::SolverError;
};

/// Flux-Jacobian eigenvalues coincide within tolerance.
struct SonicError : SolverError {
  using SolverError::SolverError;
};

/// Flux inversion target not attainable on the requested branch.
struct NoRootError : SolverError {
  NoRootError(const std::string& what, double gap)
      : SolverError(what), sonic_gap(gap) {}
  double sonic_gap = 0.0;
};

/// No admissible right state across a geometry jump.
struct InadmissibleJumpError : SolverError {
  using SolverError::SolverError;
};

/// Resonant geometry jump: the source linearization denominator vanishes.
struct SingularJumpError : SolverError {
  using SolverError::SolverError;
};

/// Fixed-point iteration failed to converge.
struct IterationError : SolverError {
  IterationError(const std::string& what, double res)
      : SolverError(what), residual(res) {}
  double residual = 0.0;
};

// ---------------------------------------------------------------------------
// Small dense vector/matrix for the nodal unknowns. The systems handled here
// have at most two components, so everything is stored inline.
// ---------------------------------------------------------------------------

class Vec {
 public:
  static constexpr int kMax = 2;

  Vec() = default;
  explicit Vec(int n, double fill = 0.0) : n_(n) {
    assert(n >= 0 && n <= kMax);
    a_[0] = a_[1] = fill;
  }
  static Vec scalar(double a) {
    Vec v(1);
    v.a_[0] = a;
    return v;
  }
  static Vec pair(double a, double b) {
    Vec v(2);
    v.a_[0] = a;
    v.a_[1] = b;
    return v;
  }

  int size() const { return n_; }
  double& operator[](int i) {
    assert(i >= 0 && i < n_);
    return a_[i];
  }
  double operator[](int i) const {
    assert(i >= 0 && i < n_);
    return a_[i];
  }

  Vec& operator+=(const Vec& o) {
    assert(o.n_ == n_);
    for (int i = 0; i < n_; ++i) a_[i] += o.a_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    assert(o.n_ == n_);
    for (int i = 0; i < n_; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Vec& operator*=(double c) {
    for (int i = 0; i < n_; ++i) a_[i] *= c;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double c, Vec a) { return a *= c; }
  friend Vec operator*(Vec a, double c) { return a *= c; }

  double inf_norm() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i) m = std::max(m, std::abs(a_[i]));
    return m;
  }

 private:
  int n_ = 0;
  std::array<double, kMax> a_{};
};

class Mat {
 public:
  Mat() = default;
  explicit Mat(int n, double fill = 0.0) : n_(n) {
    assert(n >= 0 && n <= Vec::kMax);
    for (auto& r : a_) r.fill(fill);
  }
  static Mat scalar(double a) {
    Mat m(1);
    m(0, 0) = a;
    return m;
  }
  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int size() const { return n_; }
  double& operator()(int i, int j) {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    return a_[i][j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    return a_[i][j];
  }

  Vec apply(const Vec& v) const {
    assert(v.size() == n_);
    Vec r(n_);
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += a_[i][j] * v[j];
      r[i] = s;
    }
    return r;
  }

  Mat mul(const Mat& o) const {
    assert(o.n_ == n_);
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        double s = 0.0;
        for (int k = 0; k < n_; ++k) s += a_[i][k] * o.a_[k][j];
        r(i, j) = s;
      }
    return r;
  }

  double inf_norm() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i) {
      double row = 0.0;
      for (int j = 0; j < n_; ++j) row += std::abs(a_[i][j]);
      m = std::max(m, row);
    }
    return m;
  }

 private:
  int n_ = 0;
  std::array<std::array<double, Vec::kMax>, Vec::kMax> a_{};
};

/// Spectral decomposition J = right · diag(lambda) · left with left = right⁻¹.
/// Eigenvalues sorted ascending; right eigenvectors are the columns of right.
struct EigenSystem {
  Vec lambda;
  Mat right;
  Mat left;
};

}  // namespace gfweno
