#pragma once

#include <functional>
#include <memory>
#include <string>

#include "gfweno/core.hpp"

namespace gfweno {

/// Geometry of the source term: H and its analytic derivative. H may depend
/// on time (needed only by the manufactured-solution case).
struct Geometry {
  std::function<double(double x, double t)> h;
  std::function<double(double x, double t)> hx;

  static Geometry steady(std::function<double(double)> h,
                         std::function<double(double)> hx) {
    return Geometry{[h = std::move(h)](double x, double) { return h(x); },
                    [hx = std::move(hx)](double x, double) { return hx(x); }};
  }
  static Geometry flat() {
    return steady([](double) { return 0.0; }, [](double) { return 0.0; });
  }
};

/// Balance law  U_t + F(U)_x = S(U) H_x + s(U, x, t).
class ModelSpec {
 public:
  virtual ~ModelSpec() = default;

  virtual int components() const = 0;
  virtual Vec flux(const Vec& u) const = 0;
  virtual Mat jacobian(const Vec& u) const = 0;
  virtual Vec eigenvalues(const Vec& u) const = 0;  // sorted ascending
  virtual EigenSystem eigen_system(const Vec& u) const = 0;
  virtual Vec source_coeff(const Vec& u) const = 0;  // S(U)
  virtual Vec pointwise_source(const Vec& u, double x, double t) const {
    (void)u;
    (void)x;
    (void)t;
    return Vec(components());
  }
  /// Intermediate state whose Jacobian is the Roe matrix of the pair.
  virtual Vec roe_state(const Vec& ul, const Vec& ur) const = 0;

  /// Throws AdmissibilityError when u leaves the admissible set; `where`
  /// names the offending node in the message.
  virtual void check_admissible(const Vec& u, const std::string& where) const {
    (void)u;
    (void)where;
  }

  double geometry(double x, double t) const { return geom_.h(x, t); }
  double geometry_slope(double x, double t) const { return geom_.hx(x, t); }

 protected:
  explicit ModelSpec(Geometry g) : geom_(std::move(g)) {}
  Geometry geom_;
};

/// Roe intermediate Jacobian J_{i+1/2}; equal states reduce to jacobian(u).
Mat roe_intermediate(const ModelSpec& model, const Vec& ul, const Vec& ur);

/// Burgers' equation with source: F = U²/2, S = U^p (or S = U − C for the
/// manufactured-solution variant).
class BurgersModel : public ModelSpec {
 public:
  BurgersModel(int exponent, Geometry g)
      : ModelSpec(std::move(g)), p_(exponent) {
    if (exponent < 1) throw ConfigError("burgers: exponent must be >= 1");
  }
  /// Manufactured-solution variant: S(U) = U − C.
  static BurgersModel manufactured(double speed, Geometry g) {
    BurgersModel m(1, std::move(g));
    m.mms_ = true;
    m.mms_speed_ = speed;
    return m;
  }

  int components() const override { return 1; }
  Vec flux(const Vec& u) const override { return Vec::scalar(0.5 * u[0] * u[0]); }
  Mat jacobian(const Vec& u) const override { return Mat::scalar(u[0]); }
  Vec eigenvalues(const Vec& u) const override { return Vec::scalar(u[0]); }
  EigenSystem eigen_system(const Vec& u) const override {
    return EigenSystem{Vec::scalar(u[0]), Mat::scalar(1.0), Mat::scalar(1.0)};
  }
  Vec source_coeff(const Vec& u) const override;
  Vec roe_state(const Vec& ul, const Vec& ur) const override {
    return Vec::scalar(0.5 * (ul[0] + ur[0]));
  }

  int exponent() const { return p_; }
  bool manufactured_variant() const { return mms_; }
  double mms_speed() const { return mms_speed_; }

 private:
  int p_;
  bool mms_ = false;
  double mms_speed_ = 0.0;
};

struct FrictionLaw {
  enum class Kind { none, quadratic_depth, manning };
  Kind kind = Kind::none;
  double k = 0.0;       // coefficient
  double mu = 7.0 / 3;  // depth exponent (manning)

  static FrictionLaw none() { return {}; }
  static FrictionLaw quadratic_depth(double k) {
    return {Kind::quadratic_depth, k, 0.0};
  }
  static FrictionLaw manning(double k, double mu = 7.0 / 3) {
    return {Kind::manning, k, mu};
  }

  /// κ(U, x) ≥ 0; the momentum source contribution is −κ q.
  double kappa(double h, double q) const;
};

/// Shallow water with bathymetry: U = (h, q), S = (0, g h),
/// s = (0, −κ(U) q) when friction is enabled.
class ShallowWaterModel : public ModelSpec {
 public:
  ShallowWaterModel(double gravity, Geometry g,
                    FrictionLaw friction = FrictionLaw::none())
      : ModelSpec(std::move(g)), g_(gravity), friction_(friction) {
    if (!(gravity > 0)) throw ConfigError("swe: gravity must be positive");
  }

  int components() const override { return 2; }
  Vec flux(const Vec& u) const override;
  Mat jacobian(const Vec& u) const override;
  Vec eigenvalues(const Vec& u) const override;
  EigenSystem eigen_system(const Vec& u) const override;
  Vec source_coeff(const Vec& u) const override { return Vec::pair(0.0, g_ * u[0]); }
  Vec pointwise_source(const Vec& u, double x, double t) const override;
  Vec roe_state(const Vec& ul, const Vec& ur) const override;
  void check_admissible(const Vec& u, const std::string& where) const override;

  double gravity() const { return g_; }
  const FrictionLaw& friction() const { return friction_; }
  double celerity(double h) const { return std::sqrt(g_ * h); }

 private:
  double g_;
  FrictionLaw friction_;
};

}  // namespace gfweno
