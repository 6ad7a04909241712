#include "gfweno/model.hpp"

namespace gfweno {

Mat roe_intermediate(const ModelSpec& model, const Vec& ul, const Vec& ur) {
  return model.jacobian(model.roe_state(ul, ur));
}

Vec BurgersModel::source_coeff(const Vec& u) const {
  if (mms_) return Vec::scalar(u[0] - mms_speed_);
  double s = 1.0;
  for (int i = 0; i < p_; ++i) s *= u[0];
  return Vec::scalar(s);
}

double FrictionLaw::kappa(double h, double q) const {
  switch (kind) {
    case Kind::none:
      return 0.0;
    case Kind::quadratic_depth:
      return k * h * std::abs(q);
    case Kind::manning:
      return k * std::abs(q) / std::pow(h, mu);
  }
  return 0.0;
}

Vec ShallowWaterModel::flux(const Vec& u) const {
  const double h = u[0], q = u[1];
  if (!(h > 0.0)) check_admissible(u, "flux evaluation");
  return Vec::pair(q, q * q / h + 0.5 * g_ * h * h);
}

Mat ShallowWaterModel::jacobian(const Vec& u) const {
  const double h = u[0], q = u[1];
  const double vel = q / h;
  Mat j(2);
  j(0, 0) = 0.0;
  j(0, 1) = 1.0;
  j(1, 0) = g_ * h - vel * vel;
  j(1, 1) = 2.0 * vel;
  return j;
}

Vec ShallowWaterModel::eigenvalues(const Vec& u) const {
  const double vel = u[1] / u[0];
  const double c = celerity(u[0]);
  return Vec::pair(vel - c, vel + c);
}

EigenSystem ShallowWaterModel::eigen_system(const Vec& u) const {
  const double vel = u[1] / u[0];
  const double c = celerity(u[0]);
  const Vec lam = Vec::pair(vel - c, vel + c);
  if (std::abs(lam[1] - lam[0]) <=
      1e-12 * std::max(std::abs(lam[0]), std::abs(lam[1])))
    throw SonicError("swe: coincident eigenvalues (vanishing depth)");
  Mat r(2), l(2);
  r(0, 0) = 1.0;
  r(0, 1) = 1.0;
  r(1, 0) = lam[0];
  r(1, 1) = lam[1];
  const double inv = 1.0 / (2.0 * c);
  l(0, 0) = lam[1] * inv;
  l(0, 1) = -inv;
  l(1, 0) = -lam[0] * inv;
  l(1, 1) = inv;
  return EigenSystem{lam, r, l};
}

Vec ShallowWaterModel::pointwise_source(const Vec& u, double, double) const {
  if (friction_.kind == FrictionLaw::Kind::none) return Vec(2);
  return Vec::pair(0.0, -friction_.kappa(u[0], u[1]) * u[1]);
}

Vec ShallowWaterModel::roe_state(const Vec& ul, const Vec& ur) const {
  const double sl = std::sqrt(ul[0]), sr = std::sqrt(ur[0]);
  const double vel = (sl * (ul[1] / ul[0]) + sr * (ur[1] / ur[0])) / (sl + sr);
  const double h = 0.5 * (ul[0] + ur[0]);
  return Vec::pair(h, h * vel);
}

void ShallowWaterModel::check_admissible(const Vec& u, const std::string& where) const {
  if (!(u[0] > 0.0))
    throw AdmissibilityError("swe: non-positive depth h = " + std::to_string(u[0]) +
                             " at " + where);
}

}  // namespace gfweno
