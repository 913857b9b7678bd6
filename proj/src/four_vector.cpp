#include "cycles/four_vector.hpp"

#include <cmath>
#include <sstream>

#include "cycles/errors.hpp"

namespace cycles {

FourVector contravariant(double t, double x, double y, double z) {
  return {Eigen::Vector4d(t, x, y, z), IndexPosition::Contravariant};
}

FourVector contravariant(const Eigen::Vector4d& components) {
  return {components, IndexPosition::Contravariant};
}

FourVector covariant(double t, double x, double y, double z) {
  return {Eigen::Vector4d(t, x, y, z), IndexPosition::Covariant};
}

FourVector covariant(const Eigen::Vector4d& components) {
  return {components, IndexPosition::Covariant};
}

namespace {

Eigen::Vector4d flip_spatial(const Eigen::Vector4d& c) {
  return Eigen::Vector4d(c[0], -c[1], -c[2], -c[3]);
}

}  // namespace

FourVector raise_index(const FourVector& v) {
  if (v.index == IndexPosition::Contravariant) return v;
  return {flip_spatial(v.components), IndexPosition::Contravariant};
}

FourVector lower_index(const FourVector& v) {
  if (v.index == IndexPosition::Covariant) return v;
  return {flip_spatial(v.components), IndexPosition::Covariant};
}

FourVector with_index(const FourVector& v, IndexPosition index) {
  return index == IndexPosition::Contravariant ? raise_index(v) : lower_index(v);
}

double contract(const FourVector& a, const FourVector& b) {
  if (a.index == b.index) {
    const Eigen::Vector4d& p = a.components;
    const Eigen::Vector4d& q = b.components;
    return p[0] * q[0] - p.tail<3>().dot(q.tail<3>());
  }
  return a.components.dot(b.components);
}

double minkowski_norm_sq(const FourVector& v) { return contract(v, v); }

BoostParameters::BoostParameters(const Eigen::Vector3d& beta) : beta_(beta) {
  const double b2 = beta.squaredNorm();
  if (b2 >= 1.0) {
    std::ostringstream msg;
    msg << "boost velocity |beta| = " << std::sqrt(b2) << " >= 1";
    throw InvalidVelocityError(msg.str());
  }
  gamma_ = 1.0 / std::sqrt(1.0 - b2);
}

Eigen::Matrix4d boost_matrix(const BoostParameters& b) {
  const Eigen::Vector3d& beta = b.beta();
  const double g = b.gamma();
  const double b2 = beta.squaredNorm();

  Eigen::Matrix4d lambda = Eigen::Matrix4d::Identity();
  if (b2 == 0.0) return lambda;

  lambda(0, 0) = g;
  for (int i = 0; i < 3; ++i) {
    lambda(0, i + 1) = g * beta[i];
    lambda(i + 1, 0) = g * beta[i];
    for (int j = 0; j < 3; ++j) {
      lambda(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (g - 1.0) * beta[i] * beta[j] / b2;
    }
  }
  return lambda;
}

FourVector boost(const FourVector& v, const BoostParameters& b) {
  // Covariant components transform through raise -> boost -> lower, which
  // keeps the two index pictures exactly consistent.
  const FourVector up = raise_index(v);
  FourVector out = contravariant(boost_matrix(b) * up.components);
  return with_index(out, v.index);
}

double collinear_velocity_sum(double beta1, double beta2) {
  return (beta1 + beta2) / (1.0 + beta1 * beta2);
}

}  // namespace cycles
