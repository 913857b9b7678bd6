#pragma once

#include <Eigen/Dense>

namespace cycles {

enum class IndexPosition { Contravariant, Covariant };

/// Spacetime or energy-momentum quadruple in natural units.
/// Component order is (t, x, y, z); metric signature (+,-,-,-).
struct FourVector {
  Eigen::Vector4d components = Eigen::Vector4d::Zero();
  IndexPosition index = IndexPosition::Contravariant;

  double t() const { return components[0]; }
  double x() const { return components[1]; }
  double y() const { return components[2]; }
  double z() const { return components[3]; }
  Eigen::Vector3d spatial() const { return components.tail<3>(); }
};

FourVector contravariant(double t, double x, double y, double z);
FourVector contravariant(const Eigen::Vector4d& components);
FourVector covariant(double t, double x, double y, double z);
FourVector covariant(const Eigen::Vector4d& components);

/// Flips the index position by negating the spatial components (exact).
FourVector raise_index(const FourVector& v);
FourVector lower_index(const FourVector& v);

/// Returns v with the requested index position, converting if needed.
FourVector with_index(const FourVector& v, IndexPosition index);

/// Minkowski inner product a_mu b^mu. Handles any combination of index
/// positions: equal positions contract through the metric, opposite
/// positions contract component-wise.
double contract(const FourVector& a, const FourVector& b);

/// Invariant norm squared v_mu v^mu (positive for timelike vectors).
double minkowski_norm_sq(const FourVector& v);

/// Velocity parameters of a pure boost, |beta| < 1.
struct BoostParameters {
  explicit BoostParameters(const Eigen::Vector3d& beta);
  BoostParameters(double bx, double by, double bz)
      : BoostParameters(Eigen::Vector3d(bx, by, bz)) {}

  const Eigen::Vector3d& beta() const { return beta_; }
  double gamma() const { return gamma_; }

 private:
  Eigen::Vector3d beta_;
  double gamma_;
};

/// Symmetric boost matrix acting on contravariant components; maps a rest
/// four-momentum (m,0,0,0) to (gamma m, gamma beta m).
Eigen::Matrix4d boost_matrix(const BoostParameters& b);

/// Lorentz-boosts v, respecting its index position.
FourVector boost(const FourVector& v, const BoostParameters& b);

/// Relativistic composition of two collinear velocities.
double collinear_velocity_sum(double beta1, double beta2);

}  // namespace cycles
