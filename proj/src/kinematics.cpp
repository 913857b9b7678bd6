#include "cycles/kinematics.hpp"

#include <cmath>
#include <sstream>

#include "cycles/constants.hpp"
#include "cycles/errors.hpp"

namespace cycles {

using constants::two_pi;

FourVector period_from_momentum(double mass, const FourVector& momentum) {
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  const FourVector k = raise_index(momentum);
  const double m2 = mass * mass;
  const double residual = std::abs(minkowski_norm_sq(k) - m2) / std::max(1.0, m2);
  if (residual > kOnShellTolerance) {
    std::ostringstream msg;
    msg << "momentum off shell: |k.k - m^2|/max(1,m^2) = " << residual;
    throw DispersionError(msg.str(), residual);
  }
  return contravariant(Eigen::Vector4d(two_pi / m2 * k.components));
}

FourVector momentum_from_period(double mass, const FourVector& period) {
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  const FourVector T = raise_index(period);
  if (!(minkowski_norm_sq(T) > 0.0)) {
    throw InvalidPeriodError("period four-vector must be timelike");
  }
  return contravariant(Eigen::Vector4d(mass * mass / two_pi * T.components));
}

PeriodState make_period_state(double mass, const FourVector& momentum) {
  const FourVector k = raise_index(momentum);
  return {mass, k, period_from_momentum(mass, k)};
}

PeriodState rest_state(double mass) {
  return make_period_state(mass, contravariant(mass, 0.0, 0.0, 0.0));
}

PeriodState moving_state(double mass, const BoostParameters& b) {
  return make_period_state(mass, boost(contravariant(mass, 0.0, 0.0, 0.0), b));
}

PeriodState boost(const PeriodState& s, const BoostParameters& b) {
  return {s.mass, boost(s.momentum, b), boost(s.period, b)};
}

double phase_harmony_residual(const PeriodState& s) {
  return std::abs(contract(s.momentum, s.period) - two_pi);
}

double reciprocal_dispersion_residual(const PeriodState& s) {
  return std::abs(s.mass * s.mass * minkowski_norm_sq(s.period) - two_pi * two_pi);
}

double si_compton_time(double mass_kg) {
  if (!(mass_kg > 0.0)) throw DomainError("mass must be positive");
  const double c2 = constants::speed_of_light * constants::speed_of_light;
  return two_pi * constants::hbar / (mass_kg * c2);
}

double si_mass_from_compton_time(double seconds) {
  if (!(seconds > 0.0)) throw DomainError("duration must be positive");
  const double c2 = constants::speed_of_light * constants::speed_of_light;
  return two_pi * constants::hbar / (seconds * c2);
}

}  // namespace cycles
