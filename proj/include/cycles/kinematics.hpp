#pragma once

#include "cycles/four_vector.hpp"

namespace cycles {

/// A particle's mass, contravariant four-momentum and contravariant period
/// four-vector, bound by the phase-harmony constraint k_mu T^mu = 2 pi.
struct PeriodState {
  double mass = 0.0;
  FourVector momentum;  // contravariant k^mu
  FourVector period;    // contravariant T^mu
};

/// Relative tolerance accepted on k.k = m^2 for user-supplied momenta.
inline constexpr double kOnShellTolerance = 1e-9;

/// Period four-vector T^mu = 2 pi k^mu / m^2, the unique vector parallel to
/// the four-momentum satisfying phase harmony. Throws DispersionError when k
/// is off shell beyond kOnShellTolerance.
FourVector period_from_momentum(double mass, const FourVector& momentum);

/// Inverse map k^mu = m^2 T^mu / (2 pi). Throws InvalidPeriodError unless T
/// is timelike.
FourVector momentum_from_period(double mass, const FourVector& period);

/// Builds a PeriodState from an on-shell momentum; period derived.
PeriodState make_period_state(double mass, const FourVector& momentum);

/// Rest state: momentum (m,0,0,0), period (2 pi / m, 0, 0, 0).
PeriodState rest_state(double mass);

/// On-shell state moving with the given velocity.
PeriodState moving_state(double mass, const BoostParameters& b);

/// Boosts momentum and period together.
PeriodState boost(const PeriodState& s, const BoostParameters& b);

/// |k_mu T^mu - 2 pi|; zero for valid states.
double phase_harmony_residual(const PeriodState& s);

/// |m^2 T_mu T^mu - (2 pi)^2| residual of the reciprocal dispersion relation.
double reciprocal_dispersion_residual(const PeriodState& s);

/// Compton recurrence 2 pi hbar / (m c^2) in seconds for a mass in kg.
double si_compton_time(double mass_kg);

/// Inverse of si_compton_time: the mass in kg whose Compton recurrence is
/// the given duration in seconds.
double si_mass_from_compton_time(double seconds);

}  // namespace cycles
