#pragma once

#include <string>
#include <vector>

#include "cycles/constants.hpp"
#include "cycles/spectrum.hpp"

namespace cycles {

/// Compact cyclic dimension of length `length` with the given boundary
/// condition.
struct CompactDimensionSpec {
  double length = constants::two_pi;
  BoundaryCondition bc = BoundaryCondition::Periodic;
};

/// Mass tower m_n = 2 pi (n + offset) / length of modes on the compact
/// dimension. The tower is returned as the same SpectrumResult used for
/// energy excitations: the modes are energy levels of one system, not
/// separate particle species. omega holds m_n and the momenta are zero.
SpectrumResult kk_tower(const CompactDimensionSpec& spec, int n_max);

/// First compact mode 2 pi / circumference, in natural units.
double effective_mass_from_compactification(double circumference);

/// Effective mass in kg of the first compact mode of a physical loop of the
/// given circumference in meters (h / (L c)).
double si_effective_mass_from_circumference(double meters);

/// Exponential conformal cooling of a nearly null four-momentum with
/// gradient K over the worldline parameter s.
struct FreezeoutScheme {
  double cooling_gradient = 1.0;
  FourVector initial_momentum;  // contravariant, |k.k| / omega^2 < 1e-3
  double s_min = 0.0;
  double s_max = 1.0;
};

void validate(const FreezeoutScheme& scheme);

struct FreezeoutSample {
  double s = 0.0;
  FourVector momentum;             // e^{-K s} k
  FourVector period;               // e^{+K s} T, with T = 2 pi k / omega^2
  double conformal_period = 0.0;   // T(s) = e^{K s} / K
  double energy = 0.0;             // E(s) = 2 pi / T(s) = 2 pi K e^{-K s}
  double warp_factor = 0.0;        // e^{-2 K s}
};

/// State of the freeze-out at worldline parameter s. The reported energy is
/// normalized through the conformal period, E(s) = 2 pi / T(s); the scaled
/// momentum four-vector is reported alongside it.
FreezeoutSample freezeout_evolution(const FreezeoutScheme& scheme, double s);

/// Residual of the virtual null interval e^{-2Ks} dx.dx - ds^2.
double null_interval_check(const FreezeoutScheme& scheme, double s,
                           const FourVector& displacement, double ds);

/// CSV with columns s,E,T,warp,dS2_residual.
std::string freezeout_csv(const std::vector<FreezeoutSample>& scan,
                          const std::vector<double>& null_residuals);

}  // namespace cycles
