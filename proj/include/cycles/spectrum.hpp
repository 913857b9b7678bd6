#pragma once

#include <complex>
#include <functional>
#include <string>

#include "cycles/kinematics.hpp"

namespace cycles {

enum class BoundaryCondition { Periodic, AntiPeriodic };

/// Mode-index offset selected by the boundary condition: 0 for periodic
/// towers, 1/2 for anti-periodic ones.
double mode_offset(BoundaryCondition bc);

/// Quantized tower conjugate to a compact recurrence. Mode n carries energy
/// omega_n = (n + offset) sqrt(k^2 + m^2) and momentum (n + offset) k.
struct SpectrumResult {
  Eigen::VectorXi n;
  Eigen::VectorXd omega;
  Eigen::Matrix<double, Eigen::Dynamic, 3> k;
  BoundaryCondition bc = BoundaryCondition::Periodic;
};

SpectrumResult harmonic_spectrum(double mass, const Eigen::Vector3d& momentum,
                                 int n_max, BoundaryCondition bc);

/// CSV with columns n,omega,kx,ky,kz.
std::string to_csv(const SpectrumResult& spectrum);

/// Truncated tower of harmonics over one compact recurrence. Mode n has
/// amplitude amplitudes[n-1] and normalization normalization[n-1].
struct HarmonicField {
  PeriodState base;
  Eigen::VectorXcd amplitudes;
  Eigen::VectorXd normalization;
  BoundaryCondition bc = BoundaryCondition::Periodic;

  int modes() const { return static_cast<int>(amplitudes.size()); }
  /// Spatial wavelength of the fundamental, 2 pi / |k|.
  double fundamental_wavelength() const;
};

HarmonicField make_harmonic_field(const PeriodState& base,
                                  const Eigen::VectorXcd& amplitudes,
                                  BoundaryCondition bc = BoundaryCondition::Periodic);

/// Field with a single unit-amplitude mode n.
HarmonicField single_mode_field(const PeriodState& base, int n,
                                BoundaryCondition bc = BoundaryCondition::Periodic);

/// Field value sum_n N_n conj(a_n) exp(-i k_n.x) at a spacetime point.
std::complex<double> synthesize(const HarmonicField& field, const FourVector& x);

/// Uniform 1D sampling along the field's propagation direction at a fixed
/// time: points samples over [0, length).
struct LineGrid {
  double length = 0.0;
  int points = 0;
  double time = 0.0;
};

/// V-averaged inner product (1/L) int conj(g) f over the grid. The grid
/// length must cover an integer number of spatial periods of the shared
/// base state.
std::complex<double> inner_product(const HarmonicField& f, const HarmonicField& g,
                                   const LineGrid& grid);

/// Result of the commutator expectation-value check. Both entries agree
/// within quadrature error whenever F is periodic over the grid.
struct CommutatorCheck {
  std::complex<double> commutator;     // <Phi| [F, P] |Phi>
  std::complex<double> gradient_side;  // i <Phi| dF/dx |Phi>
  double boundary_mismatch = 0.0;      // |F(L) - F(0)|
  bool periodic = true;
};

/// Expectation values of [F, P] and i dF with P acting spectrally. F is
/// sampled on the grid; its derivative is taken by discrete Fourier
/// transform, so a non-periodic F is flagged rather than rejected.
CommutatorCheck commutator_expectation(const std::function<double(double)>& F,
                                       const HarmonicField& field,
                                       const LineGrid& grid);

}  // namespace cycles
