#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "cycles/constants.hpp"

namespace cycles {

/// Closed loop of sampled phases: positions row j carries phase(j). The
/// first sample is not repeated; closure is implicit.
struct PhaseLoop {
  Eigen::Matrix<double, Eigen::Dynamic, 3> positions;
  Eigen::VectorXd phases;
};

/// Closed loop of sampled vector potentials.
struct GaugeLoop {
  Eigen::Matrix<double, Eigen::Dynamic, 3> positions;
  Eigen::Matrix<double, Eigen::Dynamic, 3> potentials;
};

inline constexpr int kMinLoopSamples = 8;
/// Wrapped consecutive jumps at or beyond this magnitude mark the loop as
/// undersampled (guard band below the pi aliasing limit).
inline constexpr double kMaxPhaseJump = 0.9 * constants::pi;
/// Largest accepted distance between raw turns / 2 pi and the rounded
/// integer.
inline constexpr double kWindingResidualLimit = 0.25;
/// Residual under which refining the sampling cannot change the integer.
inline constexpr double kRefinementGuard = 0.1;
/// Relative agreement demanded between the unwrapped winding and the
/// positional line-integral route.
inline constexpr double kStokesTolerance = 1e-3;

struct WindingResult {
  long winding = 0;
  double raw_turns = 0.0;  // unwrapped total phase, ~ 2 pi winding
  double residual = 0.0;   // |raw_turns / 2 pi - winding|
};

/// Integer winding by unwrapping consecutive jumps into (-pi, pi) and
/// summing. Throws UndersampledLoopError when the sampling adequacy guard
/// or the rounding residual limit is violated. Loop reversal negates the
/// result exactly; cyclic rotation leaves it unchanged exactly.
WindingResult phase_winding(const PhaseLoop& loop);

struct QuantizationVerdict {
  double raw = 0.0;
  long nearest = 0;
  double residual = 0.0;
  double unit = 0.0;
  bool quantized = false;  // residual within the guard band
};

/// charge * closed trapezoid of A . dx against the unit pi.
QuantizationVerdict dirac_quantization_check(const GaugeLoop& loop, double charge);

/// Flux winding in units of 1/(2 charge). The integer comes from phase
/// unwrapping; a positional trapezoid of the finite-difference gradient
/// cross-checks it (throws StokesInconsistencyError on disagreement).
QuantizationVerdict flux_quantization_check(const PhaseLoop& loop, double charge);

/// CSV with columns raw,unit,n,residual,verdict.
std::string to_csv(const QuantizationVerdict& verdict);

/// CSV columns i,x,y,z,theta.
PhaseLoop load_phase_loop(const std::filesystem::path& path);
/// CSV columns i,x,y,z,ax,ay,az.
GaugeLoop load_gauge_loop(const std::filesystem::path& path);

}  // namespace cycles
