#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace cycles {

/// Euclidean evolution kernel on a circle of circumference `period` after
/// diffusion time `beta`, truncated at `winding_max` images per side and
/// `mode_max` spectral modes.
struct CyclicKernelSpec {
  double period = 1.0;
  double beta = 0.1;
  int winding_max = 12;
  int mode_max = 64;
};

void validate(const CyclicKernelSpec& spec);

/// Reduces theta to the fundamental domain [-T/2, T/2].
double reduce_angle(double theta, double period);

/// Upper bound on the images dropped by the winding truncation.
double winding_tail_bound(const CyclicKernelSpec& spec);

/// Upper bound on the modes dropped by the spectral truncation.
double spectral_tail_bound(const CyclicKernelSpec& spec);

/// Image sum over classical paths of distinct winding number:
/// sum_w (4 pi beta)^{-1/2} exp(-(theta + w T)^2 / (4 beta)).
/// Images are paired +-w in ascending |w| with compensated summation.
double winding_kernel(const CyclicKernelSpec& spec, double theta);

/// Mode sum over the quantized tower omega_n = 2 pi n / T:
/// (1/T) [1 + 2 sum_n exp(-beta omega_n^2) cos(omega_n theta)].
double spectral_kernel(const CyclicKernelSpec& spec, double theta);

/// Analytic continuation of the spectral sum to oscillatory evolution time.
/// A positive damping is mandatory; the continued series is only absolutely
/// convergent with it.
std::complex<double> lorentzian_spectral_kernel(const CyclicKernelSpec& spec,
                                                double theta, double time,
                                                double damping);

struct KernelComparison {
  Eigen::VectorXd theta;
  Eigen::VectorXd winding;
  Eigen::VectorXd spectral;
  double max_deviation = 0.0;
  double tail_winding = 0.0;
  double tail_spectral = 0.0;
  bool pass = false;
};

/// Evaluates both kernels on a uniform grid spanning one period and records
/// the largest pointwise deviation; PASS iff it stays below 1e-9. Throws
/// TruncationError unless both tail bounds are below 1e-12.
KernelComparison certify_equivalence(const CyclicKernelSpec& spec, int grid_points);

/// CSV with columns theta,winding,spectral,abs_diff and a trailing summary
/// comment line.
std::string to_csv(const KernelComparison& comparison);

}  // namespace cycles
